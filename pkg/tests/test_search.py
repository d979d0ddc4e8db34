import json
import math
import time

import pytest
from sympy import nextprime

from sixtwelve.exact import MultiPoly
from sixtwelve.models import GenusOneModel
from sixtwelve.search import (SearchConfig, SingularResidueError, auto_disc_exponent,
                              brute_force_mod_p, enumerate_mod_p, good_search_prime,
                              lift_and_search, lift_and_search_two, local_chart, point_search)


def _norm(v):
    v = tuple(v)
    return v if next(a for a in v if a) > 0 else tuple(-a for a in v)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_enumeration_matches_brute_force(rank3, p):
    assert sorted(enumerate_mod_p(rank3["model"], p)) == sorted(brute_force_mod_p(rank3["model"], p))


@pytest.mark.parametrize("p", [11, 13, 17])
def test_point_count_in_hasse_window(rank3, p):
    n = len(enumerate_mod_p(rank3["model"], p))
    assert abs(n - (p + 1)) <= 2 * math.sqrt(p)


def test_insoluble_reduction_has_no_points():
    x1, x2, x3, x4 = MultiPoly.gens(4)
    model = GenusOneModel(4, [x1 * x1 - 2 * x2 * x2, x3 * x3 - 2 * x4 * x4 + 5 * x1 * x3])
    assert enumerate_mod_p(model, 5) == []
    assert brute_force_mod_p(model, 5) == []


def test_residue_off_the_curve_is_rejected(rank3):
    p = 11
    pts = set(enumerate_mod_p(rank3["model"], p))
    bad = next(v for v in [(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (1, 1, 1, 1, 1, 1)] if v not in pts)
    with pytest.raises((SingularResidueError, ValueError)):
        local_chart(rank3["model"], bad, p)


def test_plants_recovered_single_prime(rank3, rank3_plants):
    """Every planted point is found from its own residue: at least 20 plants."""
    model = rank3["model"]
    H = 10 ** 5
    p = int(nextprime(4700))
    j = auto_disc_exponent(model.nvars, p, H)
    assert len(rank3_plants) >= 20
    start = time.time()
    for y, _ in rank3_plants:
        res = lift_and_search(model, [v % p for v in y], p, H, j)
        assert _norm(y) in {_norm(v) for v in res}
        assert all(model.contains(list(v)) for v in res)
    assert time.time() - start < 300


def test_plants_recovered_with_disc_splitting(rank3, rank3_plants):
    model = rank3["model"]
    p = 101
    for y, _ in rank3_plants[:3]:
        res = lift_and_search(model, [v % p for v in y], p, 10 ** 5)
        assert _norm(y) in {_norm(v) for v in res}


def test_plants_recovered_two_primes(rank3, rank3_plants):
    """p1 p2 with one disc each: each prime alone would need several discs."""
    model = rank3["model"]
    p1, p2 = 67, 71
    assert auto_disc_exponent(model.nvars, p1, 10 ** 5) > 1
    for y, _ in rank3_plants[:5]:
        res = lift_and_search_two(model, [v % p1 for v in y], p1, [v % p2 for v in y], p2, 10 ** 5)
        assert _norm(y) in {_norm(v) for v in res}


@pytest.fixture(scope="module")
def small_search(rank3):
    p = good_search_prime(rank3["model"])
    return p, point_search(rank3["model"], SearchConfig(200, (p,)))


def test_point_search_is_complete_below_bound(rank3, rank3_plants, small_search):
    p, found = small_search
    got = {tuple(f.coords) for f in found}
    want = {_norm(y) for y, _ in rank3_plants if max(map(abs, y)) <= 200}
    assert want and want <= got
    assert all(rank3["model"].contains(f.coords) for f in found)
    assert [f.coords for f in found] == sorted(f.coords for f in found)


def test_found_points_descend_to_six_times_small_combinations(rank3, small_search):
    from itertools import product

    from sixtwelve.combine import descend_point
    from sixtwelve.exact import Matrix

    _, found = small_search
    T = Matrix(rank3["log"].T)
    E, G = rank3["E"], rank3["gens"]
    sixes = {str(6 * (a * G[0] + b * G[1] + c * G[2]))
             for a, b, c in product(range(-3, 4), repeat=3)}
    for f in found:
        x = [sum(T.rows[i][k] * f.coords[k] for k in range(6)) for i in range(6)]
        R = descend_point(rank3["bundle"], x)
        R = R if R.curve == E else E.map_point_from(R)
        assert str(R) in sixes


def test_determinism_and_processes(rank3, small_search):
    p, found = small_search
    again = point_search(rank3["model"], SearchConfig(200, (p,), thread_count=2))
    assert [f.coords for f in again] == [f.coords for f in found]


def test_checkpoint_resume(rank3, small_search, tmp_path):
    p, found = small_search
    ck = tmp_path / "ck.json"
    first = point_search(rank3["model"], SearchConfig(200, (p,), checkpoint=str(ck)))
    state = json.loads(ck.read_text())
    n_items = len(enumerate_mod_p(rank3["model"], p))
    assert sorted(state["done"]) == list(range(n_items))
    # forget the second half and resume
    half = n_items // 2
    state["done"] = list(range(half))
    ck.write_text(json.dumps(state))
    seen = []
    resumed = point_search(rank3["model"], SearchConfig(200, (p,), checkpoint=str(ck)),
                           progress=lambda d, t: seen.append(d))
    assert [f.coords for f in resumed] == [f.coords for f in first]
    assert seen[0] == half + 1


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(0)
    with pytest.raises(ValueError):
        SearchConfig(10, (5, 7, 11))
    with pytest.raises(ValueError):
        SearchConfig(10, (5,), lift_exponent=3)
