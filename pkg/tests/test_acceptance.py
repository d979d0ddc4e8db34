"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run with pytest (the lines appear in the terminal summary) or directly with
python tests/test_acceptance.py.  Criterion 10 is optional and only runs
with SIXTWELVE_STRETCH=1.
"""
import os
import random
import sys
import time
from fractions import Fraction
from itertools import product

import pytest

from sixtwelve import fixtures
from sixtwelve.combine import combine, descend_point
from sixtwelve.cubic import (TernaryCubic, basis_determinant_residual, cubic_data,
                             cubic_identity_suite, hesse, order4_matrix, syzygy_residual)
from sixtwelve.ellcurve import WeierstrassCurve, canonical_height, regulator
from sixtwelve.exact import Matrix, MultiPoly, NumberField
from sixtwelve.flex import check_flexmat2, check_flexmat3, check_flexmat4, flexmat2, flexmat3, flexmat4
from sixtwelve.minimise import minimise, transport_point
from sixtwelve.models import (cover4_to_E, cover_to_E, embed23, embed34, jacobian_from_invariants,
                              minors_map, normalize_point, trivial_model, trivial_quadrics,
                              weierstrass_embedding)
from sixtwelve.quartic import BinaryQuartic, DegenerateModelError, all_zero, identity_residuals, quartic_data
from sixtwelve.search import SearchConfig, brute_force_mod_p, enumerate_mod_p, point_search

# tolerances pinned from the criteria
TOL_H308 = 0.01
TOL_H651 = 0.01
TOL_P1 = 0.001
TOL_H642 = 0.01
TOL_REG = 0.05
LIMIT_QUARTIC_S = 10
LIMIT_CUBIC_S = 60
LIMIT_S71_S = 60
LIMIT_SEARCH_S = 300

RESULTS = {}


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS[n] = line
    print(line)
    assert ok, line


def _invertible(n, entry):
    while True:
        g = [[entry() for _ in range(n)] for _ in range(n)]
        M = Matrix(g)
        if M.det() != 0:
            return g, M.inverse().rows


def _rank1():
    E0 = WeierstrassCurve(0, 0, 1, -1, 0)
    c4, c6 = E0.c_invariants
    E = jacobian_from_invariants(c4, c6)
    return c4, c6, E, E.map_point_from(E0.point(0, 0))


def test_criterion_1_quartic_identities():
    rng = random.Random(1)
    start = time.time()
    ok = True
    for _ in range(100):
        U = BinaryQuartic.from_coeffs([Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(5)])
        ok &= all_zero(identity_residuals(quartic_data(U)))
    dt = time.time() - start
    record(1, ok and dt < LIMIT_QUARTIC_S, f"100 quartics, syzygy and 4 column relations, {dt:.1f}s")


def test_criterion_2_cubic_identities():
    rng = random.Random(2)
    cubics = [hesse(1, 0), hesse(2, 3), hesse(1, -5)]
    while len(cubics) < 23:
        U = TernaryCubic.from_coeffs([rng.randint(-5, 5) for _ in range(10)])
        try:
            cubic_data(U, need_J=False)
        except DegenerateModelError:
            continue
        cubics.append(U)
    start = time.time()
    ok = True
    for U in cubics:
        d = cubic_data(U)
        ok &= all(r.is_zero() for r in cubic_identity_suite(d).values())
        ok &= syzygy_residual(d).is_zero() and basis_determinant_residual(d).is_zero()
        ok &= order4_matrix(d).det() == 2 ** 42 * 3 ** 12 * d.disc ** 5
    dt = time.time() - start
    record(2, ok and dt < LIMIT_CUBIC_S,
           f"{len(cubics)} cubics incl. 3 Hesse forms, dot products, [u,h,t], [x,e,f], syzygy, 15x15 det, {dt:.1f}s")


def _mu(d):
    U, H, Th, J, c4, c6 = d.U, d.H, d.Theta, d.J, d.c4, d.c6
    return [2 * H ** 4 - 6 * c4 * U ** 2 * H ** 2 - Fraction(2, 3) * U * H * Th,
            2 * Th * H ** 2 - 18 * c4 ** 2 * U ** 3 * H - 18 * c4 * U * H ** 3 + 48 * c6 * U ** 2 * H ** 2,
            2 * J * H,
            2 * Th ** 2 + 162 * c4 ** 3 * U ** 4 - 54 * c4 ** 2 * U ** 2 * H ** 2
            - 432 * c4 * c6 * U ** 3 * H - 18 * c4 * U * H * Th + 144 * c6 * U * H ** 3]


def test_criterion_3_embedding_identities():
    import sympy as sp

    a, b, c, d, e, x1, x2, y = sp.symbols("a b c d e x1 x2 y")
    U = a * x1 ** 4 + b * x1 ** 3 * x2 + c * x1 ** 2 * x2 ** 2 + d * x1 * x2 ** 3 + e * x2 ** 4
    F1, F2 = sp.diff(U, x1), sp.diff(U, x2)
    H = sp.expand((sp.diff(F1, x1) * sp.diff(F2, x2) - sp.diff(F1, x2) ** 2) / 3)
    J = sp.expand((F1 * sp.diff(H, x2) - F2 * sp.diff(H, x1)) / 12)
    A = sp.Matrix([[-9 * sp.diff(H, x2), -3 * sp.diff(U, x2), x1 * y],
                   [9 * sp.diff(H, x1), 3 * sp.diff(U, x1), x2 * y]])
    m = [(-1) ** i * A[:, [j for j in range(3) if j != i]].det() for i in range(3)]
    ok_minors = all(sp.expand(u - v) == 0 for u, v in zip(m, [-12 * y * U, 36 * y * H, -324 * J]))
    c4 = 16 * (12 * a * e - 3 * b * d + c ** 2)
    c6 = 32 * (72 * a * c * e - 27 * a * d ** 2 - 27 * b ** 2 * e + 9 * b * c * d - 2 * c ** 3)
    mons = [x1 ** 3, x1 ** 2 * x2, x1 * x2 ** 2, x2 ** 3, x1 * y, x2 * y]
    rows = [[sp.Poly(sp.expand(A[i, j]), x1, x2, y).coeff_monomial(mm) for mm in mons]
            for i in range(2) for j in range(3)]
    ok_det = sp.expand(sp.Matrix(rows).det(method="berkowitz") - 4 * 3 ** 8 * (c4 ** 3 - c6 ** 2) / 1728) == 0

    # the package's own route on a concrete quartic
    emb = embed23(BinaryQuartic.from_coeffs([3, -1, 4, 1, -5]))
    qd = emb.extra["data"]
    L = lambda p: p.homogenize_embed(3, [0, 1])  # noqa: E731
    yy = MultiPoly.var(2, 3)
    ok_pkg = all((u - v).is_zero() for u, v in zip(
        minors_map(emb.matrix, 2), [-12 * yy * L(qd.U), 36 * yy * L(qd.H), -324 * L(qd.J)]))

    rng = random.Random(3)
    cubics = [hesse(2, 3), hesse(1, -5)]
    while len(cubics) < 4:
        U3 = TernaryCubic.from_coeffs([rng.randint(-5, 5) for _ in range(10)])
        try:
            cubic_data(U3, need_J=False)
        except DegenerateModelError:
            continue
        cubics.append(U3)
    ok_mu = True
    for U3 in cubics:
        e34 = embed34(U3)
        ok_mu &= all((p - q).is_zero() for p, q in zip(minors_map(e34.matrix, 3), _mu(e34.extra["data"])))
    record(3, ok_minors and ok_det and ok_pkg and ok_mu,
           f"generic A23 minors {ok_minors}, 6x6 det {ok_det}, package A23 {ok_pkg}, "
           f"A34 mu on {len(cubics)} cubics {ok_mu}")


def test_criterion_4_flex_algorithms():
    c4, c6 = Fraction(48), Fraction(-216)
    fixed = (flexmat2(trivial_model(2, c4, c6).payload, (0, 1)).g == [[1, 0], [0, 1]])
    for n, pt in ((3, (0, 0, 1)), (4, (0, 0, 0, 1))):
        T = trivial_model(n, c4, c6).payload
        g = flexmat3(T, pt).g if n == 3 else flexmat4(*T, pt).g
        fixed &= all(g[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    ok = True
    degrees = [1, 1, 3, 8, 16]
    for k, deg in enumerate(degrees):
        rng = random.Random(40 + k)
        if deg == 1:
            K, entry, one = None, (lambda: Fraction(rng.randint(-3, 3))), Fraction(1)
        else:
            K = NumberField([2 * rng.choice([1, 3, 5])] + [2 * rng.randint(-3, 3) for _ in range(deg - 1)] + [1])
            entry = lambda: K([rng.randint(-2, 2) for _ in range(3)])  # noqa: E731
            one = K(1)
        x1, x2 = MultiPoly.gens(2)
        while True:
            alpha = entry() + 2
            cub = sum((rng.randint(-4, 4) * x1 ** (3 - i) * x2 ** i for i in range(4)), MultiPoly(2)) \
                + x1 ** 3 + x2 ** 3
            U = BinaryQuartic.from_poly((x1 - x2 * alpha) * cub)
            i4, i6 = U.invariants()
            if i4 ** 3 != i6 ** 2:
                break
        ok &= check_flexmat2(U, flexmat2(U, (alpha, one)))
        g, gi = _invertible(3, entry)
        T3 = trivial_model(3, c4, c6).payload.transform(g)
        ok &= check_flexmat3(T3, flexmat3(T3, [gi[i][2] for i in range(3)]))
        g, gi = _invertible(4, entry)
        Q = [q.linear_change(g) for q in trivial_quadrics(c4, c6)]
        ok &= check_flexmat4(*Q, flexmat4(*Q, [gi[i][3] for i in range(4)]))
    record(4, ok and fixed, f"flex matrices of degree 2, 3, 4 over fields of degree {degrees}, trivial fixed points {fixed}")


def test_criterion_5_trivial_combine_round_trip():
    c4, c6, E, P = _rank1()
    B = combine(trivial_model(2, c4, c6), trivial_model(3, c4, c6), flexpt=[0, 0, 1])
    emb = embed23(B.up_model.payload)
    gi = Matrix(B.flex.g).inverse().rows
    rng = random.Random(5)
    ks = rng.sample([k for k in range(-15, 16) if k], 20)
    ok = True
    for k in ks:
        Q = k * P
        A = emb.evaluate(weierstrass_embedding(2, Q))
        M = [[sum(r[l] * gi[l][j] for l in range(3)) for j in range(3)] for r in A]
        pt = [v for r in M for v in r]
        ok &= B.model.contains(pt)
        ok &= Matrix([minors_map(A, 2), weierstrass_embedding(3, 2 * Q)]).rank() == 1
        R = descend_point(B, pt)
        ok &= (R if R.curve == E else E.map_point_from(R)) == 6 * Q
    record(5, ok, "20 multiples of the 37a generator: minors = [2] then embed, descend = [6]")


def test_criterion_6_six_descent_fixture():
    start = time.time()
    Q = fixtures.model("six_quadrics")
    sol = fixtures.point("six_solution")
    ok_q = all(q(sol) == 0 for q in Q.quadrics())
    U3 = fixtures.model("six_cubic")
    pt = minors_map(fixtures.matrix("six_matrix"), 2)
    ok_u = U3.contains(pt)
    h = canonical_height(cover_to_E(U3, pt))
    dt = time.time() - start
    ok = ok_q and ok_u and abs(h - 308.94) <= TOL_H308 and dt < LIMIT_S71_S
    record(6, ok, f"quadrics at solution {ok_q}, minors on U3 {ok_u}, height {h:.4f}, {dt:.1f}s")


def test_criterion_7_twelve_descent_fixture():
    C4 = fixtures.model("twelve_pair")
    pt = minors_map(fixtures.matrix("twelve_matrix"), 3)
    ok_q = all(q(pt) == 0 for q in C4.quadrics())
    hR = canonical_height(cover4_to_E(C4, pt))
    E, (P1,) = fixtures.curve()
    ints = fixtures.integers()
    t, r, s = ints["t"], ints["r"], ints["s"]
    P = E.point(Fraction(r, t * t), Fraction(s, t ** 3))
    h1 = canonical_height(P1)
    P2 = P + P1
    h2 = canonical_height(P2)
    reg = regulator([P1, P2])
    ok = (ok_q and abs(hR - 651.86) <= TOL_H651 and abs(h1 - 5.3208) <= TOL_P1
          and abs(h2 - 642.63) <= TOL_H642 and abs(reg - 3415.49) <= TOL_REG)
    record(7, ok, f"quadrics at minors {ok_q}, descended {hR:.4f}, h(P1) {h1:.5f}, "
                  f"h(P+P1) {h2:.4f}, regulator {reg:.4f}")


def test_criterion_8_pipeline_reproduction():
    from sixtwelve.flex import flexmat

    flex = flexmat(fixtures.model("six_cubic"), fixtures.flex()[1])
    B = combine(fixtures.model("six_quartic"), fixtures.model("six_cubic"), flex=flex)
    before = B.model.max_coefficient()
    model, logbook = minimise(B.model, [2, 3, 809, 811])
    after = model.max_coefficient()
    pub = [a for r in fixtures.matrix("six_matrix") for a in r]
    moved = transport_point(logbook, pub)
    ok = (len(B.model.quadrics()) == 9 and B.model.is_integral() and before <= 150
          and model.is_integral() and after < before and model.contains(moved))
    record(8, ok, f"9 integral quadrics, max {before} before and {after} after minimising at 2,3,809,811, "
                  f"transported published point on model {model.contains(moved)}")


def test_criterion_9_point_search():
    c4, c6 = Fraction(336), Fraction(-5400)
    E = jacobian_from_invariants(c4, c6)
    G = [E.point(36 * x, 108 * (2 * y + 1)) for x, y in [(1, 0), (2, 0), (0, 2)]]
    B = combine(trivial_model(2, c4, c6), trivial_model(3, c4, c6), flexpt=[0, 0, 1])
    model, logbook = minimise(B.model, jacobian=(c4, c6))
    emb = embed23(B.up_model.payload)
    plants = []
    for a, b, c in product(range(-3, 4), repeat=3):
        Q = a * G[0] + b * G[1] + c * G[2]
        if Q.is_zero:
            continue
        A = emb.evaluate(weierstrass_embedding(2, Q))
        y = tuple(normalize_point(transport_point(logbook, [v for r in A for v in r])))
        if max(map(abs, y)) <= 10 ** 5:
            plants.append(y)
    random.Random(9).shuffle(plants)
    plants = plants[:10]
    start = time.time()
    found = {tuple(f.coords) for f in point_search(model, SearchConfig(10 ** 5, (17,)))}
    dt = time.time() - start
    hits = sum(y in found for y in plants)
    enum_ok = all(sorted(enumerate_mod_p(model, p)) == sorted(brute_force_mod_p(model, p))
                  for p in (2, 3, 5, 7))
    record(9, hits == 10 and dt < LIMIT_SEARCH_S and enum_ok,
           f"{hits}/10 plants by complete search to 1e5 at p=17 in {dt:.0f}s single process, "
           f"enumeration = brute force for p<=7 {enum_ok}")


@pytest.mark.skipif(os.environ.get("SIXTWELVE_STRETCH") != "1", reason="optional stretch criterion")
def test_criterion_10_stretch_search():
    Q = fixtures.model("six_quadrics")
    sol = [int(v) for v in fixtures.point("six_solution")]
    start = time.time()
    found = point_search(Q, SearchConfig(8 * 10 ** 9, (4507, 4513)))
    dt = time.time() - start
    ok = any(tuple(f.coords) == tuple(normalize_point(sol)) for f in found)
    record(10, ok, f"two-prime search to 8e9, {dt:.0f}s")


def summary_lines():
    lines = [RESULTS[k] for k in sorted(RESULTS)]
    if 10 not in RESULTS:
        lines.append("criterion 10: NOT RUN (optional; set SIXTWELVE_STRETCH=1, expect days of CPU)")
    return lines


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for fn in tests:
        if fn.__name__.endswith("stretch_search") and os.environ.get("SIXTWELVE_STRETCH") != "1":
            continue
        try:
            fn()
        except AssertionError:
            failed += 1
        except Exception as exc:  # noqa: BLE001
            n = int(fn.__name__.split("_")[2])
            RESULTS[n] = f"criterion {n}: FAIL (error: {exc})"
            failed += 1
    print()
    print("\n".join(summary_lines()))
    sys.exit(1 if failed else 0)
