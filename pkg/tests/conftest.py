import random
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def six_flex():
    from sixtwelve import fixtures
    from sixtwelve.flex import flexmat

    return flexmat(fixtures.model("six_cubic"), fixtures.flex()[1])


@pytest.fixture(scope="session")
def six_bundle(six_flex):
    from sixtwelve import fixtures
    from sixtwelve.combine import combine

    return combine(fixtures.model("six_quartic"), fixtures.model("six_cubic"), flex=six_flex)


@pytest.fixture(scope="session")
def six_minimised(six_bundle):
    from sixtwelve.minimise import minimise

    return minimise(six_bundle.model, [2, 3, 809, 811])


@pytest.fixture(scope="session")
def rank3():
    """The trivial 6-covering of y^2 + y = x^3 - 7x + 6, minimised, with three generators."""
    from sixtwelve.combine import combine
    from sixtwelve.minimise import minimise
    from sixtwelve.models import jacobian_from_invariants, trivial_model

    c4, c6 = Fraction(336), Fraction(-5400)
    E = jacobian_from_invariants(c4, c6)
    gens = [E.point(36 * x, 108 * (2 * y + 1)) for x, y in [(1, 0), (2, 0), (0, 2)]]
    bundle = combine(trivial_model(2, c4, c6), trivial_model(3, c4, c6), flexpt=[0, 0, 1])
    model, logbook = minimise(bundle.model, jacobian=(c4, c6))
    return {"E": E, "gens": gens, "bundle": bundle, "model": model, "log": logbook,
            "c4": c4, "c6": c6}


@pytest.fixture(scope="session")
def rank3_plants(rank3):
    """Points of the minimised model with coordinates at most 10^5."""
    from itertools import product

    from sixtwelve.minimise import transport_point
    from sixtwelve.models import embed23, normalize_point, weierstrass_embedding

    emb = embed23(rank3["bundle"].up_model.payload)
    G = rank3["gens"]
    out = []
    for a, b, c in product(range(-3, 4), repeat=3):
        Q = a * G[0] + b * G[1] + c * G[2]
        if Q.is_zero:
            continue
        A = emb.evaluate(weierstrass_embedding(2, Q))
        y = normalize_point(transport_point(rank3["log"], [v for r in A for v in r]))
        if max(abs(v) for v in y) <= 10 ** 5:
            out.append((y, Q))
    rng = random.Random(11)
    rng.shuffle(out)
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
