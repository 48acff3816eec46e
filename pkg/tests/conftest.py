import random
from fractions import Fraction

import pytest

from rqamaps import PiecewiseLinearMap, build_delahaye, build_prop42


@pytest.fixture(scope="session")
def plateau_map():
    """Superattracting 3-cycle 1/5 -> 1/2 -> 4/5: plateaus around each orbit
    point send nearby starts exactly onto the cycle."""
    return PiecewiseLinearMap.of(
        [0, "1/4", "9/20", "11/20", "3/4", "17/20", 1],
        ["1/2", "1/2", "4/5", "4/5", "1/5", "1/5", "1/5"])


@pytest.fixture(scope="session")
def contracting_two_cycle_map():
    """2-cycle {1/4, 3/4} attracting with one-sided slopes -1/2."""
    return PiecewiseLinearMap.of(
        [0, "1/4", "3/4", 1], ["7/8", "3/4", "1/4", "1/8"])


@pytest.fixture(scope="session")
def prop42_small():
    return build_prop42(6)


@pytest.fixture(scope="session")
def delahaye5():
    return build_delahaye(5)


def random_pl_map(rnd: random.Random, max_den: int = 32) -> PiecewiseLinearMap:
    """Random exact-rational PL self-map of [0, 1]."""
    k = rnd.randint(0, 3)
    interior = sorted({Fraction(rnd.randint(1, max_den - 1), max_den)
                       for _ in range(k)})
    bps = [Fraction(0), *interior, Fraction(1)]
    vals = [Fraction(rnd.randint(0, max_den), max_den) for _ in bps]
    return PiecewiseLinearMap(tuple(bps), tuple(vals))
