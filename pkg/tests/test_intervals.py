import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from rqamaps.intervals import (CompactInterval, Configuration, epsilon_pairs,
                               extremal_configuration, interval_dist,
                               union_diam, zero_configuration)

IV = CompactInterval.exact


def brute_pairs(config, eps):
    """Oracle: scan all index pairs with raw endpoint arithmetic only."""
    ivs = config.intervals
    found = set()
    for a, ja in enumerate(ivs, start=1):
        for b, jb in enumerate(ivs, start=1):
            gap = max(0 * eps, jb.lo - ja.hi, ja.lo - jb.hi)
            hull = max(ja.hi, jb.hi) - min(ja.lo, jb.lo)
            if gap < eps < hull:
                found.add((a, b))
    return found


class TestDistDiam:
    def test_gap(self):
        assert interval_dist(IV(0, "1/5"), IV("3/5", 1)) == F(2, 5)

    def test_overlap_is_zero(self):
        assert interval_dist(IV(0, "1/2"), IV("3/10", "4/5")) == 0

    def test_sibling_gap(self):
        assert interval_dist(IV(0, "1/25"), IV("4/25", "1/5")) == F(3, 25)

    def test_symmetry(self):
        a, b = IV(0, "1/4"), IV("1/2", 1)
        assert interval_dist(a, b) == interval_dist(b, a)

    def test_union_diam_endpoints(self):
        assert union_diam(IV(0, "1/25"), IV("4/25", "1/5")) == F(1, 5)

    def test_union_diam_self(self):
        j = IV("1/8", "3/8")
        assert union_diam(j, j) == j.diam

    def test_union_diam_hull(self):
        assert union_diam(IV(0, "1/5"), IV("3/5", 1)) == 1

    def test_invalid_interval(self):
        with pytest.raises(ValueError):
            CompactInterval(F(1, 2), F(1, 4))

    def test_degenerate_allowed(self):
        assert IV("1/3", "1/3").diam == 0


class TestConfiguration:
    def test_requires_strict_order(self):
        with pytest.raises(ValueError):
            Configuration((IV(0, "1/2"), IV("1/2", 1)))  # touching endpoints

    def test_one_based_indexing(self):
        c = Configuration.of([(0, "1/4"), ("1/2", 1)])
        assert c[1].lo == 0 and c[2].hi == 1
        with pytest.raises(IndexError):
            c[0]

    def test_json_round_trip(self):
        c = Configuration.of([(0, "1/3"), ("1/2", "2/3")])
        again = Configuration.from_json(c.to_json())
        assert again == c
        assert json.loads(c.to_json()) == [["0", "1/3"], ["1/2", "2/3"]]


class TestEpsilonPairs:
    def test_single_small_interval_empty(self):
        c = Configuration.of([(0, "3/10")])
        assert len(epsilon_pairs(c, F(1, 2))) == 0

    def test_single_wide_interval_diagonal(self):
        c = Configuration.of([(0, "4/5")])
        assert epsilon_pairs(c, F(1, 2)).pairs == frozenset({(1, 1)})

    def test_diagonal_tie_excluded(self):
        c = Configuration.of([(0, "1/2")])
        assert len(epsilon_pairs(c, F(1, 2))) == 0

    def test_extremal_two_intervals(self):
        c = extremal_configuration(2, F(1, 2))
        got = epsilon_pairs(c, F(1, 2))
        assert got.pairs == frozenset({(1, 1), (1, 2), (2, 1), (2, 2)})
        assert got.pairs == frozenset(brute_pairs(c, F(1, 2)))

    def test_matches_brute_oracle(self):
        rnd = random.Random(7)
        for _ in range(50):
            n = rnd.randint(1, 12)
            c = _random_config(rnd, n)
            eps = F(rnd.randint(1, 40), 20)
            assert epsilon_pairs(c, eps).pairs == frozenset(brute_pairs(c, eps))

    def test_rejects_nonpositive_epsilon(self):
        c = Configuration.of([(0, 1)])
        with pytest.raises(ValueError):
            epsilon_pairs(c, 0)


def _random_config(rnd, n, exact=True):
    ivs, x = [], F(rnd.randint(0, 8), 8)
    for _ in range(n):
        width = F(rnd.randint(0, 16), 16)
        ivs.append(CompactInterval(x, x + width))
        x = x + width + F(rnd.randint(1, 16), 16)
    return Configuration(tuple(ivs))


class TestExtremal:
    @pytest.mark.parametrize("n,eps,expected",
                             [(2, F(1, 2), 4), (3, F(1, 2), 8), (10, F(1), 36)])
    def test_attains_bound(self, n, eps, expected):
        c = extremal_configuration(n, eps)
        assert len(epsilon_pairs(c, eps)) == expected == 4 * (n - 1)

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            extremal_configuration(1, F(1, 2))

    def test_deterministic(self):
        assert extremal_configuration(5, F(1, 3)) == extremal_configuration(5, F(1, 3))


class TestZero:
    @pytest.mark.parametrize("n,eps", [(1, F(1, 2)), (5, F(1, 10)), (50, F(1, 100))])
    def test_empty_pair_set(self, n, eps):
        c = zero_configuration(n, eps)
        assert len(c) == n
        assert not brute_pairs(c, eps)
        assert len(epsilon_pairs(c, eps)) == 0


# structural properties of the pair set, checked on random configurations

def _check_swap(pairs):
    return all((b, a) in pairs for a, b in pairs)


def _check_betweenness(pairs, n):
    # upper rows {b >= a : (a,b) in pairs} and left columns must be contiguous
    for a in range(1, n + 1):
        row = sorted(b for (x, b) in pairs if x == a and b >= a)
        if row and row != list(range(row[0], row[-1] + 1)):
            return False
        col = sorted(x for (x, d) in pairs if d == a and x <= a)
        if col and col != list(range(col[0], col[-1] + 1)):
            return False
    return True


def _check_exclusion(pairs):
    # no pair strictly enclosed by another pair
    upper = [(a, b) for a, b in pairs if a <= b]
    for a, d in upper:
        for b, c in upper:
            if a < b and c < d:
                return False
    return True


@given(st.integers(0, 10 ** 6))
def test_pair_set_properties(seed):
    rnd = random.Random(seed)
    n = rnd.randint(2, 12)
    c = _random_config(rnd, n)
    eps = F(rnd.randint(1, 60), 24)
    pairs = epsilon_pairs(c, eps).pairs
    assert len(pairs) <= 4 * (n - 1)
    assert _check_swap(pairs)
    assert _check_betweenness(pairs, n)
    assert _check_exclusion(pairs)


@given(st.tuples(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1)))
def test_euclidean_metric_is_order_preserving(triple):
    # exact rational evaluation: every float is a rational, so the strict
    # outer-pair dominance holds with no rounding caveats
    x, y, z = sorted(F(v) for v in triple)
    if x < y < z:
        assert max(abs(x - y), abs(y - z)) < abs(x - z)
