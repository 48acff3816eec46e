import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from rqamaps.constructions import prop42_positions
from rqamaps.dynamics import Trajectory, iterate
from rqamaps.finite_omega import PeriodicOrbitData, closed_form_corr_sum
from rqamaps.rqa import (RQAParams, bowen_distance, correlation_sum,
                         estimate_asymptotics, pgm_bytes, recurrence_determinism,
                         recurrence_matrix, rqa_det, write_series_csv)

from conftest import random_pl_map


def brute_corr_sum(points, m, eps, n):
    """Oracle: direct O(n^2 m) scan with exact arithmetic."""
    count = 0
    for i in range(n):
        for j in range(n):
            if max(abs(points[i + s] - points[j + s]) for s in range(m)) <= eps:
                count += 1
    return F(count, n * n)


ALTERNATING = Trajectory(F(0), tuple(F(i % 2) for i in range(12)))
TWO_CYCLE = Trajectory(F(1, 4), tuple(F(1, 4) if i % 2 == 0 else F(3, 4)
                                      for i in range(12)))


class TestBowen:
    def test_identical_indices(self):
        assert bowen_distance(TWO_CYCLE, 3, 3, 4) == 0

    def test_window_one_is_plain_distance(self):
        assert bowen_distance(ALTERNATING, 0, 1, 1) == 1

    def test_two_cycle_window_two(self):
        assert bowen_distance(TWO_CYCLE, 0, 1, 2) == F(1, 2)

    def test_window_overflow(self):
        with pytest.raises(ValueError):
            bowen_distance(TWO_CYCLE, 11, 0, 2)

    def test_nondecreasing_in_m(self):
        rnd = random.Random(5)
        t = iterate(random_pl_map(rnd), F(1, 3), 12)
        for m in range(1, 5):
            assert bowen_distance(t, 1, 4, m) <= bowen_distance(t, 1, 4, m + 1)


class TestCorrelationSum:
    def test_fixed_point_is_one(self):
        t = Trajectory(F(1, 2), (F(1, 2),) * 10)
        for m in (1, 2, 3):
            assert correlation_sum(t, RQAParams(m, F(1, 100), 8)) == 1

    def test_alternating_half(self):
        assert correlation_sum(ALTERNATING, RQAParams(1, F(1, 2), 10)) == F(1, 2)

    def test_construction_first_six_points(self, prop42_small):
        pts = prop42_positions(prop42_small, 6)
        got = correlation_sum(list(pts), RQAParams(1, F(1, 2), 6))
        assert got == brute_corr_sum(pts, 1, F(1, 2), 6) == F(5, 6)

    def test_exact_and_float_paths_agree(self, prop42_small):
        pts = prop42_positions(prop42_small, 30)
        p = RQAParams(2, F(1, 2), 24)
        exact = correlation_sum(list(pts), p)
        floaty = correlation_sum([float(x) for x in pts], p)
        assert exact == floaty  # distances well away from the threshold

    def test_matches_brute_oracle(self):
        rnd = random.Random(17)
        for _ in range(25):
            t = iterate(random_pl_map(rnd), F(rnd.randint(0, 16), 16), 20)
            m, n = rnd.randint(1, 3), rnd.randint(2, 16)
            eps = F(rnd.randint(1, 32), 32)
            assert correlation_sum(t, RQAParams(m, eps, n)) == \
                brute_corr_sum(t.points, m, eps, n)

    def test_threads_deterministic(self, prop42_small):
        pts = list(prop42_positions(prop42_small, 80))
        p = RQAParams(2, F(1, 2), 70)
        assert correlation_sum(pts, p, threads=1) == correlation_sum(pts, p, threads=4)

    def test_insufficient_trajectory(self):
        with pytest.raises(ValueError):
            correlation_sum(ALTERNATING, RQAParams(3, F(1, 2), 11))

    def test_nonstrict_threshold(self):
        # pairs at distance exactly epsilon count
        t = Trajectory(F(0), (F(0), F(1, 2), F(0), F(1, 2)))
        assert correlation_sum(t, RQAParams(1, F(1, 2), 4)) == 1


class TestDeterminism:
    def test_window_one_is_one(self):
        rnd = random.Random(23)
        t = iterate(random_pl_map(rnd), F(1, 7), 10)
        assert recurrence_determinism(t, RQAParams(1, F(1, 3), 10)) == 1

    def test_attracting_two_cycle_near_one(self, contracting_two_cycle_map):
        t = iterate(contracting_two_cycle_map, 0.1, 800 + 2)
        r = recurrence_determinism(t, RQAParams(3, 0.05, 800))
        assert r >= F(99, 100)

    def test_det_window_one_collapses(self):
        t = TWO_CYCLE
        assert rqa_det(t, RQAParams(1, F(3, 5), 10)) == \
            recurrence_determinism(t, RQAParams(1, F(3, 5), 10)) == 1

    def test_det_affine_identity(self):
        rnd = random.Random(29)
        for _ in range(10):
            t = iterate(random_pl_map(rnd), F(rnd.randint(0, 8), 8), 20)
            m, n = rnd.randint(2, 3), 12
            eps = F(rnd.randint(1, 16), 16)
            r_m = recurrence_determinism(t, RQAParams(m, eps, n))
            r_m1 = recurrence_determinism(t, RQAParams(m + 1, eps, n))
            assert rqa_det(t, RQAParams(m, eps, n)) == m * r_m - (m - 1) * r_m1

    def test_det_equal_rdets_identity(self):
        t = Trajectory(F(1, 2), (F(1, 2),) * 12)  # rdet_m = rdet_{m+1} = 1
        assert rqa_det(t, RQAParams(3, F(1, 4), 8)) == 1


class TestRecurrenceMatrix:
    def test_fixed_point_all_true(self):
        t = Trajectory(F(1, 2), (F(1, 2),) * 4)
        mat = recurrence_matrix(t, RQAParams(1, F(1, 10), 3))
        assert mat.bits.all() and mat.popcount == 9

    def test_checkerboard(self):
        mat = recurrence_matrix(ALTERNATING, RQAParams(1, F(1, 2), 4))
        expect = [[(i - j) % 2 == 0 for j in range(4)] for i in range(4)]
        assert mat.bits.tolist() == expect

    def test_popcount_consistency(self):
        rnd = random.Random(31)
        for _ in range(10):
            t = iterate(random_pl_map(rnd), F(rnd.randint(0, 8), 8), 20)
            p = RQAParams(rnd.randint(1, 3), F(rnd.randint(1, 16), 16), 14)
            mat = recurrence_matrix(t, p)
            assert F(mat.popcount, p.n ** 2) == correlation_sum(t, p)
            assert (mat.bits == mat.bits.T).all()
            assert mat.bits.diagonal().all()

    def test_pgm_bytes(self):
        mat = recurrence_matrix(ALTERNATING, RQAParams(1, F(1, 2), 3))
        assert pgm_bytes(mat) == b"P1\n3 3\n1 0 1\n0 1 0\n1 0 1\n"


class TestEstimator:
    def test_fixed_point(self):
        t = Trajectory(F(1, 2), (F(1, 2),) * 40)
        est = estimate_asymptotics(t, 2, F(1, 10), [4, 8, 16, 32])
        assert est.liminf_est == est.limsup_est == 1

    def test_schedule_validation(self):
        t = Trajectory(F(1, 2), (F(1, 2),) * 10)
        with pytest.raises(ValueError):
            estimate_asymptotics(t, 1, F(1, 2), [4, 4])
        with pytest.raises(ValueError):
            estimate_asymptotics(t, 1, F(1, 2), [])

    def test_oscillating_schedule_separates_limits(self, prop42_small):
        # the even-k/odd-k subfamilies pull the tail extremes apart
        from rqamaps.constructions import prop42_C1, prop42_schedule_n
        schedule = [prop42_schedule_n(k) for k in range(1, 7)]
        pts = list(prop42_positions(prop42_small, max(schedule)))
        est = estimate_asymptotics(pts, 1, F(1, 2), schedule)
        assert all(c == prop42_C1(prop42_small, n) for n, c in est.values)
        assert abs(float(est.liminf_est) - 0.7) <= 1e-2
        assert abs(float(est.limsup_est) - 0.8) <= 1e-2
        assert est.liminf_est < est.limsup_est

    def test_attracting_cycle_converges_to_closed_form(self, plateau_map):
        t = iterate(plateau_map, 0.21, 1500 + 1)
        est = estimate_asymptotics(t, 2, 0.45, [200, 400, 800, 1500])
        assert float(est.limsup_est - est.liminf_est) <= 1e-2
        closed = closed_form_corr_sum(PeriodicOrbitData.of(["1/5", "1/2", "4/5"]),
                                      2, F(9, 20))
        assert abs(float(est.liminf_est) - float(closed)) <= 1e-2

    def test_series_csv(self, tmp_path):
        t = Trajectory(F(1, 2), (F(1, 2),) * 10)
        est = estimate_asymptotics(t, 1, F(1, 2), [2, 4])
        out = tmp_path / "series.csv"
        write_series_csv(est, out)
        assert out.read_text() == ("n,C_m_exact_num,C_m_exact_den,C_m_float\n"
                                   "2,1,1,1.0\n4,1,1,1.0\n")


class TestShiftBound:
    def test_exact_bound(self):
        rnd = random.Random(37)
        for _ in range(20):
            f = random_pl_map(rnd)
            n, m, h = 16, rnd.randint(1, 3), rnd.randint(1, 8)
            eps = F(rnd.randint(1, 16), 16)
            t = iterate(f, F(rnd.randint(0, 16), 16), n + m - 1 + h)
            c0 = correlation_sum(t, RQAParams(m, eps, n))
            ch = correlation_sum(t.shifted(h), RQAParams(m, eps, n))
            assert abs(ch - c0) <= F(4 * h, n)


# quick randomized invariants; the acceptance suite runs the large corpus

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_rqa_invariants(seed):
    rnd = random.Random(seed)
    f = random_pl_map(rnd)
    m, n = rnd.randint(1, 3), rnd.randint(4, 12)
    eps = F(rnd.randint(1, 24), 16)
    t = iterate(f, F(rnd.randint(0, 12), 12), n + m)
    c = correlation_sum(t, RQAParams(m, eps, n))
    assert F(1, n) <= c <= 1
    assert c <= correlation_sum(t, RQAParams(m, eps + F(1, 16), n))
    assert c <= correlation_sum(t, RQAParams(max(1, m - 1), eps, n))
    if eps >= 1:
        assert c == 1
    r = recurrence_determinism(t, RQAParams(m, eps, n))
    r_next = recurrence_determinism(t, RQAParams(m + 1, eps, n))
    assert 0 <= r_next <= r <= 1
