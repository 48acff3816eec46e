"""Closed-form asymptotic correlation sums for finite limit cycles.

A trajectory attracted to a periodic orbit y_0 -> y_1 -> ... -> y_{p-1}
has asymptotic correlation sum

    c_m(eps) = #{(i, j) in Z_p^2 : bowen_m(y_i, y_j) <= eps} / p^2

for every eps outside the finite set of pairwise orbit Bowen distances.
At an excluded threshold the limit may genuinely fail to exist, so those
values are flagged rather than silently accepted.  Determinism follows as
c_m / c_1 and equals exactly 1 whenever eps is below the smallest spatial
gap of the orbit.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .dynamics import PeriodicStructure
from .rational import Number, as_fraction, fraction_str


class ExcludedEpsilonWarning(UserWarning):
    """Threshold coincides with an orbit Bowen distance; no existence guarantee."""


@dataclass(frozen=True)
class PeriodicOrbitData:
    """Periodic orbit in dynamical order: y_{i+1} is the image of y_i (cyclically)."""

    points: tuple[Number, ...]

    def __post_init__(self):
        if not self.points:
            raise ValueError("orbit must be nonempty")
        if len(set(self.points)) != len(self.points):
            raise ValueError("orbit points must be pairwise distinct")

    @property
    def period(self) -> int:
        return len(self.points)

    @staticmethod
    def of(points) -> "PeriodicOrbitData":
        return PeriodicOrbitData(tuple(as_fraction(p) for p in points))


def aligned_orbit(ps: PeriodicStructure) -> PeriodicOrbitData:
    """Rotate a detected cycle so orbit index i matches trajectory index i mod p.

    A trajectory with preperiod k visits ps.orbit[(i - k) mod p] at large
    indices congruent to i; the rotation fixes that offset.  All pair
    counts below are invariant under the rotation (cyclic shifts permute
    the index grid), so the choice only standardizes labels.
    """
    k, p = ps.preperiod, ps.period
    return PeriodicOrbitData(tuple(ps.orbit[(i - k) % p] for i in range(p)))


def bowen_orbit_distance(o: PeriodicOrbitData, i: int, j: int, m: int) -> Number:
    """Window-m Bowen distance along the cycle, successor indices mod p."""
    p = o.period
    if not (0 <= i < p and 0 <= j < p):
        raise ValueError(f"indices ({i}, {j}) outside orbit of period {p}")
    return max(abs(o.points[(i + s) % p] - o.points[(j + s) % p])
               for s in range(m))


def excluded_epsilons(o: PeriodicOrbitData, m: int) -> frozenset:
    """All positive pairwise orbit Bowen distances (at most p^2 values)."""
    p = o.period
    vals = {bowen_orbit_distance(o, i, j, m) for i in range(p) for j in range(p)}
    vals.discard(0 * o.points[0])
    return frozenset(vals)


def recurrent_orbit_pairs(o: PeriodicOrbitData, m: int, epsilon: Number) -> int:
    return sum(1 for i in range(o.period) for j in range(o.period)
               if bowen_orbit_distance(o, i, j, m) <= epsilon)


def closed_form_corr_sum(o: PeriodicOrbitData, m: int, epsilon: Number) -> Fraction:
    """c_m(eps) for the orbit; warns when eps is an excluded threshold."""
    eps = as_fraction(epsilon) if not isinstance(epsilon, float) else epsilon
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if eps in excluded_epsilons(o, m):
        warnings.warn(
            f"epsilon={epsilon} equals an orbit Bowen distance; the asymptotic "
            "correlation sum is not guaranteed to exist there",
            ExcludedEpsilonWarning, stacklevel=2)
    return Fraction(recurrent_orbit_pairs(o, m, eps), o.period ** 2)


def min_spatial_gap(o: PeriodicOrbitData) -> Number:
    p = o.period
    if p == 1:
        raise ValueError("a fixed point has no spatial gap")
    return min(abs(o.points[i] - o.points[j])
               for i in range(p) for j in range(p) if i != j)


def asymptotic_rdet_finite(o: PeriodicOrbitData, m: int, epsilon: Number) -> Fraction:
    """Asymptotic determinism c_m / c_1; exactly 1 below the minimal gap."""
    eps = as_fraction(epsilon) if not isinstance(epsilon, float) else epsilon
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    p = o.period
    if p == 1 or eps < min_spatial_gap(o):
        # only diagonal pairs recur, in every window length
        assert recurrent_orbit_pairs(o, 1, eps) == p
        assert recurrent_orbit_pairs(o, m, eps) == p
        return Fraction(1)
    c_m = closed_form_corr_sum(o, m, eps)
    c_1 = closed_form_corr_sum(o, 1, eps)
    return c_m / c_1


def report(o: PeriodicOrbitData, m: int, epsilon: Number) -> dict:
    """JSON-ready summary of the closed form at one (m, epsilon)."""
    c = closed_form_corr_sum(o, m, epsilon)
    return {
        "p": o.period,
        "orbit": [fraction_str(y) for y in o.points],
        "m": m,
        "epsilon": fraction_str(epsilon),
        "c_m_num": c.numerator,
        "c_m_den": c.denominator,
        "excluded": sorted(fraction_str(e) for e in excluded_epsilons(o, m)),
    }


def report_json(o: PeriodicOrbitData, m: int, epsilon: Number) -> str:
    return json.dumps(report(o, m, epsilon), indent=2)
