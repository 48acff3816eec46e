"""Executable counterexample constructions.

Two fully parameterized objects:

* ``prop42``: a zero-entropy piecewise linear map whose trajectory clusters
  around the 2-cycle {1/4, 3/4} so slowly that at the critical threshold
  eps = 1/2 the correlation sums C_1(n) oscillate forever: along the
  schedule n_k = 2*(2^{k+1} - 1) the even-k values settle at 7/10 and the
  odd-k values at 8/10, so no asymptotic correlation sum exists.  The
  symbolic point positions are authoritative; the numeric map is a
  depth-truncated cross-check.

* ``delahaye`` (prop52): the admissible nested-interval system with
  diameters r^-t / 2*r^-t (by leading digit), whose word-pair counts at
  eps_k = r^-k give asymptotic determinism exactly 2/3 for every window
  length m >= 2 -- recurrence determinism can stay away from 1 even for a
  map that is not chaotic in any standard sense.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .dynamics import PiecewiseLinearMap
from .intervals import CompactInterval, interval_dist, union_diam
from .rational import fraction_str
from .solenoidal import (AdmissibleSystem, Word, counts_by_window,
                         interval_of_word, max_pairs_limit)

Y0 = Fraction(1, 4)
Y1 = Fraction(3, 4)
EPSILON_STAR = Fraction(1, 2)
SCALE_RATIO = 16


# ---------------------------------------------------------------------------
# prop42: oscillating correlation sums at the critical threshold
# ---------------------------------------------------------------------------

def _delta(n: int) -> Fraction:
    # ratio-16 decay, scaled so every interval stays inside (0, 1/4)
    return Fraction(1, 4 * SCALE_RATIO ** (n + 1))


def _i_interval(n: int) -> CompactInterval:
    d = _delta(n)
    if n % 2 == 0:
        return CompactInterval(Y0 - 8 * d, Y0 - 7 * d)
    return CompactInterval(Y0 - 2 * d, Y0 - d)


def _j_interval(n: int) -> CompactInterval:
    d = _delta(n)
    if n % 2 == 0:
        return CompactInterval(Y1 - 2 * d, Y1 - d)
    return CompactInterval(Y1 - 8 * d, Y1 - 7 * d)


def index_level(index: int) -> int:
    """Depth of the interval holding position ``index``.

    Even index 2i lies in the left-side interval of depth level(i); odd
    index 2i+1 in the right-side interval of the same level map, where
    level(i) is the unique k with 2^k - 1 <= i <= 2^{k+1} - 2.
    """
    if index < 0:
        raise ValueError("index must be nonnegative")
    i = index // 2 if index % 2 == 0 else (index - 1) // 2
    return (i + 1).bit_length() - 1


@dataclass(frozen=True)
class Prop42Instance:
    """Verified interval scheme and point positions down to ``depth``."""

    depth: int
    y0: Fraction
    y1: Fraction
    epsilon_star: Fraction
    scale_ratio: int
    intervals_i: tuple[CompactInterval, ...]
    intervals_j: tuple[CompactInterval, ...]
    positions: tuple[Fraction, ...]
    slope: Fraction
    fixed_point: Fraction

    @property
    def n_points(self) -> int:
        return 2 * (2 ** (self.depth + 1) - 1)


def _position(index: int) -> Fraction:
    level = index_level(index)
    iv = _i_interval(level) if index % 2 == 0 else _j_interval(level)
    i = index // 2 if index % 2 == 0 else (index - 1) // 2
    rank = i - (2 ** level - 1)
    # 2^level points at the midpoints of equal cells: strictly interior,
    # equally spaced, left to right
    return iv.lo + iv.diam * Fraction(2 * rank + 1, 2 ** (level + 1))


def build_prop42(depth: int) -> Prop42Instance:
    """Construct and machine-verify the scheme down to ``depth`` levels.

    Verified at build (failure raises):  left intervals inside (0, 1/4) and
    right intervals inside (1/4, 3/4); even-level gap > 1/2 and odd-level
    hull < 1/2; strict ordering of both families; the cross-level
    consequences gap(I_s, J_t) > 1/2 for s < t and hull(I_s, J_t) < 1/2
    for s > t.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    eps = EPSILON_STAR
    ivs_i = tuple(_i_interval(n) for n in range(depth + 1))
    ivs_j = tuple(_j_interval(n) for n in range(depth + 1))

    def fail(msg):
        raise AssertionError(f"prop42 scheme violates its contract: {msg}")

    for n in range(depth + 1):
        a, b = ivs_i[n], ivs_j[n]
        if not (0 < a.lo and a.hi < Y0):
            fail(f"I_{n} not inside (0, 1/4)")
        if not (Y0 < b.lo and b.hi < Y1):
            fail(f"J_{n} not inside (1/4, 3/4)")
        if n % 2 == 0 and not interval_dist(a, b) > eps:
            fail(f"dist(I_{n}, J_{n}) <= 1/2")
        if n % 2 == 1 and not union_diam(a, b) < eps:
            fail(f"diam(I_{n} u J_{n}) >= 1/2")
        if n < depth and not (ivs_i[n].hi < ivs_i[n + 1].lo
                              and ivs_j[n].hi < ivs_j[n + 1].lo):
            fail(f"families not strictly increasing at level {n}")
    for s in range(depth + 1):
        for t in range(depth + 1):
            if s < t and not interval_dist(ivs_i[s], ivs_j[t]) > eps:
                fail(f"dist(I_{s}, J_{t}) <= 1/2")
            if s > t and not union_diam(ivs_i[s], ivs_j[t]) < eps:
                fail(f"diam(I_{s} u J_{t}) >= 1/2")

    n_points = 2 * (2 ** (depth + 1) - 1)
    positions = tuple(_position(i) for i in range(n_points))
    x1, x2 = positions[1], positions[2]
    slope = (x2 - Y1) / (x1 - Y0)
    if not slope < -1:
        fail("middle branch not expanding")
    fixed_point = (Y1 - slope * Y0) / (1 - slope)
    if not Y0 < fixed_point < x1:
        fail("fixed point outside (1/4, x_1)")
    return Prop42Instance(
        depth=depth, y0=Y0, y1=Y1, epsilon_star=eps, scale_ratio=SCALE_RATIO,
        intervals_i=ivs_i, intervals_j=ivs_j, positions=positions,
        slope=slope, fixed_point=fixed_point)


def prop42_positions(inst: Prop42Instance, n: int) -> tuple[Fraction, ...]:
    """The first n point positions x_0 ... x_{n-1} (exact rationals)."""
    if not 1 <= n <= inst.n_points:
        raise ValueError(f"n={n} outside generated depth (max {inst.n_points})")
    return inst.positions[:n]


def prop42_recurrence_rule(inst: Prop42Instance, i: int, j: int) -> bool:
    """Symbolic test for |x_i - x_j| <= 1/2; no positional arithmetic.

    True iff i, j share parity, or the mixed pair sits at levels (s, t)
    (left-side level s, right-side level t) with s == t odd or s > t.
    """
    if not (0 <= i < inst.n_points and 0 <= j < inst.n_points):
        raise ValueError("index outside generated depth")
    if i % 2 == j % 2:
        return True
    e, o = (i, j) if i % 2 == 0 else (j, i)
    s, t = index_level(e), index_level(o)
    return (s == t and s % 2 == 1) or s > t


def _parity_level_populations(count: int, max_level: int) -> list[int]:
    """#indices i < count at each level (i ranges over one parity class)."""
    pops = []
    for s in range(max_level + 1):
        lo, hi = 2 ** s - 1, 2 ** (s + 1) - 2
        pops.append(max(0, min(count - 1, hi) - lo + 1))
    return pops


def prop42_pair_count(inst: Prop42Instance, n: int) -> int:
    """#{(i, j) in [0, n)^2 : recurrence rule holds}, exact.

    Grouped pair scan: indices with equal (parity, level) are
    interchangeable for the rule, so the n^2 scan collapses to a sum over
    level pairs weighted by populations.  The direct scan (tests) and the
    independent closed form agree with this count exactly.
    """
    if not 1 <= n <= inst.n_points:
        raise ValueError(f"n={n} outside generated depth (max {inst.n_points})")
    evens, odds = (n + 1) // 2, n // 2
    max_level = max(index_level(n - 1), index_level(max(n - 2, 0)))
    e_pop = _parity_level_populations(evens, max_level)
    o_pop = _parity_level_populations(odds, max_level)
    mixed = 0
    for s in range(max_level + 1):
        if not e_pop[s]:
            continue
        for t in range(max_level + 1):
            if o_pop[t] and ((s == t and s % 2 == 1) or s > t):
                mixed += e_pop[s] * o_pop[t]
    return evens * evens + odds * odds + 2 * mixed


def prop42_C1(inst: Prop42Instance, n: int) -> Fraction:
    """C_1(n, 1/2) of the constructed trajectory, exact for any n in depth."""
    return Fraction(prop42_pair_count(inst, n), n * n)


def prop42_schedule_n(k: int) -> int:
    """The analysis subsequence n_k = 2*(2^{k+1} - 1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return 2 * (2 ** (k + 1) - 1)


def prop42_c1_closed_form(k: int) -> Fraction:
    """Closed form of C_1 at n_k: independent of the pair scan.

    (2/n^2) * [(2^{k+1}-1)^2 + (4/15)(16^{ceil(k/2)} - 1)
               + (4^{k+1} - 3*2^{k+1} + 2)/3]
    """
    if k < 1:
        raise ValueError("closed form is stated for k >= 1")
    n = prop42_schedule_n(k)
    total = ((2 ** (k + 1) - 1) ** 2
             + Fraction(4, 15) * (16 ** math.ceil(k / 2) - 1)
             + Fraction(4 ** (k + 1) - 3 * 2 ** (k + 1) + 2, 3))
    return Fraction(2, n * n) * total


def prop42_numeric_map(inst: Prop42Instance, depth: int | None = None) -> PiecewiseLinearMap:
    """Depth-truncated PL realization of the construction.

    Interpolates the point successor relation through every generated
    position whose image is itself generated, is constant x_1 left of x_0
    and constant y_0 right of y_1, and decreases with constant slope on
    [y_0, x_1].  The true map accumulates breakpoints at y_0 and y_1, so
    the truncation closes both branches linearly to f(y_0) = y_1 and
    f(y_1) = y_0; numeric iteration is faithful exactly for trajectory
    prefixes within the generated depth -- the symbolic positions stay
    authoritative beyond it.
    """
    depth = inst.depth if depth is None else depth
    if not 1 <= depth <= inst.depth:
        raise ValueError(f"depth {depth} outside built instance (max {inst.depth})")
    pos = inst.positions
    n_pts = 2 * (2 ** (depth + 1) - 1)
    breakpoints = [Fraction(0), pos[0]]
    values = [pos[1], pos[1]]
    for e in range(2, n_pts - 1, 2):  # even indices with generated successors
        breakpoints.append(pos[e])
        values.append(pos[e + 1])
    breakpoints.append(Y0)
    values.append(Y1)
    breakpoints.append(pos[1])
    values.append(pos[2])
    for o in range(3, n_pts - 2, 2):  # odd indices with generated successors
        breakpoints.append(pos[o])
        values.append(pos[o + 1])
    breakpoints.append(Y1)
    values.append(Y0)
    breakpoints.append(Fraction(1))
    values.append(Y0)
    return PiecewiseLinearMap(tuple(breakpoints), tuple(values))


def prop42_report(inst: Prop42Instance, k_max: int) -> dict:
    """Oscillation report over the schedule k = 1..k_max.

    liminf/limsup estimates are the min/max of the tail half of the
    scheduled values, which the even-k and odd-k subfamilies pull apart.
    """
    if not 1 <= k_max:
        raise ValueError("k_max must be >= 1")
    if prop42_schedule_n(k_max) > inst.n_points:
        raise ValueError("schedule exceeds generated depth")
    ks = list(range(1, k_max + 1))
    values = [(k, prop42_schedule_n(k), prop42_C1(inst, prop42_schedule_n(k)))
              for k in ks]
    tail = values[len(values) // 2:]
    liminf_est = min(c for _, _, c in tail)
    limsup_est = max(c for _, _, c in tail)
    return {
        "epsilon": fraction_str(inst.epsilon_star),
        "schedule": [{"k": k, "n": n, "c1_num": c.numerator,
                      "c1_den": c.denominator, "c1_float": float(c),
                      "parity": "even" if k % 2 == 0 else "odd"}
                     for k, n, c in values],
        "liminf_est": fraction_str(liminf_est),
        "limsup_est": fraction_str(limsup_est),
        "liminf_float": float(liminf_est),
        "limsup_float": float(limsup_est),
        "liminf_lt_limsup": liminf_est < limsup_est,
    }


def write_c1_csv(inst: Prop42Instance, k_max: int, path) -> None:
    """CSV export (k, n, c1_num, c1_den, c1_float, parity) over the schedule."""
    with open(path, "w", newline="") as fh:
        fh.write("k,n,c1_num,c1_den,c1_float,parity\n")
        for k in range(1, k_max + 1):
            n = prop42_schedule_n(k)
            c = prop42_C1(inst, n)
            parity = "even" if k % 2 == 0 else "odd"
            fh.write(f"{k},{n},{c.numerator},{c.denominator},{float(c)!r},{parity}\n")


# ---------------------------------------------------------------------------
# delahaye / prop52: determinism limit 2/3
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DelahayeInstance:
    """Admissible system with diameters r^-t (leading digit 0) / 2 r^-t (digit 1)."""

    r: int
    system: AdmissibleSystem

    def epsilon_k(self, k: int) -> Fraction:
        if k < 1:
            raise ValueError("k must be >= 1")
        return Fraction(1, self.r ** k)


def build_delahaye(r: int, depth_cap: int = 13) -> DelahayeInstance:
    """Construct the system and validate its gap structure.

    Requires r >= 5 (smaller r breaks the separation between sibling
    unions and the threshold scale).  Checked at build: the top-level gap
    is 1 - 3/r and every sibling gap is (r-2) r^-(t+1), doubled under a
    leading 1.
    """
    if r < 5:
        raise ValueError("need r >= 5")

    def diam_rule(w: Word) -> Fraction:
        scale = Fraction(1, r ** len(w))
        return scale if w.digits[0] == 0 else 2 * scale

    system = AdmissibleSystem(diam_rule=diam_rule, depth_cap=depth_cap,
                              descriptor={"kind": "delahaye", "r": r})
    inst = DelahayeInstance(r=r, system=system)

    k0 = interval_of_word(system, Word.binary([0]))
    k1 = interval_of_word(system, Word.binary([1]))
    if interval_dist(k0, k1) != 1 - Fraction(3, r):
        raise AssertionError("top-level gap violates the diameter rule")
    for t in range(1, min(depth_cap, 5)):
        for j in range(2 ** t):
            a = Word.from_int(j, (2,) * t)
            lo = interval_of_word(system, Word.binary(a.digits + (0,)))
            hi = interval_of_word(system, Word.binary(a.digits + (1,)))
            expect = Fraction(r - 2, r ** (t + 1))
            if a.digits[0] == 1:
                expect *= 2
            if interval_dist(lo, hi) != expect:
                raise AssertionError(f"sibling gap below {a} violates the rule")
    return inst


def delahaye_counts_formula(k: int, m: int, t: int) -> tuple[int, int]:
    """Scaling-law counts (N_1°, N_m°) at eps_k for depth t >= k + 1."""
    if t < k + 1:
        raise ValueError("formula needs t >= k + 1")
    if m < 2:
        raise ValueError("the window count is stated for m >= 2")
    factor = 4 ** (t - (k + 1))
    return factor * 3 * 2 ** k, factor * 2 ** (k + 1)


def delahaye_counts(inst: DelahayeInstance, k: int, m: int, t: int,
                    threads: int = 1) -> tuple[int, int]:
    """(N_1°, N_m°) at eps_k = r^-k; enumerated when the guard allows.

    Beyond the resource guard the depth-scaling law takes over; both paths
    agree exactly wherever both apply.
    """
    if m < 2:
        raise ValueError("need m >= 2 (window count)")
    if t < k + 1:
        raise ValueError("need t >= k + 1")
    eps = inst.epsilon_k(k)
    if 4 ** t <= max_pairs_limit() and t <= inst.system.depth_cap:
        counts = counts_by_window(inst.system, t, eps, m, threads)
        return counts[0].n_closed, counts[m - 1].n_closed
    return delahaye_counts_formula(k, m, t)


def delahaye_rdet(inst: DelahayeInstance, k: int, m: int) -> Fraction:
    """Asymptotic determinism at eps_k: exactly 2/3 for every m >= 2."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return Fraction(1)
    n1, nm = delahaye_counts_formula(k, m, k + 1)
    return Fraction(nm, n1)


def delahaye_det(inst: DelahayeInstance, k: int, m: int) -> Fraction:
    """Asymptotic RQA-determinism m*rdet_m - (m-1)*rdet_{m+1} at eps_k."""
    return m * delahaye_rdet(inst, k, m) - (m - 1) * delahaye_rdet(inst, k, m + 1)


def system_from_json(text: str) -> DelahayeInstance:
    data = json.loads(text)
    if data.get("kind") != "delahaye":
        raise ValueError(f"unknown system kind: {data.get('kind')!r}")
    return build_delahaye(int(data["r"]), int(data.get("depth_cap", 13)))
