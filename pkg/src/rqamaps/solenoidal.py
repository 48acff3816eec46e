"""Odometer words, admissible nested-interval systems, and pair counting.

An admissible system assigns to every binary word ``a`` a closed interval
K_a inside [0, 1]: children share their parent's outer endpoints
(min K_{a0} = min K_a, max K_{a1} = max K_a, K_{a0} < K_{a1}) and depth-t
diameters tend to zero, so the intersection over depths is a Cantor set.
The dynamics acts as the odometer (adding machine): the image of K_a is
K_{a+1}, addition carrying from the leftmost (least significant) digit.

For window length m and threshold eps the depth-t word-pair counts are

    N_m  = #{(a, b) : max_{i<m} dist(K_{a+i}, K_{b+i}) <  eps}   (strict)
    N_m° = #{(a, b) : max_{i<m} diam(K_{a+i} u K_{b+i}) <= eps}  (closed)

whose densities N°/p_t^2 <= c <= N/p_t^2 sandwich every asymptotic
correlation sum over the system, with enclosure width at most
4m(p_t - 1)/p_t^2.  Counting is exhaustive over A^t x A^t; a resource
guard bounds the quadratic work (env RQA_MAX_PAIRS overrides).
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .intervals import CompactInterval, interval_dist, union_diam
from .rational import Number, as_fraction, common_scale, fraction_str

_DEFAULT_MAX_PAIRS = 2 ** 26
_INT64_LIMIT = 2 ** 62


class ResourceGuardError(RuntimeError):
    """Raised when a pair scan would exceed the configured quadratic budget."""


def max_pairs_limit() -> int:
    return int(os.environ.get("RQA_MAX_PAIRS", str(_DEFAULT_MAX_PAIRS)))


@dataclass(frozen=True)
class Word:
    """Digit word a_0 a_1 ... a_{t-1}, digit i running over range(radices[i]).

    The leftmost digit is the least significant one for odometer addition.
    """

    digits: tuple[int, ...]
    radices: tuple[int, ...]

    def __post_init__(self):
        if len(self.digits) != len(self.radices):
            raise ValueError("digit/radix length mismatch")
        for d, q in zip(self.digits, self.radices):
            if q < 2 or not 0 <= d < q:
                raise ValueError(f"digit {d} outside radix {q}")

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return "".join(str(d) for d in self.digits)

    @property
    def group_order(self) -> int:
        """p_t: the number of words of this shape."""
        p = 1
        for q in self.radices:
            p *= q
        return p

    def to_int(self) -> int:
        """Odometer-compatible integer value (leftmost digit least significant)."""
        value, base = 0, 1
        for d, q in zip(self.digits, self.radices):
            value += d * base
            base *= q
        return value

    @staticmethod
    def from_int(value: int, radices: Sequence[int]) -> "Word":
        digits = []
        for q in radices:
            digits.append(value % q)
            value //= q
        return Word(tuple(digits), tuple(radices))

    @staticmethod
    def binary(digits: Sequence[int]) -> "Word":
        ds = tuple(digits)
        return Word(ds, (2,) * len(ds))

    @staticmethod
    def parse(text: str) -> "Word":
        return Word.binary([int(ch) for ch in text])


def word_add(a: Word, k: int) -> Word:
    """Odometer addition a + k, carrying left to right, wrapping mod p_t."""
    return Word.from_int((a.to_int() + k) % a.group_order, a.radices)


@dataclass(frozen=True)
class AdmissibleSystem:
    """Binary nested-interval system driven by a diameter rule.

    ``diam_rule(word)`` fixes the width of K_word; interval placement then
    follows from endpoint sharing: the 0-child keeps the parent's lo, the
    1-child keeps the parent's hi.  Only binary systems are constructible
    here; the Word type itself carries general radices.
    """

    diam_rule: Callable[[Word], Fraction]
    depth_cap: int = 13
    descriptor: dict | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.depth_cap < 1:
            raise ValueError("depth_cap must be >= 1")


def interval_of_word(s: AdmissibleSystem, a: Word) -> CompactInterval:
    """K_a by recursive descent from [0, 1]; exact rational endpoints."""
    if len(a) > s.depth_cap:
        raise ValueError(f"depth {len(a)} exceeds cap {s.depth_cap}")
    if any(q != 2 for q in a.radices):
        raise ValueError("interval systems are binary")
    key = a.digits
    if not key:  # the empty word labels the whole space
        return CompactInterval(Fraction(0), Fraction(1))
    hit = s._cache.get(key)
    if hit is not None:
        return hit
    lo, hi = Fraction(0), Fraction(1)
    for depth in range(1, len(a) + 1):
        prefix = a.digits[:depth]
        cached = s._cache.get(prefix)
        if cached is not None:
            lo, hi = cached.lo, cached.hi
            continue
        width = as_fraction(s.diam_rule(Word.binary(prefix)))
        if width <= 0:
            raise ValueError(f"diameter rule must be positive, got {width}")
        if prefix[-1] == 0:
            hi = lo + width
        else:
            lo = hi - width
        s._cache[prefix] = CompactInterval(lo, hi)
    return s._cache[key]


def word_midpoint(s: AdmissibleSystem, a: Word) -> Fraction:
    iv = interval_of_word(s, a)
    return (iv.lo + iv.hi) / 2


def max_diam(s: AdmissibleSystem, t: int) -> Fraction:
    """nu_t: the largest depth-t interval diameter."""
    return max(interval_of_word(s, Word.from_int(j, (2,) * t)).diam
               for j in range(2 ** t))


def _shifted_pair(s: AdmissibleSystem, a: Word, b: Word, i: int):
    return (interval_of_word(s, word_add(a, i)),
            interval_of_word(s, word_add(b, i)))


def dist_m_words(s: AdmissibleSystem, a: Word, b: Word, m: int) -> Fraction:
    """max over i < m of dist(K_{a+i}, K_{b+i}); m is capped at p_t."""
    if len(a) != len(b):
        raise ValueError("words must share their length")
    steps = min(m, a.group_order)
    return max(interval_dist(*_shifted_pair(s, a, b, i)) for i in range(steps))


def diam_m_words(s: AdmissibleSystem, a: Word, b: Word, m: int) -> Fraction:
    """max over i < m of diam(K_{a+i} u K_{b+i}); m is capped at p_t."""
    if len(a) != len(b):
        raise ValueError("words must share their length")
    steps = min(m, a.group_order)
    return max(union_diam(*_shifted_pair(s, a, b, i)) for i in range(steps))


@dataclass(frozen=True)
class SolenoidalCounts:
    """Exhaustive depth-t pair counts for one window length."""

    t: int
    p_t: int
    m: int
    epsilon: Fraction
    n_strict: int
    n_closed: int

    @property
    def lower(self) -> Fraction:
        return Fraction(self.n_closed, self.p_t ** 2)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.n_strict, self.p_t ** 2)

    @property
    def width_bound(self) -> Fraction:
        return Fraction(4 * self.m * (self.p_t - 1), self.p_t ** 2)


def _depth_endpoints(s: AdmissibleSystem, t: int):
    """All depth-t intervals, indexed by odometer integer value."""
    return [interval_of_word(s, Word.from_int(j, (2,) * t)) for j in range(2 ** t)]


def counts_by_window(s: AdmissibleSystem, t: int, epsilon: Number, m_max: int,
                     threads: int = 1) -> list[SolenoidalCounts]:
    """Counts for every window length 1..m_max in one exhaustive scan."""
    eps = as_fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    p = 2 ** t
    if p * p > max_pairs_limit():
        raise ResourceGuardError(
            f"{p}^2 pairs exceed the guard ({max_pairs_limit()}); "
            "raise RQA_MAX_PAIRS to override")
    ivs = _depth_endpoints(s, t)
    scale = common_scale([iv.lo for iv in ivs] + [iv.hi for iv in ivs] + [eps])
    steps = min(m_max, p)
    if scale <= _INT64_LIMIT:
        los = np.asarray([int(iv.lo * scale) for iv in ivs], dtype=np.int64)
        his = np.asarray([int(iv.hi * scale) for iv in ivs], dtype=np.int64)
        per_m = _scan_numpy(los, his, int(eps * scale), steps, threads)
    else:
        per_m = _scan_python(ivs, eps, steps)
    # windows beyond p_t repeat the p_t values (the shift action is cyclic)
    while len(per_m) < m_max:
        per_m.append(per_m[-1])
    return [SolenoidalCounts(t=t, p_t=p, m=m, epsilon=eps,
                             n_strict=ns, n_closed=nc)
            for m, (ns, nc) in enumerate(per_m, start=1)]


def _scan_numpy(los, his, eps: int, steps: int, threads: int):
    p = len(los)
    rows = max(1, min(1024, (4 << 20) // p))
    blocks = [(i, min(i + rows, p)) for i in range(0, p, rows)]
    shifted = [(np.roll(los, -i), np.roll(his, -i)) for i in range(steps)]

    def one_block(block):
        blo, bhi = block
        counts = []
        acc_s = acc_c = None
        for lo_i, hi_i in shifted:
            gap = np.maximum(lo_i[blo:bhi, None] - hi_i[None, :],
                             lo_i[None, :] - hi_i[blo:bhi, None])
            hull = (np.maximum(hi_i[blo:bhi, None], hi_i[None, :])
                    - np.minimum(lo_i[blo:bhi, None], lo_i[None, :]))
            ok_s, ok_c = gap < eps, hull <= eps
            acc_s = ok_s if acc_s is None else (acc_s & ok_s)
            acc_c = ok_c if acc_c is None else (acc_c & ok_c)
            counts.append((int(acc_s.sum()), int(acc_c.sum())))
        return counts

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            block_counts = list(pool.map(one_block, blocks))
    else:
        block_counts = [one_block(b) for b in blocks]
    return [tuple(sum(bc[i][j] for bc in block_counts) for j in (0, 1))
            for i in range(steps)]


def _scan_python(ivs, eps: Fraction, steps: int):
    p = len(ivs)
    strict = [0] * steps
    closed = [0] * steps
    for a in range(p):
        for b in range(p):
            dm = um = None
            for i in range(steps):
                ka, kb = ivs[(a + i) % p], ivs[(b + i) % p]
                d, u = interval_dist(ka, kb), union_diam(ka, kb)
                dm = d if dm is None else max(dm, d)
                um = u if um is None else max(um, u)
                if dm < eps:
                    strict[i] += 1
                if um <= eps:
                    closed[i] += 1
    return [(strict[i], closed[i]) for i in range(steps)]


def count_pairs(s: AdmissibleSystem, t: int, m: int, epsilon: Number,
                threads: int = 1) -> SolenoidalCounts:
    """Exhaustive N_m / N_m° at depth t (strict < eps vs closed <= eps)."""
    return counts_by_window(s, t, epsilon, m, threads)[-1]


@dataclass(frozen=True)
class Enclosure:
    """Certified enclosure [N_m°, N_m]/p_t^2 of the asymptotic correlation sum."""

    t: int
    p_t: int
    value: Fraction
    lower: Fraction
    upper: Fraction
    width_bound: Fraction


def asymptotic_corr_sum(s: AdmissibleSystem, m: int, epsilon: Number,
                        t_schedule: Sequence[int],
                        threads: int = 1) -> tuple[Enclosure, ...]:
    """Depth-indexed values N_m°/p_t^2 with certified enclosure widths.

    The enclosure [N_m°, N_m]/p_t^2 contains both asymptotic correlation
    sums of any trajectory attracted to the system, and its width never
    exceeds 4m(p_t - 1)/p_t^2, which vanishes as t grows.
    """
    out = []
    for t in t_schedule:
        c = count_pairs(s, t, m, epsilon, threads)
        enc = Enclosure(t=t, p_t=c.p_t, value=c.lower, lower=c.lower,
                        upper=c.upper, width_bound=c.width_bound)
        if enc.upper - enc.lower > enc.width_bound:
            raise AssertionError(
                f"enclosure width exceeds bound at t={t}: {enc}")
        out.append(enc)
    return tuple(out)


def symbolic_trajectory(s: AdmissibleSystem, prefix: Word, n: int) -> tuple[Word, ...]:
    """Depth-|prefix| itinerary of a point of the Cantor set below K_prefix.

    The image intervals follow the odometer, so the itinerary of step i is
    simply prefix + i.  (The counts N_m/N_m° depend only on the system, not
    on the particular point; word-level operations here are likewise
    point-free.)
    """
    if n < 1:
        raise ValueError("need n >= 1")
    return tuple(word_add(prefix, i) for i in range(n))


def midpoint_trajectory(s: AdmissibleSystem, prefix: Word, n: int) -> list[Fraction]:
    """Numeric positions for the symbolic itinerary (interval midpoints)."""
    return [word_midpoint(s, w) for w in symbolic_trajectory(s, prefix, n)]


def system_to_json(s: AdmissibleSystem) -> str:
    import json
    if not s.descriptor:
        raise ValueError("system has no serializable descriptor")
    return json.dumps({**s.descriptor, "depth_cap": s.depth_cap})


def write_counts_csv(rows: Sequence[SolenoidalCounts], path) -> None:
    """CSV export (t, p_t, m, epsilon_num, epsilon_den, N_strict, N_closed, lower, upper)."""
    with open(path, "w", newline="") as fh:
        fh.write("t,p_t,m,epsilon_num,epsilon_den,N_strict,N_closed,lower,upper\n")
        for c in rows:
            fh.write(f"{c.t},{c.p_t},{c.m},{c.epsilon.numerator},"
                     f"{c.epsilon.denominator},{c.n_strict},{c.n_closed},"
                     f"{fraction_str(c.lower)},{fraction_str(c.upper)}\n")
