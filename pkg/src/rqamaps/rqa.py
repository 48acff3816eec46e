"""Bowen metrics, correlation sums, recurrence determinism, recurrence plots.

Core quantities
---------------
For a trajectory x_0, x_1, ... the window-m Bowen distance between indices
i and j is ``max_{0<=s<m} |x_{i+s} - x_{j+s}|``.  The correlation sum
``C_m(n, eps)`` is the fraction of index pairs (i, j) in [0, n)^2 whose
Bowen distance is <= eps (non-strict, deliberately); recurrence determinism
is ``rdet_m = C_m / C_1``; RQA-determinism is the affine combination
``DET_m = m*rdet_m - (m-1)*rdet_{m+1}``.

Counts are exact integers, so correlation sums and determinisms are exact
rationals in both arithmetic modes; only the underlying distance
comparisons differ (exact rational vs binary float, decided by the
trajectory's element type).

Pair counting is a direct O(n^2 m) scan over row blocks: desk-scale n keeps
this tractable, exact-rational mode precludes spatial bucketing, and block
partitioning keeps output deterministic for any thread count.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .dynamics import Trajectory
from .rational import Number, as_fraction, common_scale

_BLOCK_ROWS = 512
_INT64_LIMIT = 2 ** 62


def default_threads() -> int:
    return max(1, int(os.environ.get("RQA_THREADS", "1")))


@dataclass(frozen=True)
class RQAParams:
    """Window length m, threshold epsilon > 0, segment length n."""

    m: int
    epsilon: Number
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


def _points(t) -> Sequence[Number]:
    if isinstance(t, Trajectory):
        return t.points
    return t


def bowen_distance(t, i: int, j: int, m: int) -> Number:
    """max over the m-window of pointwise distances |x_{i+s} - x_{j+s}|."""
    pts = _points(t)
    if m < 1:
        raise ValueError("window length must be >= 1")
    if max(i, j) + m > len(pts) or min(i, j) < 0:
        raise ValueError(
            f"window [{max(i, j)}, +{m}) overflows trajectory of length {len(pts)}")
    return max(abs(pts[i + s] - pts[j + s]) for s in range(m))


def _blocks(n: int) -> list[tuple[int, int]]:
    # cap temp arrays at ~32 MB of float64 per block
    rows = max(1, min(_BLOCK_ROWS, (4 << 20) // max(n, 1)))
    return [(i, min(i + rows, n)) for i in range(0, n, rows)]


def _count_numpy(x: np.ndarray, n: int, m: int, eps, threads: int,
                 collect) -> int:
    """Blockwise pair scan; x has length n+m-1, dtype float64 or int64."""

    def one_block(lo_hi):
        lo, hi = lo_hi
        acc = None
        for s in range(m):
            d = np.abs(x[lo + s:hi + s, None] - x[None, s:s + n])
            ok = d <= eps
            acc = ok if acc is None else (acc & ok)
        if collect is not None:
            collect(lo, hi, acc)
        return int(acc.sum())

    blocks = _blocks(n)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(one_block, blocks))
    return sum(map(one_block, blocks))


def _count_python_ints(xs: list[int], n: int, m: int, eps: int, collect=None) -> int:
    """Exact fallback for scaled integers too large for int64."""
    count = 0
    rows = [] if collect is not None else None
    for i in range(n):
        row = xs[i:i + m]
        bits = [] if collect is not None else None
        for j in range(n):
            for s in range(m):
                d = row[s] - xs[j + s]
                if d > eps or -d > eps:
                    hit = False
                    break
            else:
                hit = True
                count += 1
            if bits is not None:
                bits.append(hit)
        if rows is not None:
            rows.append(bits)
    if collect is not None:
        collect(0, n, np.asarray(rows, dtype=bool))
    return count


def _scaled_ints(pts: Sequence, k: int, epsilon) -> tuple[list[int], int, int]:
    fracs = [as_fraction(p) for p in pts[:k]]
    eps = as_fraction(epsilon)
    scale = common_scale(fracs + [eps])
    xs = [int(f * scale) for f in fracs]
    return xs, int(eps * scale), scale


def recurrent_pair_count(t, p: RQAParams, threads: int | None = None,
                         _collect=None) -> int:
    """#{(i, j) in [0, n)^2 : Bowen_m(i, j) <= epsilon}, exact."""
    pts = _points(t)
    n, m = p.n, p.m
    if len(pts) < n + m - 1:
        raise ValueError(
            f"trajectory length {len(pts)} < n+m-1 = {n + m - 1}")
    threads = default_threads() if threads is None else threads
    if isinstance(pts[0], float):
        x = np.asarray(pts[:n + m - 1], dtype=np.float64)
        return _count_numpy(x, n, m, float(p.epsilon), threads, _collect)
    xs, eps, scale = _scaled_ints(pts, n + m - 1, p.epsilon)
    if scale <= _INT64_LIMIT:
        x = np.asarray(xs, dtype=np.int64)
        return _count_numpy(x, n, m, eps, threads, _collect)
    return _count_python_ints(xs, n, m, eps, _collect)


def correlation_sum(t, p: RQAParams, threads: int | None = None) -> Fraction:
    """C_m(n, epsilon) = recurrent pair count / n^2, as an exact rational."""
    return Fraction(recurrent_pair_count(t, p, threads), p.n * p.n)


def recurrence_determinism(t, p: RQAParams, threads: int | None = None) -> Fraction:
    """rdet_m = C_m / C_1 (well defined: diagonal pairs keep C_1 > 0)."""
    c_m = correlation_sum(t, p, threads)
    if p.m == 1:
        return c_m / c_m
    c_1 = correlation_sum(t, RQAParams(1, p.epsilon, p.n), threads)
    return c_m / c_1


def rqa_det(t, p: RQAParams, threads: int | None = None) -> Fraction:
    """DET_m = m*rdet_m - (m-1)*rdet_{m+1}; needs window m+1 available."""
    r_m = recurrence_determinism(t, p, threads)
    if p.m == 1:
        return r_m
    r_m1 = recurrence_determinism(t, RQAParams(p.m + 1, p.epsilon, p.n), threads)
    return p.m * r_m - (p.m - 1) * r_m1


@dataclass(frozen=True)
class RecurrenceMatrix:
    """Boolean recurrence plot: bits[i, j] iff Bowen_m(i, j) <= epsilon."""

    n: int
    m: int
    epsilon: Number
    bits: np.ndarray = field(compare=False)

    @property
    def popcount(self) -> int:
        return int(self.bits.sum())


def recurrence_matrix(t, p: RQAParams, threads: int | None = None) -> RecurrenceMatrix:
    bits = np.zeros((p.n, p.n), dtype=bool)

    def collect(lo, hi, block):
        bits[lo:hi, :] = block

    recurrent_pair_count(t, p, threads, _collect=collect)
    return RecurrenceMatrix(n=p.n, m=p.m, epsilon=p.epsilon, bits=bits)


@dataclass(frozen=True)
class SeriesEstimate:
    """Finite-schedule estimate of lower/upper asymptotic correlation sums.

    Heuristic by construction: min/max of the examined tail.  Where a
    closed-form backend exists it is authoritative, not this estimate.
    """

    m: int
    epsilon: Number
    values: tuple[tuple[int, Fraction], ...]
    liminf_est: Fraction
    limsup_est: Fraction


def estimate_asymptotics(t, m: int, epsilon: Number, schedule: Sequence[int],
                         tail_fraction: float = 0.5,
                         threads: int | None = None) -> SeriesEstimate:
    """Correlation sums over an increasing n-schedule, tail min/max extremes.

    The trajectory (or plain point sequence) must be long enough for the
    largest scheduled n plus the window: max(schedule) + m - 1 points.
    """
    schedule = list(schedule)
    if not schedule or any(a >= b for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be nonempty and strictly increasing")
    values = tuple(
        (n, correlation_sum(t, RQAParams(m, epsilon, n), threads))
        for n in schedule)
    tail_len = max(1, int(len(values) * tail_fraction))
    tail = [c for _, c in values[-tail_len:]]
    return SeriesEstimate(m=m, epsilon=epsilon, values=values,
                          liminf_est=min(tail), limsup_est=max(tail))


def pgm_bytes(matrix: RecurrenceMatrix) -> bytes:
    """Plain-bitmap rendering: header "P1\\n<n> <n>\\n", rows of 0/1 tokens.

    Row i corresponds to trajectory index i; 1 marks a recurrent pair.
    Byte-exact golden-file format.
    """
    n = matrix.n
    out = [f"P1\n{n} {n}\n"]
    for i in range(n):
        out.append(" ".join("1" if b else "0" for b in matrix.bits[i]))
        out.append("\n")
    return "".join(out).encode("ascii")


def write_pgm(matrix: RecurrenceMatrix, path) -> None:
    with open(path, "wb") as fh:
        fh.write(pgm_bytes(matrix))


def write_series_csv(series: SeriesEstimate, path) -> None:
    """CSV export (n, C_m_exact_num, C_m_exact_den, C_m_float)."""
    with open(path, "w", newline="") as fh:
        fh.write("n,C_m_exact_num,C_m_exact_den,C_m_float\n")
        for n, c in series.values:
            fh.write(f"{n},{c.numerator},{c.denominator},{float(c)!r}\n")
