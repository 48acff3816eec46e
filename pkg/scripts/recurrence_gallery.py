#!/usr/bin/env python3
"""Render a small gallery of recurrence plots as plain bitmaps.

Three sources: a trajectory attracted to a 3-cycle, the prop42 point
sequence at its critical threshold, and the midpoint itinerary of the
r=5 nested-interval system.
"""
import argparse
from fractions import Fraction
from pathlib import Path

from rqamaps.constructions import build_delahaye, build_prop42, prop42_positions
from rqamaps.dynamics import PiecewiseLinearMap, iterate
from rqamaps.rqa import RQAParams, recurrence_matrix, write_pgm
from rqamaps.solenoidal import Word, midpoint_trajectory


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=120)
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    n = args.n

    cycle_map = PiecewiseLinearMap.of(
        [0, "1/4", "9/20", "11/20", "3/4", "17/20", 1],
        ["1/2", "1/2", "4/5", "4/5", "1/5", "1/5", "1/5"])
    plots = {
        "three_cycle.pgm": (iterate(cycle_map, 0.21, n + 1).points,
                            RQAParams(2, 0.25, n)),
        "oscillating.pgm": (prop42_positions(build_prop42(7), n + 1),
                            RQAParams(2, Fraction(1, 2), n)),
        "cantor_odometer.pgm": (midpoint_trajectory(build_delahaye(5).system,
                                                    Word.parse("0000"), n + 1),
                                RQAParams(2, Fraction(1, 5), n)),
    }
    for name, (points, params) in plots.items():
        matrix = recurrence_matrix(list(points), params)
        write_pgm(matrix, args.outdir / name)
        rate = matrix.popcount / params.n ** 2
        print(f"{name}: n={params.n} recurrence rate {rate:.4f}")
    print(f"wrote {len(plots)} bitmaps to {args.outdir}/")


if __name__ == "__main__":
    main()
