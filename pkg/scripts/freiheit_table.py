#!/usr/bin/env python3
"""Per-degree dimension table for the one-relator freedom theorem.

Runs the Lie-side verifier for a relator r and a polynilpotent series,
printing dim (H cap (R + N_kl))_d against dim (H cap N_kl)_d for every
series member and degree.  Strict inequalities mark the degrees where H
meets the relator ideal nontrivially.
"""
import argparse
import sys

from foxcalc.freiheit import SeriesSpec, lie_freiheitssatz_verify
from foxcalc.lie_core import parse_lie


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rank", type=int, default=3)
    ap.add_argument("--relator", default="[y1, y3]")
    ap.add_argument("--spec", default="4", help="block lengths, comma separated")
    ap.add_argument("--root-power", type=int, default=1)
    ap.add_argument("--cutoff", type=int, default=6)
    args = ap.parse_args()

    r = parse_lie(args.relator, args.rank)
    spec = SeriesSpec(tuple(int(t) for t in args.spec.split(",")), args.root_power)
    rep = lie_freiheitssatz_verify(r, spec, args.cutoff)

    print(f"relator {args.relator}, level {rep.criterion.level}, "
          f"criterion satisfied: {rep.criterion.satisfied}")
    print(f"{'k':>2} {'l':>2} {'deg':>4} {'dim H^(R+N)':>12} {'dim H^N':>8}")
    for e in rep.entries:
        mark = "" if e.equal else "   <-- strict"
        print(f"{e.k:>2} {e.l:>2} {e.degree:>4} {e.dim_with_relator:>12} "
              f"{e.dim_series:>8}{mark}")
    print(f"all equal: {rep.all_equal}, consistent with criterion: {rep.consistent}")
    return 0 if rep.consistent else 1


if __name__ == "__main__":
    sys.exit(main())
