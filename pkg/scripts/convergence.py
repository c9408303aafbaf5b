"""Truncated-lattice eigenvalues against the exact bound states as N grows."""

from __future__ import annotations

import argparse
from fractions import Fraction

from ptlattice.model import ReducedParams
from ptlattice.oracle import convergence_study


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--values", default="3")
    ap.add_argument("--N", default="6,8,10,12,14,16")
    ap.add_argument("--csv", help="write N,E,diff rows here")
    args = ap.parse_args()

    r = ReducedParams(tuple(Fraction(v) for v in args.values.split(",")))
    rep = convergence_study(r, [int(n) for n in args.N.split(",")])
    for t, e, rate, expected in zip(rep.secular_t, rep.secular_energies, rep.rates, rep.expected_rates):
        shown = "n/a" if rate is None else f"{rate:.4f}"
        print(f"t = {t:.10g}  E = {e:.12g}  fitted rate {shown}  ln t = {expected:.4f}")
    for c in rep.comparisons:
        print(f"N = {c.N:4d}  " + "  ".join("-" if d is None else f"{d:.2e}" for d in c.diffs))
    for w in rep.warnings:
        print("warning:", w)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(rep.to_csv())


if __name__ == "__main__":
    main()
