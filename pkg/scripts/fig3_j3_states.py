"""The three bound states at J=3, (u, v, w) = (17, 6, 5), with their wavefunctions."""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction

from ptlattice.model import ReducedParams
from ptlattice.secular import secular_poly
from ptlattice.spectrum import bound_states, recurrence_residual, wavefunction
from ptlattice.sturmian import f_rational, shape_classify


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--values", default="17,6,5")
    ap.add_argument("--window", type=int, default=40)
    ap.add_argument("--csv", help="write psi_n for every state here")
    args = ap.parse_args()

    r = ReducedParams(tuple(Fraction(v) for v in args.values.split(",")))
    P = secular_poly(r).poly
    print(f"P(t) = {P}")
    for t in (1, 2, 5, 10, 30, 32):
        print(f"  sign P({t}) = {'+' if P(Fraction(t)) > 0 else '-'}")

    sc = shape_classify(f_rational(r))
    print(f"f shape: {sc.j3_shape}, poles {sc.poles}, zeros {tuple(round(z, 4) for z in sc.zeros)}")

    states = bound_states(r)
    sites = range(-args.window, args.window + 1)
    rows = []
    for s in states:
        wf = wavefunction(r, s)
        res = recurrence_residual(r, wf, s.energy, window=args.window)
        print(f"level {s.level}: t = {s.t:.12g}, E = {s.energy:.12g}, residual {res:.2e}")
        rows.append([wf(n) for n in sites])

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n"] + [f"psi{s.level}" for s in states])
            for i, n in enumerate(sites):
                w.writerow([n] + [row[i] for row in rows])
        print(f"wavefunctions written to {args.csv}", file=sys.stderr)


if __name__ == "__main__":
    main()
