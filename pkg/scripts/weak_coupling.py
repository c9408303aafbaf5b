"""Largest root near threshold along a ray of small couplings."""

from __future__ import annotations

import argparse
import json

from ptlattice.spectrum import perturbative_probe


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--J", type=int, default=3)
    ap.add_argument("--direction", default="1,1,1")
    ap.add_argument("--lambdas", default="1e-2,5e-3,2.5e-3,1.25e-3")
    args = ap.parse_args()

    probe = perturbative_probe(args.J, args.direction.split(","), [float(x) for x in args.lambdas.split(",")])
    print(json.dumps(probe.as_document(), indent=2))
    print(f"log-log slope of t0 - (1 + sum c_k value_k): {probe.slope}")
    print(f"phi0 / lambda = {probe.phi0_coefficient:.5f}, E0 / lambda^2 = {probe.E0_coefficient:.5f}")


if __name__ == "__main__":
    main()
