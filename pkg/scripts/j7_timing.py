"""Time the symbolic J=7 secular polynomial, its factorization and the J-fraction head."""

from __future__ import annotations

import resource
import time

from ptlattice.model import ReducedParams
from ptlattice.secular import secular_poly
from ptlattice.sturmian import f_symbolic, jfraction, partial_fractions


def timed(label, fn):
    t0 = time.perf_counter()
    out = fn()
    print(f"{label:<28s} {time.perf_counter() - t0:8.2f} s")
    return out


def main() -> None:
    P = timed("secular polynomial J=7", lambda: secular_poly(ReducedParams.symbolic(7)))
    f = timed("factorization N, D", lambda: f_symbolic(7))
    timed("partial fraction", lambda: partial_fractions(f))
    jf = timed("J-fraction A0..A2", lambda: jfraction(f, depth=3))
    rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
    print(f"terms in P: {sum(len(c) if hasattr(c, '__len__') else 1 for c in P.poly.coeffs)}")
    print(f"N has degree {f.N.degree}, D has degree {f.D.degree}")
    print(f"A2 = {jf.A[2]}")
    print(f"peak RSS {rss:.0f} MB")


if __name__ == "__main__":
    main()
