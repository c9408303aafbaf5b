"""Real-root isolation for numeric polynomials with exact rational coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .poly import Poly, divrem

Bracket = tuple[Fraction, Fraction]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q[t]."""
    while b:
        _, r = divrem(a, b)
        a, b = b, r
    return a.monic() if a else a


def exact_quotient(a: Poly, b: Poly) -> Poly:
    q, r = divrem(a, b)
    if r:
        raise ValueError("inexact polynomial division")
    return q


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p = lc * prod(f_i ** i)`` with monic squarefree, coprime ``f_i``."""
    if p.degree < 1:
        return []
    p = p.monic()
    dp = p.derivative()
    g = poly_gcd(p, dp)
    c = exact_quotient(p, g)
    d = exact_quotient(dp, g) - c.derivative()
    out = []
    i = 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c = exact_quotient(c, a)
        d = exact_quotient(d, a) - c.derivative()
        i += 1
    return out


def squarefree_part(p: Poly) -> Poly:
    g = poly_gcd(p, p.derivative())
    return exact_quotient(p, g).monic()


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        _, r = divrem(chain[-2], chain[-1])
        if not r:
            break
        # only signs matter, so scale by |lc| to keep the rationals small
        chain.append(-r * (1 / abs(r.lc)))
    return chain


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def variations_at(chain: list[Poly], x) -> int:
    if x == math.inf:
        return _variations(_sign(q.lc) for q in chain)
    if x == -math.inf:
        return _variations(_sign(q.lc) * (-1) ** q.degree for q in chain)
    return _variations(_sign(q(x)) for q in chain)


def cauchy_bound(p: Poly) -> Fraction:
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def count_roots(p: Poly, lo=-math.inf, hi=math.inf, chain: Optional[list[Poly]] = None) -> int:
    """Number of distinct real roots in ``(lo, hi]``.

    Without a precomputed ``chain`` the count runs on the squarefree part, so
    multiple roots at an endpoint are handled; a supplied chain must come from
    a squarefree polynomial.
    """
    if p.degree < 1:
        return 0
    chain = chain or sturm_chain(squarefree_part(p))
    return variations_at(chain, lo) - variations_at(chain, hi)


def sturm_isolate(p: Poly, interval=(-math.inf, math.inf)) -> list[Bracket]:
    """Disjoint brackets ``(a, b]``, each holding exactly one real root of ``p``.

    ``p`` should be squarefree; it is reduced first if it is not.  A bracket
    with ``a == b`` is an exactly located rational root.  Brackets come out in
    increasing order.
    """
    if p.degree < 1:
        return []
    p = squarefree_part(p)
    chain = sturm_chain(p)
    bound = cauchy_bound(p)
    lo, hi = interval
    lo = -bound if lo == -math.inf else Fraction(lo)
    hi = bound if hi == math.inf else Fraction(hi)
    if lo >= hi:
        return []
    out: list[Bracket] = []
    stack = [(lo, hi, variations_at(chain, lo) - variations_at(chain, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((b, b) if p(b) == 0 else (a, b))
            continue
        mid = (a + b) / 2
        vm = variations_at(chain, mid)
        stack.append((mid, b, vm - variations_at(chain, b)))
        stack.append((a, mid, variations_at(chain, a) - vm))
    out.sort()
    return out


def refine_root(p: Poly, bracket: Bracket, rel_tol: float = 1e-12) -> float:
    """Shrink an isolating bracket to ``rel_tol`` by safeguarded Newton steps.

    Every candidate is checked with an exact sign evaluation, so the bracket
    always contains the root; a step that fails to halve the bracket is
    replaced by bisection.
    """
    lo, hi = bracket
    if lo == hi:
        return float(lo)
    if p(hi) == 0:
        return float(hi)
    p = squarefree_part(p)
    if p.degree == 1:
        return float(-Fraction(p.coeff(0)) / Fraction(p.coeff(1)))
    dp = p.derivative()
    s_lo = _sign(p(lo)) or _sign(dp(lo))
    fc = [float(c) for c in p.coeffs]
    dfc = [float(c) for c in dp.coeffs]

    def horner(cs, x):
        acc = 0.0
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    def probe(c: Fraction):
        nonlocal lo, hi
        s = _sign(p(c))
        if s == 0:
            lo = hi = c
        elif s == s_lo:
            lo = c
        else:
            hi = c

    x = float((lo + hi) / 2)
    for _ in range(400):
        width = hi - lo
        if width <= Fraction(rel_tol) * max(abs(lo), abs(hi), Fraction(1, 10**300)):
            break
        d = horner(dfc, x)
        cand = x - horner(fc, x) / d if d else math.nan
        if math.isfinite(cand) and float(lo) < cand < float(hi):
            c = Fraction(cand)
            probe(c)
            if lo == hi:
                break
            # step a tolerance-width past the candidate to pin the other side
            delta = Fraction(rel_tol / 4) * abs(c) or Fraction(rel_tol)
            probe(c + delta if lo == c else c - delta)
            if lo == hi:
                break
            x = cand
        if hi - lo > width / 2:
            mid = (lo + hi) / 2
            probe(mid)
            x = float((lo + hi) / 2)
    return float((lo + hi) / 2)


def real_root_census(p: Poly, split=Fraction(1)) -> dict:
    """Counts of real roots above ``split``, at or below it, and complex roots.

    Multiplicities are included.
    """
    above = below = 0
    for f, mult in squarefree_decomposition(p):
        chain = sturm_chain(f)
        n_above = variations_at(chain, split) - variations_at(chain, math.inf)
        n_total = variations_at(chain, -math.inf) - variations_at(chain, math.inf)
        above += mult * n_above
        below += mult * (n_total - n_above)
    return {"above": above, "below": below, "complex": p.degree - above - below}
