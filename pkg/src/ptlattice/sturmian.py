"""Sturmian factorization ``N^2 - t(1+u) D^2 = P`` and the J-fraction of ``f = N/D``.

Once ``u`` is solved for as a function of the energy variable ``t``, the
bound-state condition becomes ``f(t)^2 = (1+u) t`` with ``f`` a rational
function of the outer couplings only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .algebra import (
    MultiPoly,
    NotAPerfectSquare,
    Poly,
    PolyFrac,
    divexact,
    divrem,
    multipoly_gcd,
    poly_sqrt,
)
from .algebra.roots import (
    count_roots,
    poly_gcd,
    refine_root,
    squarefree_decomposition,
    squarefree_part,
    sturm_isolate,
)
from .model import ReducedParams
from .secular import SecularPoly, secular_poly


class FactorizationFailed(ValueError):
    pass


class PoleHit(ZeroDivisionError):
    pass


class DegenerateStep(ArithmeticError):
    def __init__(self, level: int, message: str):
        super().__init__(f"level {level}: {message}")
        self.level = level


def _collapse(p: Poly) -> Poly:
    """Turn constant symbolic coefficients into plain ``Fraction``."""
    def one(c):
        if isinstance(c, PolyFrac):
            c = c.simplify()
        if isinstance(c, MultiPoly) and c.is_constant():
            return c.constant_value()
        return c

    return p.map_coeffs(one)


@dataclass(frozen=True)
class RatFunc:
    """``f = N / D`` with monic ``N`` (degree J-1) and monic ``D`` (degree J-2)."""

    N: Poly
    D: Poly

    @property
    def J(self) -> int:
        return self.N.degree + 1

    def __call__(self, t):
        d = self.D(t)
        if not d:
            raise PoleHit(f"f has a pole at t={t}")
        return self.N(t) / d

    def subs(self, values) -> "RatFunc":
        return RatFunc(_collapse(self.N.subs(values)), _collapse(self.D.subs(values)))

    def is_numeric(self) -> bool:
        return self.N.is_numeric() and self.D.is_numeric()

    def same_as(self, other: "RatFunc") -> bool:
        """Equality as rational functions (cross-multiplied)."""
        return self.N * other.D == other.N * self.D

    def __str__(self) -> str:
        if self.D.degree == 0 and self.D.coeffs[0] == 1:
            return str(self.N)
        return f"({self.N})/({self.D})"


def split_affine(P: Poly, name: str = "u") -> tuple[Poly, Poly]:
    """``P = P0 + u * P1`` coefficientwise; raises if ``P`` is not affine in ``u``."""
    p0, p1 = [], []
    for c in P.coeffs:
        if isinstance(c, MultiPoly):
            parts = c.coefficients_in(name)
            if any(k > 1 for k in parts):
                raise FactorizationFailed(f"secular polynomial is not affine in {name}")
            p0.append(parts.get(0, MultiPoly.const(0)))
            p1.append(parts.get(1, MultiPoly.const(0)))
        else:
            p0.append(c)
            p1.append(Fraction(0))
    return Poly(p0, P.var), Poly(p1, P.var)


def factorize(P: SecularPoly) -> tuple[Poly, Poly]:
    """Split the secular polynomial (``u`` symbolic) into ``(N, D)``.

    ``D^2 = -P1 / t`` and ``N^2 = P0 - P1 = P(u = -1)``.  For ``J = 1`` the
    ansatz reads ``f_1 = t`` and the identity holds with an extra factor ``t``.
    """
    if P.J == 1:
        t = Poly.x(P.poly.var)
        return t, Poly([Fraction(1)], P.poly.var)
    P0, P1 = split_affine(P.poly)
    if not P1:
        raise FactorizationFailed("secular polynomial does not depend on u")
    if P1.coeff(0):
        raise FactorizationFailed("u-coefficient is not divisible by t")
    D2 = -Poly(P1.coeffs[1:], P1.var)
    N2 = P0 - P1
    try:
        D = _collapse(poly_sqrt(D2))
        N = _collapse(poly_sqrt(N2))
    except NotAPerfectSquare as exc:
        raise FactorizationFailed(str(exc)) from exc
    t = Poly.x(P.poly.var)
    u = MultiPoly.var("u")
    if N * N - t * (1 + u) * D * D != P.poly:
        raise FactorizationFailed("N^2 - t(1+u)D^2 does not reproduce the secular polynomial")
    return N, D


def f_rational(others: Sequence | ReducedParams) -> RatFunc:
    """``f_J`` for given outer couplings ``(v, w, ...)``; numbers or ``MultiPoly``."""
    if isinstance(others, ReducedParams):
        others = others.others()
    reduced = ReducedParams((MultiPoly.var("u"),) + tuple(others))
    N, D = factorize(secular_poly(reduced, keep_u_symbolic=True))
    return RatFunc(N, D)


def f_symbolic(J: int) -> RatFunc:
    return f_rational(ReducedParams.symbolic(J))


def sturmian_coupling(t, others: Sequence | ReducedParams | RatFunc):
    """Innermost coupling ``u = N(t)^2 / (t D(t)^2) - 1`` that makes ``t`` a root."""
    f = others if isinstance(others, RatFunc) else f_rational(others)
    d = f.D(t)
    if not d:
        raise PoleHit(f"D vanishes at t={t}")
    n = f.N(t)
    return n * n / (t * d * d) - 1


# ----------------------------------------------------------------------
# partial fractions and the J-fraction


@dataclass(frozen=True)
class PartialFraction:
    """``f = t - A0 - R / D`` with ``deg R < deg D``, plus simple-pole residues if known."""

    A0: object
    R: Poly
    D: Poly
    residues: tuple = ()

    def __str__(self) -> str:
        a0 = Poly([self.A0])
        head = str(Poly.x() - a0)
        if not self.R:
            return head
        r = str(self.R)
        r = f"({r})" if " " in r else r
        return f"{head} - {r}/({self.D})"


def partial_fractions(f: RatFunc) -> PartialFraction:
    q, rem = divrem(f.N, f.D)
    # N = (t - A0) D + rem  =>  f = t - A0 - R/D with R = -rem
    if q.degree != 1:
        raise ValueError("f must behave like t at large t")
    A0 = _simplify(-q.coeff(0) / q.coeff(1) if q.coeff(1) != 1 else -q.coeff(0))
    R = _collapse(-rem)
    residues: tuple = ()
    if f.D.degree == 1:
        pole = _simplify(-f.D.coeff(0))
        residues = ((pole, _simplify(-R(pole))),)
    elif f.is_numeric() and f.D.degree > 1:
        roots = np.roots([float(c) for c in reversed(f.D.coeffs)])
        dD = f.D.derivative()
        rc = [float(c) for c in R.coeffs]
        dc = [float(c) for c in dD.coeffs]
        residues = tuple(
            (complex(g), complex(-np.polyval(rc[::-1], g) / np.polyval(dc[::-1], g))) for g in roots
        )
    return PartialFraction(A0, R, f.D, residues)


def _simplify(c):
    if isinstance(c, PolyFrac):
        c = c.simplify()
    if isinstance(c, MultiPoly) and c.is_constant():
        return c.constant_value()
    return c


@dataclass(frozen=True)
class JFraction:
    """``f = t - A0 - B1/(t - A1 - B2/(t - A2 - ...))``.

    ``tilde_from`` indexes the interleaved sequence ``A0, B1, A1, B2, A2, ...``
    (position ``2k`` is ``A_k``, position ``2k-1`` is ``B_k``).  Entries from
    that position on are truncated ("tilded") forms that change when more
    outer couplings are switched on.
    """

    A: tuple
    B: tuple
    tilde_from: int
    J: int

    def interleaved(self) -> list[tuple[str, int, object]]:
        out = []
        for k, a in enumerate(self.A):
            if k:
                out.append(("B", k, self.B[k - 1]))
            out.append(("A", k, a))
        return out

    def is_tilded(self, kind: str, k: int) -> bool:
        pos = 2 * k if kind == "A" else 2 * k - 1
        return pos >= self.tilde_from

    def to_ratfunc(self) -> RatFunc:
        """Fold the fraction back into ``N / D`` (both monic)."""
        t = Poly.x()
        num, den = t - Poly([self.A[-1]]), Poly([Fraction(1)])
        for k in range(len(self.A) - 2, -1, -1):
            num, den = (t - Poly([self.A[k]])) * num - Poly([self.B[k]]) * den, num
        return RatFunc(_collapse(num.monic().simplify()), _collapse(den.monic().simplify()))


def jfraction(f: RatFunc, depth: Optional[int] = None) -> JFraction:
    """Expand ``f`` by repeated monic division until the remainder vanishes.

    The division runs fraction-free: numerator and denominator stay
    polynomials with polynomial coefficients (content removed at each level)
    and every ``A_k``, ``B_k`` is formed as a single quotient.  ``depth``
    stops after that many ``A`` coefficients.
    """
    num, den = f.N, f.D
    A: list = []
    B: list = []
    level = 0
    while True:
        if num.degree != den.degree + 1:
            raise DegenerateStep(level, "numerator and denominator are not a degree-(k+1, k) pair")
        a, a1 = num.lc, num.coeff(num.degree - 1)
        b, b1 = den.lc, den.coeff(den.degree - 1) if den.degree else Fraction(0)
        # monic quotient is t + a1/a - b1/b
        A.append(_div(a * b1 - a1 * b, a * b))
        # remainder of the monic division, scaled by a*b^2
        rem = b * b * num - Poly([a1 * b - a * b1, a * b], num.var) * den
        if not rem or (depth is not None and len(A) >= depth):
            break
        if rem.degree != den.degree - 1:
            raise DegenerateStep(level, f"remainder degree dropped from {den.degree} to {rem.degree}")
        B.append(_div(-rem.lc, a * b * b))
        num, den = den, _primitive(rem)
        level += 1
    return JFraction(tuple(A), tuple(B), tilde_from=f.J - 1, J=f.J)


def _primitive(p: Poly) -> Poly:
    """Divide out the common factor of the coefficients (monic if all are numbers)."""
    if all(not isinstance(c, MultiPoly) or c.is_constant() for c in p.coeffs):
        return _collapse(p).monic()
    coeffs = [c if isinstance(c, MultiPoly) else MultiPoly.const(c) for c in p.coeffs]
    g = MultiPoly.const(0)
    for c in sorted((c for c in coeffs if c), key=len):
        g = multipoly_gcd(g, c)
        if g.is_constant():
            return p
    return Poly([divexact(c, g) for c in coeffs], p.var)


def _div(a, b):
    if isinstance(b, MultiPoly) and b.is_constant():
        b = b.constant_value()
    if isinstance(b, (int, Fraction)):
        return _simplify(a / b)
    if isinstance(a, (int, Fraction)):
        a = MultiPoly.const(a)
    return _simplify(a / b)


# ----------------------------------------------------------------------
# shapes of f on the real axis


@dataclass(frozen=True)
class PoleInterval:
    lo: float
    hi: float
    zeros: int
    parity: str  # "full-range" (odd zero count) or "cap-cup" (even)
    positive_zero: bool

    @property
    def guaranteed_intersections(self) -> int:
        # a zero at t > 0 puts f^2 below (1+u)t there, with f^2 -> oo at both ends
        return 2 if self.positive_zero else 0


@dataclass(frozen=True)
class ShapeClassification:
    poles: tuple[float, ...]
    complex_poles: int
    zeros: tuple[float, ...]
    complex_zeros: int
    intervals: tuple[PoleInterval, ...]
    j3_shape: Optional[str] = None
    spike: Optional[object] = field(default=None)


def _real_roots(p: Poly) -> list[float]:
    if p.degree < 1:
        return []
    sf = squarefree_part(p)
    return [refine_root(sf, b) for b in sturm_isolate(sf)]


def shape_classify(f: RatFunc) -> ShapeClassification:
    """Real poles and zeros of numeric ``f`` and the branch shape on each pole interval.

    On an interval bounded by poles (or by infinity) ``f`` runs between
    infinities; an odd number of zeros inside means opposite-signed ends, so
    the branch maps the interval onto the whole real line.  An even count
    gives a cap- or cup-shaped branch.
    """
    if not f.is_numeric():
        raise TypeError("shape classification needs numeric couplings")
    N, D = f.N.to_numeric(), f.D.to_numeric()
    # a vanishing outer coupling leaves a common factor; its pole is removable
    g = poly_gcd(N, D)
    if g.degree > 0:
        N, D = divrem(N, g)[0], divrem(D, g)[0]
    poles = _real_roots(D)
    zeros = _real_roots(N)
    edges = [-math.inf] + poles + [math.inf]
    intervals = []
    for lo, hi in zip(edges, edges[1:]):
        inside = [z for z in zeros if lo < z < hi]
        intervals.append(
            PoleInterval(
                lo, hi, len(inside), "full-range" if len(inside) % 2 else "cap-cup",
                any(z > 0 for z in inside),
            )
        )
    shape = None
    spike = None
    if f.J == 3:
        spike = partial_fractions(f).R.coeff(0)  # (1+v) w
        shape = "/+/" if spike > 0 else ("cap+cup" if spike < 0 else "no-spike")
    return ShapeClassification(
        tuple(poles), D.degree - _count_with_mult(D), tuple(zeros), N.degree - _count_with_mult(N),
        tuple(intervals), shape, spike,
    )


def _count_with_mult(p: Poly) -> int:
    """Number of real roots of ``p`` counted with multiplicity."""
    if p.degree < 1:
        return 0
    return sum(m * count_roots(q, -math.inf, math.inf) for q, m in squarefree_decomposition(p))
