"""Rational functions in the reduced couplings, kept in lowest terms."""

from __future__ import annotations

from fractions import Fraction

from .multipoly import MultiPoly, divexact, gcd


class PolyFrac:
    """Quotient ``num / den`` of two ``MultiPoly``.

    The pair is reduced by its gcd and the denominator is integer-primitive
    with a positive leading coefficient, which makes the representation
    canonical: two equal rational functions have identical ``num`` and ``den``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, reduced: bool = False):
        num = _lift(num)
        den = _lift(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def lift(cls, c) -> "PolyFrac":
        if isinstance(c, PolyFrac):
            return c
        return cls(_lift(c), MultiPoly.const(1), reduced=True)

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_multipoly(self) -> MultiPoly:
        if not self.den.is_constant():
            raise ValueError("rational function has a nonconstant denominator")
        return self.num / self.den.constant_value()

    def simplify(self):
        """Return a ``MultiPoly`` when the denominator is trivial, else ``self``."""
        return self.as_multipoly() if self.is_polynomial() else self

    # ------------------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return PolyFrac(self.num + o.num, self.den)
        return PolyFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return PolyFrac(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        # cross-cancel before multiplying to keep the gcd work small
        g1 = gcd(self.num, o.den)
        g2 = gcd(o.num, self.den)
        n1, d2 = _cancel(self.num, o.den, g1)
        n2, d1 = _cancel(o.num, self.den, g2)
        return _normalized(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by a zero rational function")
        return self * PolyFrac(o.den, o.num, reduced=True)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return PolyFrac(1) / (self ** (-k))
        return PolyFrac(self.num**k, self.den**k, reduced=True)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def subs(self, values) -> "PolyFrac":
        return PolyFrac(self.num.subs(values), self.den.subs(values))

    def evaluate(self, values):
        d = self.den.evaluate(values)
        if not d:
            raise ZeroDivisionError("rational function evaluated at a pole")
        return self.num.evaluate(values) / d

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        num = str(self.num)
        if len(self.num) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"PolyFrac({self})"


def _lift(c) -> MultiPoly:
    if isinstance(c, MultiPoly):
        return c
    if isinstance(c, (int, Fraction)):
        return MultiPoly.const(c)
    raise TypeError(f"cannot lift {type(c).__name__} into a rational function")


def _coerce(c):
    if isinstance(c, PolyFrac):
        return c
    if isinstance(c, (MultiPoly, int, Fraction)):
        return PolyFrac.lift(c)
    return None


def _cancel(num: MultiPoly, den: MultiPoly, g: MultiPoly):
    if g.is_constant():
        return num, den
    return divexact(num, g), divexact(den, g)


def _normalized(num: MultiPoly, den: MultiPoly) -> PolyFrac:
    # num/den already coprime: only fix the denominator's scale
    obj = PolyFrac.__new__(PolyFrac)
    if not num:
        obj.num, obj.den = num, MultiPoly.const(1)
        return obj
    if den.is_constant():
        obj.num, obj.den = num / den.constant_value(), MultiPoly.const(1)
        return obj
    scale = den.content()
    if den.leading()[1] < 0:
        scale = -scale
    obj.num, obj.den = num / scale, den / scale
    return obj


def _reduce(num: MultiPoly, den: MultiPoly):
    if not num:
        return num, MultiPoly.const(1)
    if not den.is_constant():
        g = gcd(num, den)
        num, den = _cancel(num, den, g)
    f = _normalized(num, den)
    return f.num, f.den
