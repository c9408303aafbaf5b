"""Dense univariate polynomials in ``t`` and Laurent polynomials in ``x``.

Coefficients are any exact ring element: ``Fraction`` (numeric mode),
``MultiPoly`` or ``PolyFrac`` (symbolic mode).  Coefficients stay in whatever
ring the caller used; mixing ``MultiPoly`` and ``PolyFrac`` is allowed since
the latter absorbs the former.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence, Union

from .multipoly import MultiPoly
from .polyfrac import PolyFrac

Coef = Union[Fraction, MultiPoly, PolyFrac]


class NotAPerfectSquare(ValueError):
    pass


def _is_const(c) -> bool:
    return not isinstance(c, (MultiPoly, PolyFrac)) or (
        c.is_constant() if isinstance(c, MultiPoly) else c.is_polynomial() and c.num.is_constant()
    )


def _const_value(c) -> Fraction:
    if isinstance(c, MultiPoly):
        return c.constant_value()
    if isinstance(c, PolyFrac):
        return c.as_multipoly().constant_value()
    return Fraction(c)


def _strip(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


class Poly:
    """Polynomial ``sum coeffs[k] * var**k`` stored densely by ascending degree."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Sequence = (), var: str = "t"):
        self.coeffs: tuple = tuple(_strip(list(coeffs)))
        self.var = var

    @classmethod
    def monomial(cls, k: int, c=Fraction(1), var: str = "t") -> "Poly":
        return cls([Fraction(0)] * k + [c], var)

    @classmethod
    def x(cls, var: str = "t") -> "Poly":
        return cls.monomial(1, Fraction(1), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _lift(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.var != self.var:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction, MultiPoly, PolyFrac)):
            return Poly([other], self.var)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self.coeff(k) + o.coeff(k) for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly([Fraction(1)], self.var)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, Poly) and other.var != self.var:
            return False
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if len(self.coeffs) != len(o.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, o.coeffs))

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __call__(self, value):
        """Horner evaluation; ``value`` may be a number, coefficient or Poly."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def map_coeffs(self, fn: Callable) -> "Poly":
        return Poly([fn(c) for c in self.coeffs], self.var)

    def subs(self, values) -> "Poly":
        """Substitute parameter values into symbolic coefficients."""
        return self.map_coeffs(lambda c: c.subs(values) if isinstance(c, (MultiPoly, PolyFrac)) else c)

    def is_numeric(self) -> bool:
        return all(_is_const(c) for c in self.coeffs)

    def to_numeric(self) -> "Poly":
        """Collapse constant symbolic coefficients to ``Fraction``."""
        return self.map_coeffs(_const_value)

    def simplify(self) -> "Poly":
        return self.map_coeffs(lambda c: c.simplify() if isinstance(c, PolyFrac) else c)

    def monic(self) -> "Poly":
        lc = self.lc
        if lc == 1:
            return self
        return self.map_coeffs(lambda c: _divide(c, lc))

    def shift(self, k: int) -> "Poly":
        """Multiply by ``var**k`` (``k >= 0``)."""
        if not self.coeffs:
            return self
        return Poly([Fraction(0)] * k + list(self.coeffs), self.var)

    def divrem(self, other: "Poly") -> tuple["Poly", "Poly"]:
        return divrem(self, other)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self})"


def _divide(a, b):
    if isinstance(b, (int, Fraction)) or (isinstance(b, MultiPoly) and b.is_constant()):
        b = _const_value(b)
        return a / b
    if isinstance(a, (int, Fraction)):
        a = MultiPoly.const(a)
    return a / b


def divrem(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder with ``p = q*quotient + remainder`` exactly."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if p.var != q.var:
        raise ValueError("variable mismatch")
    rem = list(p.coeffs)
    dq = q.degree
    lc = q.lc
    quot = [Fraction(0)] * max(len(rem) - dq, 0)
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = rem[k + dq]
        if not c:
            continue
        c = _divide(c, lc)
        quot[k] = c
        for j, qc in enumerate(q.coeffs):
            if qc:
                rem[k + j] = rem[k + j] - c * qc
    rem = _strip(rem[:dq]) if dq > 0 else []
    return Poly(quot, p.var), Poly(rem, p.var)


def poly_sqrt(p: Poly) -> Poly:
    """Exact square root with positive leading coefficient, by coefficient matching."""
    if not p:
        raise NotAPerfectSquare("zero polynomial")
    if p.degree % 2:
        raise NotAPerfectSquare(f"odd degree {p.degree}")
    m = p.degree // 2
    lc = p.lc
    if not _is_const(lc):
        raise NotAPerfectSquare("leading coefficient is not a constant")
    lead = _rational_sqrt(_const_value(lc))
    q = [Fraction(0)] * (m + 1)
    q[m] = lead
    two_lead = 2 * lead
    for k in range(1, m + 1):
        # coefficient of t^(2m-k): sum over i+j = 2m-k with i, j in [m-k, m]
        idx = 2 * m - k
        acc = p.coeff(idx)
        for i in range(m - k + 1, m + 1):
            j = idx - i
            if m - k < j <= m:
                acc = acc - q[i] * q[j]
        q[m - k] = _divide(acc, two_lead)
    root = Poly(q, p.var)
    if root * root != p:
        raise NotAPerfectSquare("coefficient matching leaves a nonzero residue")
    return root


def _rational_sqrt(c: Fraction) -> Fraction:
    import math

    if c <= 0:
        raise NotAPerfectSquare("leading coefficient is not a positive square")
    n, d = c.numerator, c.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise NotAPerfectSquare("leading coefficient is not a rational square")
    return Fraction(rn, rd)


class LaurentPoly:
    """``sum coeffs[k] * var**(low + k)`` with possibly negative ``low``."""

    __slots__ = ("low", "coeffs", "var")

    def __init__(self, low: int, coeffs: Sequence, var: str = "x"):
        coeffs = _strip(list(coeffs))
        start = 0
        while start < len(coeffs) and not coeffs[start]:
            start += 1
        self.coeffs = tuple(coeffs[start:])
        self.low = low + start if self.coeffs else 0
        self.var = var

    @classmethod
    def monomial(cls, k: int, c=Fraction(1), var: str = "x") -> "LaurentPoly":
        return cls(k, [c], var)

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, k: int):
        i = k - self.low
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.low + i, c

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction, MultiPoly, PolyFrac)):
            return LaurentPoly(0, [other], self.var)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o:
            return self
        if not self:
            return o
        low = min(self.low, o.low)
        high = max(self.high, o.high)
        return LaurentPoly(low, [self.coeff(k) + o.coeff(k) for k in range(low, high + 1)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.low, [-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self or not o:
            return LaurentPoly(0, [], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return LaurentPoly(self.low + o.low, out, self.var)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.low == o.low and len(self.coeffs) == len(o.coeffs) and all(
            a == b for a, b in zip(self.coeffs, o.coeffs)
        )

    def __call__(self, value):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        if self.low >= 0:
            return acc * value**self.low
        return acc / value ** (-self.low)

    def subs(self, values) -> "LaurentPoly":
        return LaurentPoly(
            self.low,
            [c.subs(values) if isinstance(c, (MultiPoly, PolyFrac)) else c for c in self.coeffs],
            self.var,
        )

    def __str__(self) -> str:
        terms = [(k, c) for k, c in reversed(list(self.items()))]
        return _format_terms(terms, self.var)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


# ----------------------------------------------------------------------
# canonical text


def format_coef(c) -> tuple[bool, str, bool]:
    """Split a coefficient into (negative, magnitude text, needs parentheses)."""
    if isinstance(c, PolyFrac):
        if c.is_polynomial():
            return format_coef(c.as_multipoly())
        neg, body, compound = format_coef(c.num)
        num = f"({body})" if compound else body
        den = str(c.den)
        if len(c.den) > 1 or "*" in den:
            den = f"({den})"
        return neg, f"{num}/{den}", True
    if isinstance(c, MultiPoly):
        if len(c) == 1:
            e, v = next(iter(c.terms.items()))
            neg = v < 0
            return neg, str(-c if neg else c), False
        neg = c.sorted_terms()[0][1] < 0
        return neg, str(-c if neg else c), True
    c = Fraction(c)
    return c < 0, str(abs(c)), False


def _format_terms(terms, var: str) -> str:
    if not terms:
        return "0"
    out = []
    for idx, (k, c) in enumerate(terms):
        neg, body, compound = format_coef(c)
        if k == 0:
            power = ""
        elif k == 1:
            power = var
        else:
            power = f"{var}^{k}"
        if power:
            if body == "1":
                text = power
            else:
                text = f"({body})*{power}" if compound else f"{body}*{power}"
        else:
            text = f"({body})" if compound else body
        if idx == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)


def format_poly(p: Poly) -> str:
    """Canonical text, e.g. ``t^2 - (1+u+2*v)*t + v^2``."""
    terms = [(k, c) for k, c in reversed(list(enumerate(p.coeffs))) if c]
    return _format_terms(terms, p.var)
