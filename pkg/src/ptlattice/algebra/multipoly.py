"""Sparse multivariate polynomials over Q in the reduced couplings.

The variable universe is fixed to the seven reduced couplings
``u, v, w, y, z, m, n`` (innermost first), so every monomial is an
exponent tuple of length seven.  Coefficients are ``Fraction``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Mapping

VARS: tuple[str, ...] = ("u", "v", "w", "y", "z", "m", "n")
NVARS = len(VARS)
_INDEX = {name: i for i, name in enumerate(VARS)}
_ZERO_EXP = (0,) * NVARS

Exp = tuple  # tuple[int, ...] of length NVARS


def _order_key(e: Exp) -> tuple:
    # graded lexicographic: total degree first, then lex with u > v > ...
    return (sum(e), e)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class MultiPoly:
    """Immutable sparse polynomial ``{exponent tuple: Fraction}``.

    Zero coefficients are never stored, so structural equality of the term
    dictionaries is polynomial equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, Fraction] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != NVARS:
                        raise ValueError(f"exponent tuple must have length {NVARS}")
                    clean[tuple(e)] = _as_fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MultiPoly":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = _as_fraction(c)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MultiPoly":
        e = [0] * NVARS
        e[_INDEX[name]] = power
        return cls._raw({tuple(e): Fraction(1)})

    # ------------------------------------------------------------------
    # inspection

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(_ZERO_EXP, Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get(_ZERO_EXP, Fraction(0))

    @property
    def variables(self) -> tuple[str, ...]:
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return tuple(VARS[i] for i in sorted(used))

    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in one variable; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        if name is None:
            return max(sum(e) for e in self._terms)
        i = _INDEX[name]
        return max(e[i] for e in self._terms)

    def leading(self) -> tuple[Exp, Fraction]:
        e = max(self._terms, key=_order_key)
        return e, self._terms[e]

    def sorted_terms(self) -> list[tuple[Exp, Fraction]]:
        """Terms in print order: ascending total degree, u-heavy first within a degree."""
        return sorted(self._terms.items(), key=lambda ec: (sum(ec[0]), tuple(-k for k in ec[0])))

    # ------------------------------------------------------------------
    # arithmetic

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            return self
        if not self._terms:
            return o
        out = dict(self._terms)
        for e, c in o._terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly._raw({})
            return MultiPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return MultiPoly._raw({})
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, MultiPoly):
            if other.is_constant():
                return self / other.constant_value()
            from .polyfrac import PolyFrac

            return PolyFrac(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # ------------------------------------------------------------------
    # substitution and splitting

    def subs(self, values: Mapping[str, object]) -> "MultiPoly":
        """Substitute exact values for some variables, keeping the rest symbolic."""
        idx = {_INDEX[k]: _as_fraction(v) for k, v in values.items()}
        out: dict = {}
        for e, c in self._terms.items():
            coef = c
            e2 = list(e)
            for i, val in idx.items():
                if e[i]:
                    coef *= val ** e[i]
                    e2[i] = 0
            if coef:
                key = tuple(e2)
                out[key] = out.get(key, 0) + coef
        return MultiPoly._raw({e: c for e, c in out.items() if c})

    def evaluate(self, values: Mapping[str, object]):
        """Full evaluation.  Exact for rational inputs, float otherwise."""
        vals = [values.get(name, 0) for name in VARS]
        total = 0
        for e, c in self._terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term = term * v**k
            total = total + term
        return total

    def coefficients_in(self, name: str) -> dict[int, "MultiPoly"]:
        """Split by powers of one variable: ``{k: coefficient of name**k}``."""
        i = _INDEX[name]
        parts: dict[int, dict] = {}
        for e, c in self._terms.items():
            k = e[i]
            e2 = e[:i] + (0,) + e[i + 1:]
            parts.setdefault(k, {})[e2] = c
        return {k: MultiPoly._raw(t) for k, t in parts.items()}

    # ------------------------------------------------------------------
    # normalization

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self._terms:
            return Fraction(0)
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        return Fraction(reduce(math.gcd, nums, 0), reduce(_lcm, dens, 1))

    def normalized(self) -> "MultiPoly":
        """Integer-primitive associate with positive leading coefficient."""
        if not self._terms:
            return self
        scale = self.content()
        if self.leading()[1] < 0:
            scale = -scale
        if scale == 1:
            return self
        return self * (1 / scale)

    # ------------------------------------------------------------------
    # text

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            body = _format_term(e, abs(c))
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("-" if c < 0 else "+") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def format_monomial(e: Exp) -> str:
    factors = []
    for name, k in zip(VARS, e):
        if k == 1:
            factors.append(name)
        elif k > 1:
            factors.append(f"{name}^{k}")
    return "*".join(factors)


def _format_term(e: Exp, c: Fraction) -> str:
    mono = format_monomial(e)
    if not mono:
        return str(c)
    if c == 1:
        return mono
    return f"{c}*{mono}"


def symbols(names: str | Iterable[str]) -> tuple[MultiPoly, ...]:
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return tuple(MultiPoly.var(n) for n in names)


# ----------------------------------------------------------------------
# exact division and GCD


def divexact(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Quotient ``a / b``; raises ``ValueError`` if ``b`` does not divide ``a``."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if b.is_constant():
        return a / b.constant_value()
    eb, cb = b.leading()
    bterms = list(b._terms.items())
    rem = dict(a._terms)
    quot: dict = {}
    while rem:
        er = max(rem, key=_order_key)
        diff = tuple(x - y for x, y in zip(er, eb))
        if min(diff) < 0:
            raise ValueError("inexact multivariate division")
        q = rem[er] / cb
        quot[diff] = q
        for e2, c2 in bterms:
            key = tuple(x + y for x, y in zip(diff, e2))
            val = rem.get(key, 0) - q * c2
            if val:
                rem[key] = val
            else:
                rem.pop(key, None)
    return MultiPoly._raw(quot)


_ONE = MultiPoly.const(1)


def _to_univariate(p: MultiPoly, i: int) -> list[MultiPoly]:
    parts: dict[int, dict] = {}
    for e, c in p._terms.items():
        k = e[i]
        parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
    deg = max(parts)
    return [MultiPoly._raw(parts.get(k, {})) for k in range(deg + 1)]


def _from_univariate(coeffs: list[MultiPoly], i: int) -> MultiPoly:
    out: dict = {}
    for k, c in enumerate(coeffs):
        for e, v in c._terms.items():
            out[e[:i] + (k,) + e[i + 1:]] = v
    return MultiPoly._raw(out)


def _content_list(coeffs: list[MultiPoly]) -> MultiPoly:
    g = MultiPoly._raw({})
    for c in coeffs:
        if not c:
            continue
        g = gcd(g, c)
        if g.is_constant():
            return _ONE
    return g


def _strip(coeffs: list[MultiPoly]) -> list[MultiPoly]:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _prem(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    # pseudo-remainder of a by b (any nonzero scalar multiple is fine for GCD use)
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        lr = r[-1]
        r = [lb * c for c in r]
        for k, bc in enumerate(b):
            if bc:
                r[k + shift] = r[k + shift] - lr * bc
        r.pop()
        _strip(r)
    return r


def _primitive(coeffs: list[MultiPoly]) -> list[MultiPoly]:
    c = _content_list(coeffs)
    if c.is_constant():
        return coeffs
    return [divexact(x, c) for x in coeffs]


def _monomial_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    exps = list(a._terms) + list(b._terms)
    e = tuple(min(col) for col in zip(*exps))
    return MultiPoly._raw({e: Fraction(1)})


def gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor over Q[u, v, ...] by primitive remainder sequences.

    The result is integer-primitive with a positive leading coefficient; the
    gcd of two zero polynomials is zero.
    """
    if not a:
        return b.normalized()
    if not b:
        return a.normalized()
    if a.is_constant() or b.is_constant():
        return _ONE
    if len(a) == 1 or len(b) == 1:
        # a monomial can only share a monomial factor
        mono = a if len(a) == 1 else b
        other = b if mono is a else a
        return _monomial_gcd(mono, other)
    if a == b:
        return a.normalized()

    used_a = {i for e in a._terms for i, k in enumerate(e) if k}
    used_b = {i for e in b._terms for i, k in enumerate(e) if k}
    common = used_a & used_b
    # the gcd cannot involve a variable absent from either argument
    for i in sorted(used_a | used_b):
        if i not in common:
            # eliminate variables present in only one argument via content
            if i in used_a:
                return gcd(_content_list(_to_univariate(a, i)), b)
            return gcd(a, _content_list(_to_univariate(b, i)))

    i = min(common)
    ua = _to_univariate(a, i)
    ub = _to_univariate(b, i)
    ca = _content_list(ua)
    cb = _content_list(ub)
    c = gcd(ca, cb)
    if not ca.is_constant():
        ua = [divexact(x, ca) for x in ua]
    if not cb.is_constant():
        ub = [divexact(x, cb) for x in ub]
    if len(ua) < len(ub):
        ua, ub = ub, ua
    while len(ub) > 1:
        r = _prem(ua, ub)
        if not r:
            break
        ua, ub = ub, _primitive(r)
    else:
        # ub became a nonzero constant in the main variable: primitive parts coprime
        return c.normalized()
    g = _from_univariate(ub, i)
    return (c * g).normalized()
