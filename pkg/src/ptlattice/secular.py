"""Matching conditions and the secular polynomial in ``t = exp(2 phi)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import LaurentPoly, MultiPoly, Poly
from .model import RawParams, ReducedParams, embed


class OddExponentFound(RuntimeError):
    """The matching determinant contained an odd power of ``x``."""


@dataclass(frozen=True)
class MatchingMatrix:
    """Tridiagonal ``2J x 2J`` matching matrix.

    Corners carry ``x``, interior diagonal entries ``x + 1/x``.  ``sup``/``sub``
    list the off-diagonal entries from the top-left corner, so the outermost
    pair appears first and last.
    """

    J: int
    sup: tuple
    sub: tuple

    @property
    def dim(self) -> int:
        return 2 * self.J

    @property
    def bond_products(self) -> tuple:
        # (-1 + p)(-1 - p') = 1 + value
        return tuple(a * b for a, b in zip(self.sup, self.sub))

    def diagonal_at(self, x):
        inner = x + 1 / x
        return [x] + [inner] * (self.dim - 2) + [x]

    def at(self, x, dtype=float) -> np.ndarray:
        """Dense numeric matrix at a given ``x``."""
        m = np.zeros((self.dim, self.dim), dtype=dtype)
        for i, d in enumerate(self.diagonal_at(x)):
            m[i, i] = d
        for i, (a, b) in enumerate(zip(self.sup, self.sub)):
            m[i, i + 1] = a
            m[i + 1, i] = b
        return m


def _bond_order(J: int) -> list[int]:
    # pair index (0 = innermost) on each bond, read from the top-left corner
    return [abs(i - (J - 1)) for i in range(2 * J - 1)]


def matching_matrix(params: RawParams | ReducedParams) -> MatchingMatrix:
    """Matching matrix for raw couplings, or for reduced ones in the canonical gauge.

    Symbolic reduced couplings are placed as ``sup = -1 - value``, ``sub = -1``,
    the same gauge ``embed`` uses for numbers.
    """
    if isinstance(params, ReducedParams):
        if params.is_numeric():
            params = embed(params)
        else:
            order = _bond_order(params.J)
            sup = tuple(-1 - params.values[k] for k in order)
            sub = (Fraction(-1),) * len(order)
            return MatchingMatrix(params.J, sup, sub)
    order = _bond_order(params.J)
    sup = tuple(-1 + params.pairs[k][0] for k in order)
    sub = tuple(-1 - params.pairs[k][1] for k in order)
    return MatchingMatrix(params.J, sup, sub)


def _bond_products(reduced: ReducedParams, keep_u_symbolic: bool) -> list:
    values = reduced.with_symbolic_u().values if keep_u_symbolic else reduced.values
    return [1 + values[k] for k in _bond_order(reduced.J)]


def secular_laurent(reduced: ReducedParams, keep_u_symbolic: bool = False) -> LaurentPoly:
    """Matching determinant as a Laurent polynomial in ``x = exp(phi)``.

    Uses the continuant recursion ``D_k = d_k D_{k-1} - c_k D_{k-2}`` where
    ``c_k`` is the product of the two off-diagonal entries on bond ``k``.
    """
    x = LaurentPoly.monomial(1)
    inner = x + LaurentPoly.monomial(-1)
    products = _bond_products(reduced, keep_u_symbolic)
    dim = 2 * reduced.J
    prev, cur = LaurentPoly(0, [Fraction(1)]), x
    for k in range(1, dim):
        d = x if k == dim - 1 else inner
        prev, cur = cur, d * cur - products[k - 1] * prev
    for k, _ in cur.items():
        if k % 2:
            raise OddExponentFound(f"odd power x^{k} in the J={reduced.J} determinant")
    return cur


@dataclass(frozen=True)
class SecularPoly:
    """Monic secular polynomial in ``t`` and the power of ``t`` used to clear poles."""

    J: int
    poly: Poly
    prefactor_power: int

    def __str__(self) -> str:
        return str(self.poly)

    def as_document(self) -> dict:
        return {
            "J": self.J,
            "prefactor_power": self.prefactor_power,
            "coefficients": [str(c) for c in self.poly.coeffs],
            "text": str(self.poly),
        }


def laurent_to_t(lp: LaurentPoly, s: int | None = None) -> tuple[Poly, int]:
    """Substitute ``t = x^2`` and multiply by ``t^s``; returns (poly, s).

    ``s`` defaults to the smallest power that clears the negative exponents.
    """
    low_t = lp.low // 2
    s = max(0, -low_t) if s is None else max(s, -low_t)
    coeffs = [Fraction(0)] * ((lp.high // 2) + s + 1)
    for k, c in lp.items():
        coeffs[k // 2 + s] = c
    return Poly(coeffs), s


def secular_poly(reduced: ReducedParams, keep_u_symbolic: bool = False) -> SecularPoly:
    # fixed t^(J-2): a vanishing outermost coupling must not lower the degree
    poly, s = laurent_to_t(secular_laurent(reduced, keep_u_symbolic), max(0, reduced.J - 2))
    poly = poly.monic()
    if all(not isinstance(c, MultiPoly) or c.is_constant() for c in poly.coeffs):
        poly = poly.to_numeric()
    return SecularPoly(reduced.J, poly, s)


def secular_eval_direct(params: RawParams | ReducedParams, x):
    """Determinant of the dense matching matrix by Gaussian elimination.

    Exact for a rational ``x`` (general elimination over ``Fraction``, no use
    of the tridiagonal structure); floating point otherwise.
    """
    mm = matching_matrix(params)
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if not x:
            raise ZeroDivisionError("x must be nonzero")
        a = mm.at(x, dtype=object).tolist()
        return _det_exact(a)
    return float(np.linalg.det(mm.at(float(x))))


def _det_exact(a: list[list]) -> Fraction:
    n = len(a)
    a = [[Fraction(v) for v in row] for row in a]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det
