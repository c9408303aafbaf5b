"""Couplings, truncated lattice Hamiltonians and the energy map.

Sites are labelled by integers with the partition between ``-1`` and ``0``.
Coupling pair ``k`` (innermost ``k = 1``) sits on the bond ``(-k, -k+1)`` and
on its mirror image ``(k-2, k-1)``; the bond ``(n, n+1)`` carries
``-1 + p_k`` above the diagonal and ``-1 - p'_k`` below it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import MultiPoly

REDUCED_NAMES: tuple[str, ...] = ("u", "v", "w", "y", "z", "m", "n")
RAW_NAMES: tuple[str, ...] = ("a", "b", "c", "d", "e", "f", "g")


class SingularParameters(ValueError):
    """Raw couplings on the lines ``p = 1`` or ``p' = -1``."""


def to_fraction(value) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float (via its repr)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(str(value).strip())


def reduced_name(k: int) -> str:
    """Name of the ``k``-th reduced coupling (0-based, innermost first)."""
    return REDUCED_NAMES[k] if k < len(REDUCED_NAMES) else f"p{k + 1}"


def raw_names(k: int) -> tuple[str, str]:
    base = RAW_NAMES[k] if k < len(RAW_NAMES) else f"q{k + 1}"
    return base, base + "p"


@dataclass(frozen=True)
class RawParams:
    """The ``2J`` raw couplings as pairs ``(p_k, p'_k)``, innermost first."""

    pairs: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("J must be at least 1")
        object.__setattr__(
            self, "pairs", tuple((to_fraction(p), to_fraction(q)) for p, q in self.pairs)
        )

    @classmethod
    def free(cls, J: int) -> "RawParams":
        return cls(((Fraction(0), Fraction(0)),) * J)

    @property
    def J(self) -> int:
        return len(self.pairs)

    @property
    def singular(self) -> tuple[int, ...]:
        """Indices of pairs with ``1 - p = 0`` or ``1 + p' = 0``."""
        return tuple(k for k, (p, q) in enumerate(self.pairs) if p == 1 or q == -1)

    def bond_pair(self, n: int) -> tuple[Fraction, Fraction]:
        """Couplings on the bond between sites ``n`` and ``n + 1``."""
        k = -n if n < 0 else n + 2
        if k > self.J:
            return Fraction(0), Fraction(0)
        return self.pairs[k - 1]


@dataclass(frozen=True)
class ReducedParams:
    """Reduced couplings ``(u, v, w, ...)``; entries may be numbers or ``MultiPoly``."""

    values: tuple

    def __post_init__(self):
        if not self.values:
            raise ValueError("J must be at least 1")
        object.__setattr__(
            self,
            "values",
            tuple(v if isinstance(v, MultiPoly) else to_fraction(v) for v in self.values),
        )

    @classmethod
    def symbolic(cls, J: int) -> "ReducedParams":
        if J > len(REDUCED_NAMES):
            raise ValueError(f"symbolic couplings are named only up to J={len(REDUCED_NAMES)}")
        return cls(tuple(MultiPoly.var(REDUCED_NAMES[k]) for k in range(J)))

    @property
    def J(self) -> int:
        return len(self.values)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(reduced_name(k) for k in range(self.J))

    def is_numeric(self) -> bool:
        return not any(isinstance(v, MultiPoly) for v in self.values)

    def with_symbolic_u(self) -> "ReducedParams":
        return ReducedParams((MultiPoly.var("u"),) + self.values[1:])

    def others(self) -> tuple:
        return self.values[1:]

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.values))


def reduce(raw: RawParams) -> ReducedParams:
    """``value_k = (1 - p_k)(1 + p'_k) - 1`` for every pair."""
    return ReducedParams(tuple((1 - p) * (1 + q) - 1 for p, q in raw.pairs))


def reduce_checked(raw: RawParams) -> ReducedParams:
    """``reduce`` for pipelines that need a nondegenerate coupling on every bond."""
    if raw.singular:
        names = ", ".join(raw_names(k)[0] for k in raw.singular)
        raise SingularParameters(f"singular raw couplings on pair(s) {names}")
    return reduce(raw)


def embed(reduced: ReducedParams) -> RawParams:
    """Canonical gauge: every primed coupling is zero, ``p_k = -value_k``."""
    if not reduced.is_numeric():
        raise TypeError("embedding needs numeric couplings")
    return RawParams(tuple((-v, Fraction(0)) for v in reduced.values))


@dataclass(frozen=True)
class TruncatedHamiltonian:
    """Finite ``2N``-site section, sites ``-N .. N-1``, with exact entries.

    ``sup[i]`` is ``H[i, i+1]`` and ``sub[i]`` is ``H[i+1, i]`` in array index
    order (array index ``i`` is site ``i - N``).
    """

    N: int
    diag: tuple
    sup: tuple
    sub: tuple

    @property
    def dim(self) -> int:
        return len(self.diag)

    @property
    def sites(self) -> range:
        return range(-self.N, self.N)

    def dense(self, dtype=float) -> np.ndarray:
        h = np.zeros((self.dim, self.dim), dtype=dtype if dtype is not None else object)
        for i, d in enumerate(self.diag):
            h[i, i] = d
        for i, (a, b) in enumerate(zip(self.sup, self.sub)):
            h[i, i + 1] = a
            h[i + 1, i] = b
        return h

    def bond_products(self) -> tuple:
        return tuple(a * b for a, b in zip(self.sup, self.sub))


def build_truncated(raw: RawParams, N: int) -> TruncatedHamiltonian:
    if N <= raw.J:
        raise ValueError(f"half-width N={N} must exceed J={raw.J}")
    diag = (Fraction(2),) * (2 * N)
    sup, sub = [], []
    for n in range(-N, N - 1):
        p, q = raw.bond_pair(n)
        sup.append(-1 + p)
        sub.append(-1 - q)
    return TruncatedHamiltonian(N, diag, tuple(sup), tuple(sub))


def pt_check(h: TruncatedHamiltonian) -> bool:
    """Antidiagonal reflection symmetry ``H[i, j] == H[s(j), s(i)]``, ``s(i) = dim-1-i``."""
    d, a, b = h.diag, h.sup, h.sub
    return (
        all(x == y for x, y in zip(d, reversed(d)))
        and all(x == y for x, y in zip(a, reversed(a)))
        and all(x == y for x, y in zip(b, reversed(b)))
    )


# ----------------------------------------------------------------------
# energy map: t = exp(2 phi) = x^2, E = 2 - (x + 1/x)


def energy_of_t(t: float) -> float:
    x = math.sqrt(t)
    return 2.0 - (x + 1.0 / x)


def phi_of_t(t: float) -> float:
    return 0.5 * math.log(t)


def t_of_energy(E: float) -> float:
    """Inverse of ``energy_of_t`` on ``E < 0``, picking the decaying branch ``t > 1``."""
    s = 2.0 - E
    if s <= 2.0:
        raise ValueError("energy must lie below the continuum (E < 0)")
    x = 0.5 * (s + math.sqrt((s - 2.0) * (s + 2.0)))
    return x * x


def parse_values(text: str | Sequence) -> tuple[Fraction, ...]:
    if isinstance(text, str):
        return tuple(to_fraction(s) for s in text.split(",") if s.strip())
    return tuple(to_fraction(s) for s in text)


def parse_pairs(text: str | Sequence) -> tuple[tuple[Fraction, Fraction], ...]:
    """``"a,ap;b,bp"`` or a nested sequence of pairs."""
    if isinstance(text, str):
        chunks = [c for c in text.split(";") if c.strip()]
        pairs = [parse_values(c) for c in chunks]
    else:
        pairs = [parse_values(p) for p in text]
    if any(len(p) != 2 for p in pairs):
        raise ValueError("each raw pair needs exactly two numbers")
    return tuple((p[0], p[1]) for p in pairs)


def params_from_document(doc: dict) -> RawParams | ReducedParams:
    """Read the flat parameter document ``{J, mode, pairs | values}``."""
    mode = doc.get("mode", "reduced")
    if mode == "raw":
        params = RawParams(parse_pairs(doc["pairs"]))
    elif mode == "reduced":
        params = ReducedParams(parse_values(doc["values"]))
    else:
        raise ValueError(f"unknown parameter mode {mode!r}")
    if "J" in doc and int(doc["J"]) != params.J:
        raise ValueError(f"J={doc['J']} does not match {params.J} supplied couplings")
    return params
