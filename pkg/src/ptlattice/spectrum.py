"""Bound states, wavefunctions, parameter-plane scans and the weak-coupling probe."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .algebra import Poly
from .algebra.roots import count_roots, refine_root, squarefree_decomposition, squarefree_part, sturm_isolate
from .model import (
    RAW_NAMES,
    REDUCED_NAMES,
    RawParams,
    ReducedParams,
    embed,
    energy_of_t,
    phi_of_t,
    reduce,
    to_fraction,
)
from .secular import matching_matrix, secular_poly


class RankDeficiencyAmbiguous(ArithmeticError):
    """The matching matrix has a nullspace of dimension above one."""


class NoRootAboveOne(ValueError):
    pass


@dataclass(frozen=True)
class BoundState:
    t: float
    phi: float
    energy: float
    level: int
    multiplicity: int = 1
    bracket: tuple = ()

    @property
    def degenerate(self) -> bool:
        return self.multiplicity > 1

    def as_document(self) -> dict:
        return {
            "t": self.t,
            "phi": self.phi,
            "energy": self.energy,
            "level": self.level,
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class RootCensus:
    """Where the secular roots sit: physical ``t > 1``, spurious ``t <= 1``, complex."""

    physical: int
    spurious: int
    complex: int
    degree: int


def _numeric_secular(reduced: ReducedParams) -> Poly:
    if not reduced.is_numeric():
        raise TypeError("bound states need numeric couplings")
    return secular_poly(reduced).poly


def bound_states(reduced: ReducedParams | RawParams, tol: float = 1e-12) -> list[BoundState]:
    """All roots ``t > 1`` of the secular polynomial, ground state first."""
    if isinstance(reduced, RawParams):
        reduced = reduce(reduced)
    P = _numeric_secular(reduced)
    found = []
    for factor, mult in squarefree_decomposition(P):
        for br in sturm_isolate(factor, (Fraction(1), math.inf)):
            if factor.degree == 1:
                root = -Fraction(factor.coeff(0)) / Fraction(factor.coeff(1))
                br = (root, root)
            found.append((refine_root(factor, br, rel_tol=tol), mult, br))
    found.sort(key=lambda r: -r[0])
    return [
        BoundState(t, phi_of_t(t), energy_of_t(t), level, mult, br)
        for level, (t, mult, br) in enumerate(found)
    ]


def root_census(reduced: ReducedParams) -> RootCensus:
    P = _numeric_secular(reduced)
    phys = spur = real = 0
    for factor, mult in squarefree_decomposition(P):
        n_real = count_roots(factor)
        n_phys = count_roots(factor, Fraction(1), math.inf)
        real += mult * n_real
        phys += mult * n_phys
        spur += mult * count_roots(factor, Fraction(0), Fraction(1))
    # negative real roots count as neither; they cannot solve f^2 = (1+u) t with 1+u > 0
    return RootCensus(phys, spur, P.degree - real, P.degree)


# ----------------------------------------------------------------------
# wavefunctions


@dataclass(frozen=True)
class Wavefunction:
    """Tails ``psi_n = lam e^{(n+J) phi}`` (n <= -J) and ``rho e^{(J-1-n) phi}`` (n >= J-1)."""

    J: int
    phi: float
    lam: float
    rho: float
    interior: tuple  # psi_{-J+1} .. psi_{J-2}

    def __call__(self, n: int) -> float:
        if n <= -self.J:
            return self.lam * math.exp((n + self.J) * self.phi)
        if n >= self.J - 1:
            return self.rho * math.exp((self.J - 1 - n) * self.phi)
        return self.interior[n + self.J - 1]

    def values(self, sites: Sequence[int]) -> np.ndarray:
        return np.array([self(n) for n in sites])

    def as_document(self) -> dict:
        return {"lambda": self.lam, "rho": self.rho, "interior": list(self.interior)}


def wavefunction(params: ReducedParams | RawParams, state: BoundState, rank_tol: float = 1e-8) -> Wavefunction:
    """Null vector of the matching matrix at ``x = sqrt(t)``, scaled to max-abs 1.

    Reduced couplings are placed in the gauge with vanishing primed couplings.
    """
    raw = embed(params) if isinstance(params, ReducedParams) else params
    x = math.sqrt(state.t)
    m = matching_matrix(raw).at(x)
    _, s, vt = np.linalg.svd(m)
    scale = max(s[0], 1.0)
    null = int(np.sum(s <= rank_tol * scale))
    if null > 1:
        raise RankDeficiencyAmbiguous(f"nullspace dimension {null} at t={state.t}")
    vec = vt[-1]
    vec = vec / vec[np.argmax(np.abs(vec))]
    J = raw.J
    return Wavefunction(J, 0.5 * math.log(state.t), float(vec[0]), float(vec[-1]), tuple(float(v) for v in vec[1:-1]))


def recurrence_residual(params: ReducedParams | RawParams, wf: Wavefunction, energy: float, window: int = 40) -> float:
    """``max |(H psi - E psi)_n|`` over ``|n| <= window`` on the infinite lattice."""
    raw = embed(params) if isinstance(params, ReducedParams) else params
    worst = 0.0
    for n in range(-window, window + 1):
        p_up, _ = raw.bond_pair(n)
        _, q_down = raw.bond_pair(n - 1)
        row = (2.0 - energy) * wf(n) + float(-1 + p_up) * wf(n + 1) + float(-1 - q_down) * wf(n - 1)
        worst = max(worst, abs(row))
    return worst


# ----------------------------------------------------------------------
# parameter-plane scans


def _axis(lo, hi, step) -> tuple[Fraction, ...]:
    lo, hi, step = to_fraction(lo), to_fraction(hi), to_fraction(step)
    if step <= 0 or hi < lo:
        raise ValueError("grid needs step > 0 and hi >= lo")
    n = int((hi - lo) / step)
    return tuple(lo + k * step for k in range(n + 1))


@dataclass(frozen=True)
class PlaneSpec:
    """Two scanned parameters, the remaining ones fixed.

    Names are reduced (``u``, ``v``, ...) or, with ``raw=True``, raw (``a``,
    ``ap``, ``b``, ``bp``, ...).  Unlisted parameters default to zero.
    """

    J: int
    names: tuple[str, str]
    raw: bool = False
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        allowed = self.allowed_names()
        for name in list(self.names) + list(self.fixed):
            if name not in allowed:
                raise ValueError(f"unknown parameter {name!r} for J={self.J}")
        if self.names[0] == self.names[1]:
            raise ValueError("the two plane parameters must differ")

    def allowed_names(self) -> tuple[str, ...]:
        if self.raw:
            out = []
            for k in range(self.J):
                base = RAW_NAMES[k] if k < len(RAW_NAMES) else f"q{k + 1}"
                out += [base, base + "p"]
            return tuple(out)
        return tuple(REDUCED_NAMES[k] if k < len(REDUCED_NAMES) else f"p{k + 1}" for k in range(self.J))

    def point(self, a: Fraction, b: Fraction) -> RawParams | ReducedParams:
        vals = {name: Fraction(0) for name in self.allowed_names()}
        vals.update({k: to_fraction(v) for k, v in self.fixed.items()})
        vals[self.names[0]], vals[self.names[1]] = a, b
        order = self.allowed_names()
        if self.raw:
            return RawParams(tuple((vals[order[2 * k]], vals[order[2 * k + 1]]) for k in range(self.J)))
        return ReducedParams(tuple(vals[n] for n in order))


@dataclass
class DomainGrid:
    """Bound-state counts on a rectangular grid; ``counts[i, j]`` is at ``(xs[j], ys[i])``."""

    plane: PlaneSpec
    xs: tuple
    ys: tuple
    counts: np.ndarray
    complex_flag: np.ndarray
    singular: np.ndarray

    @property
    def step(self) -> tuple[float, float]:
        dx = float(self.xs[1] - self.xs[0]) if len(self.xs) > 1 else 0.0
        dy = float(self.ys[1] - self.ys[0]) if len(self.ys) > 1 else 0.0
        return dx, dy

    def to_csv(self) -> str:
        lines = ["param1,param2,count,complex_flag"]
        for i, y in enumerate(self.ys):
            for j, x in enumerate(self.xs):
                lines.append(f"{_fmt(x)},{_fmt(y)},{int(self.counts[i, j])},{int(self.complex_flag[i, j])}")
        return "\n".join(lines) + "\n"


def _fmt(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return repr(float(q))


def _count_cell(P: Poly) -> tuple[int, bool]:
    sf = squarefree_part(P)
    phys = count_roots(sf, Fraction(1), math.inf)
    real = sum(m * count_roots(q) for q, m in squarefree_decomposition(P))
    return phys, real < P.degree


class _CellEvaluator:
    """Counts roots ``t > 1`` per cell, substituting into a precomputed symbolic secular polynomial."""

    def __init__(self, plane: PlaneSpec):
        self.plane = plane
        self.symbolic = None
        if plane.J <= len(REDUCED_NAMES):
            self.symbolic = secular_poly(ReducedParams.symbolic(plane.J)).poly

    def __call__(self, a: Fraction, b: Fraction) -> tuple[int, bool, bool]:
        params = self.plane.point(a, b)
        if isinstance(params, RawParams):
            if params.singular:
                return 0, False, True
            params = reduce(params)
        if self.symbolic is not None:
            values = dict(zip(REDUCED_NAMES, params.values))
            P = Poly([c.evaluate(values) if hasattr(c, "evaluate") else c for c in self.symbolic.coeffs])
        else:
            P = secular_poly(params).poly
        n, cplx = _count_cell(P)
        return n, cplx, False

    def row(self, args) -> list[tuple[int, bool, bool]]:
        xs, y = args
        return [self(x, y) for x in xs]


def domain_scan(
    plane: PlaneSpec,
    xrange: tuple,
    yrange: tuple,
    step,
    ystep=None,
    workers: int = 1,
) -> DomainGrid:
    """Exact bound-state counts over a grid of the plane.

    Cells on singular raw lines (a vanishing hopping) count zero and are
    marked in ``singular``.  With ``workers > 1`` rows go to a process pool;
    results are placed by row index, so output does not depend on scheduling.
    """
    xs = _axis(xrange[0], xrange[1], step)
    ys = _axis(yrange[0], yrange[1], ystep if ystep is not None else step)
    ev = _CellEvaluator(plane)
    jobs = [(xs, y) for y in ys]
    if workers > 1 and len(ys) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(ev.row, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        rows = [ev.row(job) for job in jobs]
    counts = np.array([[c for c, _, _ in r] for r in rows], dtype=int)
    cplx = np.array([[f for _, f, _ in r] for r in rows], dtype=bool)
    sing = np.array([[s for _, _, s in r] for r in rows], dtype=bool)
    return DomainGrid(plane, xs, ys, counts, cplx, sing)


def boundary_extract(grid: DomainGrid, levels: Optional[Sequence[int]] = None) -> dict[int, list[np.ndarray]]:
    """Marching-squares polylines between cells with count ``< k`` and ``>= k``.

    Returns ``{k: [array of (x, y) points, ...]}`` in parameter coordinates.
    """
    from skimage.measure import find_contours

    counts = grid.counts.astype(float)
    if levels is None:
        levels = range(1, int(counts.max()) + 1) if counts.size else ()
    x0, y0 = float(grid.xs[0]), float(grid.ys[0])
    dx, dy = grid.step
    out: dict[int, list[np.ndarray]] = {}
    for k in levels:
        lines = []
        if counts.shape[0] > 1 and counts.shape[1] > 1 and counts.min() < k <= counts.max():
            for c in find_contours(counts, k - 0.5):
                lines.append(np.column_stack([x0 + c[:, 1] * dx, y0 + c[:, 0] * dy]))
        out[k] = lines
    return out


# ----------------------------------------------------------------------
# weak-coupling probe


@dataclass(frozen=True)
class ProbeResult:
    J: int
    direction: tuple
    lambdas: tuple
    t0: tuple  # None where no root t > 1 exists
    residuals: tuple
    slope: Optional[float]
    phi0_coefficient: Optional[float]
    E0_coefficient: Optional[float]
    linear_coefficients: tuple
    failures: tuple = ()

    @property
    def exact(self) -> bool:
        """All residuals vanish to rounding (no quadratic correction to fit)."""
        return all(r is not None and abs(r) < 1e-13 for r in self.residuals)

    def as_document(self) -> dict:
        return {
            "J": self.J,
            "direction": [str(d) for d in self.direction],
            "lambdas": list(self.lambdas),
            "t0": list(self.t0),
            "residuals": list(self.residuals),
            "slope": self.slope,
            "phi0_coefficient": self.phi0_coefficient,
            "E0_coefficient": self.E0_coefficient,
            "linear_coefficients": list(self.linear_coefficients),
            "failures": list(self.failures),
        }


def perturbative_probe(J: int, direction: Sequence, lambdas: Sequence[float], coefficients: Optional[Sequence] = None) -> ProbeResult:
    """Largest root ``t_0`` along ``lambda * direction`` and its deviation from the linear law.

    The linear law is ``t_0 ~ 1 + sum c_k value_k`` with ``c = (1, 2, 2, ...)``.
    The slope of ``log|residual|`` against ``log lambda`` measures the order of
    the first correction; ``phi_0 / lambda`` and ``E_0 / lambda^2`` are
    reported at the smallest ``lambda``.
    """
    direction = tuple(to_fraction(d) for d in direction)
    if len(direction) != J:
        raise ValueError(f"direction needs {J} components")
    coefficients = tuple(coefficients) if coefficients is not None else (1,) + (2,) * (J - 1)
    lin = sum(c * float(d) for c, d in zip(coefficients, direction))
    t0s, res, fails = [], [], []
    for lam in lambdas:
        lam_q = to_fraction(lam)
        states = bound_states(ReducedParams(tuple(lam_q * d for d in direction)))
        if not states:
            t0s.append(None)
            res.append(None)
            fails.append(float(lam))
            continue
        t0 = states[0].t
        t0s.append(t0)
        res.append(t0 - (1.0 + lin * float(lam)))
    good = [(float(l), abs(r)) for l, r in zip(lambdas, res) if r is not None and abs(r) > 1e-14]
    slope = None
    if len(good) >= 2:
        lx, ly = np.log([g[0] for g in good]), np.log([g[1] for g in good])
        slope = float(np.polyfit(lx, ly, 1)[0])
    phi0 = E0 = None
    pairs = [(float(l), t) for l, t in zip(lambdas, t0s) if t is not None]
    if pairs:
        l_min, t_min = min(pairs)
        phi0 = phi_of_t(t_min) / l_min
        E0 = energy_of_t(t_min) / l_min**2
    return ProbeResult(J, direction, tuple(float(l) for l in lambdas), tuple(t0s), tuple(res), slope, phi0, E0, coefficients, tuple(fails))
