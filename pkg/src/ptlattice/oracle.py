"""Brute-force cross-checks on finite sections of the lattice.

The truncated Hamiltonian has hard walls at both ends.  A bound state with
``t = e^{2 phi}`` feels the walls through its tails only, so truncated
eigenvalues approach the exact ones like ``t^{-N}``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .model import RawParams, ReducedParams, TruncatedHamiltonian, build_truncated, embed, reduce
from .secular import matching_matrix, _det_exact
from .spectrum import bound_states


def _as_raw(params: RawParams | ReducedParams) -> RawParams:
    return embed(params) if isinstance(params, ReducedParams) else params


def _float_arrays(h: TruncatedHamiltonian) -> tuple[np.ndarray, np.ndarray]:
    d = np.array([float(v) for v in h.diag])
    c = np.array([float(v) for v in h.bond_products()])
    return d, c


def char_eval(h: TruncatedHamiltonian, E):
    """Sign and log-magnitude of ``det(H - E)`` by the three-term recurrence.

    ``E`` may be a float, a numpy array (evaluated elementwise) or a
    ``Fraction``; the last case runs in exact arithmetic.  The pair of
    running minors is rescaled every step, so large sizes do not overflow.
    """
    if isinstance(E, (Fraction, int)) and not isinstance(E, bool):
        det = char_exact(h, Fraction(E))
        if det == 0:
            return 0, -math.inf
        return (1 if det > 0 else -1), math.log(abs(det.numerator)) - math.log(det.denominator)
    d, c = _float_arrays(h)
    E = np.asarray(E, dtype=float)
    prev = np.ones_like(E)
    cur = d[0] - E
    logmag = np.zeros_like(E)
    for k in range(1, len(d)):
        prev, cur = cur, (d[k] - E) * cur - c[k - 1] * prev
        scale = np.maximum(np.abs(cur), np.abs(prev))
        scale = np.where(scale > 0, scale, 1.0)
        prev, cur = prev / scale, cur / scale
        logmag += np.log(scale)
    sign = np.sign(cur)
    with np.errstate(divide="ignore"):
        logmag = logmag + np.log(np.abs(cur))
    if sign.ndim == 0:
        return int(sign), float(logmag)
    return sign.astype(int), logmag


def char_exact(h: TruncatedHamiltonian, E: Fraction) -> Fraction:
    """Exact ``det(H - E)`` for a rational ``E``."""
    c = h.bond_products()
    prev, cur = Fraction(1), h.diag[0] - E
    for k in range(1, h.dim):
        prev, cur = cur, (h.diag[k] - E) * cur - c[k - 1] * prev
    return cur


def count_below(h: TruncatedHamiltonian, E) -> np.ndarray | int:
    """Number of eigenvalues below ``E`` (Sturm count).

    Valid when every bond product is positive: the matrix is then similar to
    a real symmetric tridiagonal one and its spectrum is real.
    """
    d, c = _float_arrays(h)
    if np.any(c <= 0):
        raise ValueError("Sturm counting needs positive bond products")
    E = np.asarray(E, dtype=float)
    tiny = np.finfo(float).tiny
    q = d[0] - E
    count = (q < 0).astype(int)
    with np.errstate(over="ignore"):
        # a pivot at +-inf is harmless: the next ratio is zero
        for k in range(1, len(d)):
            q = np.where(q == 0, tiny, q)
            q = (d[k] - E) - c[k - 1] / q
            count += q < 0
    return int(count) if count.ndim == 0 else count


def gershgorin_floor(h: TruncatedHamiltonian) -> float:
    d = np.array([float(v) for v in h.diag])
    up = np.abs([float(v) for v in h.sup])
    lo = np.abs([float(v) for v in h.sub])
    radius = np.zeros_like(d)
    radius[:-1] += up
    radius[1:] += lo
    return float(np.min(d - radius))


def eigen_below_continuum(
    h: TruncatedHamiltonian,
    E_window: Optional[tuple[float, float]] = None,
    samples: int = 2000,
    tol: float = 1e-12,
) -> list[float]:
    """Real eigenvalues in ``E_window`` (default: Gershgorin floor up to ``-1e-9``).

    Sign changes of ``det(H - E)`` on a uniform sample are bisected to
    ``tol``.  This misses eigenvalues of even multiplicity and pairs closer
    than the sample spacing; when all bond products are positive the Sturm
    count catches such misses and the search falls back to count bisection.
    """
    lo, hi = E_window if E_window is not None else (gershgorin_floor(h) - 1e-3, -1e-9)
    if not hi < 0:
        raise ValueError("the window must lie below the continuum")
    grid = np.linspace(lo, hi, samples)
    sign, _ = char_eval(h, grid)
    roots = [float(e) for e, s in zip(grid, sign) if s == 0]
    idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if len(idx):
        a, b = grid[idx].copy(), grid[idx + 1].copy()
        sa = sign[idx].copy()
        for _ in range(200):
            if np.max(b - a) <= tol:
                break
            m = 0.5 * (a + b)
            sm, _ = char_eval(h, m)
            left = sm == sa
            a = np.where(left, m, a)
            b = np.where(left, b, m)
        roots += [float(v) for v in 0.5 * (a + b)]
    roots.sort()
    if all(c > 0 for c in h.bond_products()):
        expected = count_below(h, hi) - count_below(h, lo)
        if expected != len(roots):
            roots = _count_bisection(h, lo, hi, expected, tol)
    return roots


def _count_bisection(h: TruncatedHamiltonian, lo: float, hi: float, n: int, tol: float) -> list[float]:
    base = count_below(h, lo)
    out = []
    for k in range(n):
        a, b = lo, hi
        # the (base + k + 1)-th eigenvalue lies where the count first exceeds base + k
        while b - a > tol:
            m = 0.5 * (a + b)
            if m in (a, b):
                break
            if count_below(h, m) > base + k:
                b = m
            else:
                a = m
        out.append(0.5 * (a + b))
    return out


# ----------------------------------------------------------------------
# comparisons with the exact spectrum


@dataclass(frozen=True)
class Comparison:
    N: int
    secular: tuple
    oracle: tuple
    diffs: tuple  # per secular state, None if unmatched
    unmatched_oracle: tuple

    @property
    def max_diff(self) -> float:
        vals = [d for d in self.diffs if d is not None]
        return max(vals) if vals else 0.0

    def ok(self, tol: float = 1e-8) -> bool:
        return not self.unmatched_oracle and all(d is not None and d < tol for d in self.diffs)


def compare(params: RawParams | ReducedParams, N: int, match_tol: float = 1e-8, floor: float = -1e-6, samples: int = 2000) -> Comparison:
    """Match truncated eigenvalues below ``floor`` against the secular energies."""
    raw = _as_raw(params)
    states = bound_states(reduce(raw))
    h = build_truncated(raw, N)
    found = eigen_below_continuum(h, (gershgorin_floor(h) - 1e-3, min(floor, -1e-9)), samples=samples)
    return _match(N, [s.energy for s in states], found, match_tol, floor)


def _match(N, secular, found, match_tol, floor) -> Comparison:
    left = list(found)
    diffs = []
    for e in secular:
        if not left:
            diffs.append(None)
            continue
        j = int(np.argmin([abs(f - e) for f in left]))
        diffs.append(abs(left[j] - e))
        left.pop(j)
    stray = tuple(f for f in left if f < floor and all(abs(f - e) > match_tol for e in secular))
    return Comparison(N, tuple(secular), tuple(found), tuple(diffs), stray)


@dataclass
class OracleReport:
    Ns: tuple
    secular_t: tuple
    secular_energies: tuple
    comparisons: list
    rates: tuple  # fitted decay rate per state (per unit N), None if not fittable
    expected_rates: tuple  # ln t per state
    slow: tuple  # states whose truncation error at the largest N still exceeds 1e-8
    warnings: list = field(default_factory=list)

    def as_document(self) -> dict:
        return {
            "N": list(self.Ns),
            "secular": [
                {"t": t, "energy": e, "rate": r, "expected_rate": x, "slow": s}
                for t, e, r, x, s in zip(self.secular_t, self.secular_energies, self.rates, self.expected_rates, self.slow)
            ],
            "runs": [
                {"N": c.N, "eigenvalues": list(c.oracle), "diffs": list(c.diffs), "unmatched": list(c.unmatched_oracle)}
                for c in self.comparisons
            ],
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_document(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "E", "diff"])
        for c in self.comparisons:
            for e, d in zip(self.secular_energies, c.diffs):
                w.writerow([c.N, repr(e), "" if d is None else repr(d)])
        return buf.getvalue()


def convergence_study(params: RawParams | ReducedParams, Ns: Sequence[int], floor: float = -1e-6, noise: float = 1e-13) -> OracleReport:
    """Truncated eigenvalues for several ``N`` and the fitted convergence rate.

    The rate is the slope of ``-log(diff)`` against ``N``, fitted over the
    diffs above ``noise``; the tail argument predicts ``ln t``.
    """
    if len(Ns) < 2:
        raise ValueError("need at least two truncation sizes")
    raw = _as_raw(params)
    states = bound_states(reduce(raw))
    energies = [s.energy for s in states]
    comps = []
    for N in Ns:
        h = build_truncated(raw, N)
        found = eigen_below_continuum(h, (gershgorin_floor(h) - 1e-3, min(floor, -1e-9)))
        comps.append(_match(N, energies, found, 1e-6, floor))
    rates, expected, slow, warnings = [], [], [], []
    for i, s in enumerate(states):
        pts = [(c.N, c.diffs[i]) for c in comps if c.diffs[i] is not None and c.diffs[i] > noise]
        rate = None
        if len(pts) >= 2 and len({p[0] for p in pts}) >= 2:
            rate = float(-np.polyfit([p[0] for p in pts], np.log([p[1] for p in pts]), 1)[0])
        rates.append(rate)
        expected.append(math.log(s.t))
        is_slow = (max(Ns) - raw.J) * math.log(s.t) < math.log(1e8)
        slow.append(is_slow)
        if is_slow:
            warnings.append(f"state t={s.t:.6g} converges slowly (rate ln t = {math.log(s.t):.3g} per site); use larger N")
    return OracleReport(tuple(Ns), tuple(s.t for s in states), tuple(energies), comps, tuple(rates), tuple(expected), tuple(slow), warnings)


# ----------------------------------------------------------------------
# exact link between the truncated and the matching determinants


def chebyshev_u(L: int, x: Fraction) -> Fraction:
    """Determinant of the ``L x L`` free block, ``(x^{L+1} - x^{-L-1}) / (x - 1/x)``."""
    prev, cur = Fraction(1), x + 1 / x
    if L == 0:
        return prev
    for _ in range(L - 1):
        prev, cur = cur, (x + 1 / x) * cur - prev
    return cur


def truncated_det_relation(params: RawParams | ReducedParams, N: int, x) -> tuple[Fraction, Fraction]:
    """Both sides of ``det(H_N - E) = U_L^2 det(M_L)`` at ``E = 2 - x - 1/x``.

    ``L = N - J`` free sites sit outside the coupled block on each side and
    ``M_L`` is the matching matrix with both corners set to
    ``x + 1/x - U_{L-1}/U_L``; as ``L`` grows this corner tends to ``x``.
    """
    raw = _as_raw(params)
    x = Fraction(x)
    L = N - raw.J
    h = build_truncated(raw, N)
    lhs = char_exact(h, 2 - x - 1 / x)
    uL, uL1 = chebyshev_u(L, x), chebyshev_u(L - 1, x) if L >= 1 else Fraction(0)
    corner = x + 1 / x - uL1 / uL
    m = matching_matrix(raw).at(x, dtype=object)
    m[0, 0] = corner
    m[-1, -1] = corner
    rhs = uL * uL * _det_exact(m.tolist())
    return lhs, rhs
