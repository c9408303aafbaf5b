from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from ptlattice.model import RawParams, ReducedParams, embed
from ptlattice.secular import secular_poly
from ptlattice.spectrum import (
    PlaneSpec,
    bound_states,
    boundary_extract,
    domain_scan,
    perturbative_probe,
    recurrence_residual,
    root_census,
    wavefunction,
)

coupling = st.fractions(min_value=Fraction(-9, 10), max_value=3, max_denominator=20)


def R(*vals) -> ReducedParams:
    return ReducedParams(tuple(Fraction(v) for v in vals))


def test_j1_closed_form():
    # t = 1 + u, and the tails decay with ratio sqrt(t) on each side
    (s,) = bound_states(R(3))
    assert s.t == 4.0
    assert s.energy == pytest.approx(2 - 2 - 0.5)
    assert bound_states(R(Fraction(-1, 2))) == []
    wf = wavefunction(R(3), s)
    assert wf.lam / wf.rho == pytest.approx(2.0)


def test_j2_ground_state():
    (s, *rest) = bound_states(R(3, 1))
    # t^2 - 6 t + 1
    assert s.t == pytest.approx(3 + 2 * math.sqrt(2), rel=1e-14)
    assert rest == []


def test_fig3_states():
    states = bound_states(R(17, 6, 5))
    assert [round(s.t, 4) for s in states] == [30.9526, 7.624, 1.3447]
    assert [s.level for s in states] == [0, 1, 2]
    assert states[0].energy < states[1].energy < states[2].energy < 0


def test_census_counts_every_root():
    c = root_census(R(17, 6, 5))
    assert (c.physical, c.complex, c.degree) == (3, 0, 4)
    assert c.spurious == 1


def test_degenerate_root_reports_multiplicity():
    # u = -1, v = 2 gives (t - 2)^2
    states = bound_states(R(-1, 2))
    assert [s.multiplicity for s in states] == [2]
    assert states[0].t == 2.0


@given(st.lists(coupling, min_size=1, max_size=4))
def test_states_are_roots_above_one(values):
    r = ReducedParams(tuple(values))
    P = secular_poly(r).poly
    states = bound_states(r)
    assert all(s.t > 1 for s in states)
    assert sum(s.multiplicity for s in states) == root_census(r).physical
    scale = max(float(abs(c)) for c in P.coeffs)
    for s in states:
        assert abs(float(P(Fraction(s.t)))) <= 1e-8 * scale * s.t ** P.degree


@given(st.lists(coupling, min_size=1, max_size=4))
def test_wavefunction_solves_recurrence(values):
    r = ReducedParams(tuple(values))
    for s in bound_states(r):
        assume(s.t > 1.05 and not s.degenerate)
        wf = wavefunction(r, s)
        assert recurrence_residual(r, wf, s.energy, window=40) < 1e-8


def test_gauge_changes_do_not_move_energies():
    raw = RawParams(((Fraction(1, 2), Fraction(3)), (Fraction(-1, 4), Fraction(1, 3))))
    other = embed(ReducedParams(tuple((1 - p) * (1 + q) - 1 for p, q in raw.pairs)))
    assert [s.t for s in bound_states(raw)] == [s.t for s in bound_states(other)]
    for s in bound_states(raw):
        assert recurrence_residual(raw, wavefunction(raw, s), s.energy) < 1e-10


# ----------------------------------------------------------------------
# scans


def test_domain_scan_j1_small():
    plane = PlaneSpec(1, ("a", "ap"), raw=True)
    grid = domain_scan(plane, ("-2", "2"), ("-2", "2"), "0.25")
    a = np.array([float(x) for x in grid.xs])[None, :]
    ap = np.array([float(y) for y in grid.ys])[:, None]
    assert np.array_equal(grid.counts, ((1 - a) * (1 + ap) > 1).astype(int))
    assert grid.singular[:, list(grid.xs).index(1)].all()
    lines = boundary_extract(grid)
    assert set(lines) == {1} and lines[1]
    csv = grid.to_csv().splitlines()
    assert csv[0] == "param1,param2,count,complex_flag"
    assert len(csv) == 1 + grid.counts.size


def test_domain_scan_workers_agree():
    plane = PlaneSpec(2, ("u", "v"))
    one = domain_scan(plane, ("-3", "6"), ("-3", "3"), "0.5")
    many = domain_scan(plane, ("-3", "6"), ("-3", "3"), "0.5", workers=2)
    assert np.array_equal(one.counts, many.counts)
    assert np.array_equal(one.complex_flag, many.complex_flag)


def test_j2_complex_flag_region():
    plane = PlaneSpec(2, ("u", "v"))
    grid = domain_scan(plane, ("-3", "6"), ("-3", "3"), "0.5")
    for i, v in enumerate(grid.ys):
        for j, u in enumerate(grid.xs):
            disc = (1 + u + 2 * v) ** 2 - 4 * v * v
            assert bool(grid.complex_flag[i, j]) == (disc < 0)


def test_plane_validation():
    with pytest.raises(ValueError):
        PlaneSpec(2, ("u", "w"))
    with pytest.raises(ValueError):
        PlaneSpec(2, ("u", "u"))
    assert PlaneSpec(2, ("a", "bp"), raw=True).allowed_names() == ("a", "ap", "b", "bp")


def test_fixed_parameters_enter_points():
    plane = PlaneSpec(3, ("u", "v"), fixed={"w": Fraction(5)})
    assert plane.point(Fraction(17), Fraction(6)) == R(17, 6, 5)


# ----------------------------------------------------------------------
# weak coupling


def test_probe_j3_slope():
    probe = perturbative_probe(3, (1, 1, 1), [1e-2, 5e-3, 2.5e-3, 1.25e-3])
    assert probe.slope == pytest.approx(2.0, abs=0.3)
    assert probe.phi0_coefficient == pytest.approx(2.5, rel=0.02)
    assert probe.E0_coefficient == pytest.approx(-6.25, rel=0.02)


def test_probe_j1_is_exact():
    probe = perturbative_probe(1, (1,), [1e-2, 1e-3])
    assert probe.exact and probe.slope is None


@pytest.mark.parametrize("J", [4, 5, 6, 7])
def test_small_positive_couplings_bind(J):
    assert bound_states(ReducedParams((Fraction(1, 1000),) * J))
