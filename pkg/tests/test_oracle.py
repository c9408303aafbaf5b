from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ptlattice.model import RawParams, ReducedParams, build_truncated, embed
from ptlattice.oracle import (
    char_eval,
    char_exact,
    chebyshev_u,
    compare,
    convergence_study,
    count_below,
    eigen_below_continuum,
    truncated_det_relation,
)
from ptlattice.spectrum import bound_states

coupling = st.fractions(min_value=Fraction(-9, 10), max_value=3, max_denominator=10)


def R(*vals) -> ReducedParams:
    return ReducedParams(tuple(Fraction(v) for v in vals))


@given(st.lists(coupling, min_size=1, max_size=3), st.fractions(min_value=-3, max_value=5, max_denominator=7))
def test_recurrence_matches_dense_determinant(values, E):
    h = build_truncated(embed(ReducedParams(tuple(values))), len(values) + 3)
    dense = h.dense() - float(E) * np.eye(h.dim)
    sign, logmag = char_eval(h, float(E))
    det = np.linalg.det(dense)
    exact = char_exact(h, E)
    assert int(exact > 0) - int(exact < 0) == int(det > 0) - int(det < 0) or abs(det) < 1e-9
    if exact:
        assert math.exp(logmag) == pytest.approx(abs(float(exact)), rel=1e-9)
        assert sign == (1 if exact > 0 else -1)


@given(st.lists(coupling, min_size=1, max_size=3))
def test_sturm_count_matches_eigvals(values):
    h = build_truncated(embed(ReducedParams(tuple(values))), len(values) + 4)
    ev = np.sort(np.linalg.eigvals(h.dense()).real)
    for E in (-1.0, 0.5, 2.0, 3.7):
        if np.min(np.abs(ev - E)) > 1e-9:
            assert count_below(h, E) == int(np.sum(ev < E))


@given(st.lists(coupling, min_size=1, max_size=3), st.integers(0, 4), st.fractions(min_value=Fraction(11, 10), max_value=4, max_denominator=10))
def test_exact_truncation_relation(values, extra, x):
    r = ReducedParams(tuple(values))
    lhs, rhs = truncated_det_relation(r, r.J + 1 + extra, x)
    assert lhs == rhs


def test_chebyshev_closed_form():
    x = Fraction(3, 2)
    for L in range(6):
        assert chebyshev_u(L, x) == (x ** (L + 1) - x ** (-L - 1)) / (x - 1 / x)


def test_fig3_eigenvalues_match():
    c = compare(R(17, 6, 5), 60)
    assert c.ok(1e-8)
    assert len(c.secular) == 3


def test_eigen_search_finds_all_bound_states():
    r = R(Fraction(3, 2), Fraction(1, 2), 2)
    h = build_truncated(embed(r), 80)
    found = eigen_below_continuum(h)
    assert len(found) == len(bound_states(r))


def test_convergence_rate_is_log_t():
    rep = convergence_study(R(3), [6, 8, 10, 12, 14])
    (rate,), (expected,) = rep.rates, rep.expected_rates
    assert expected == pytest.approx(math.log(4))
    assert rate == pytest.approx(expected, rel=0.05)
    assert rep.to_csv().splitlines()[0] == "N,E,diff"


def test_slow_states_are_flagged():
    rep = convergence_study(R(Fraction(1, 100)), [20, 40])
    assert rep.slow == (True,)
    assert rep.warnings


def test_raw_parameters_go_through():
    raw = RawParams(((Fraction(-2), Fraction(0)), (Fraction(1, 2), Fraction(1, 2))))
    assert compare(raw, 60).ok(1e-8)
