from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from ptlattice import golden
from ptlattice.algebra import MultiPoly, Poly, count_roots, parse_expr
from ptlattice.model import REDUCED_NAMES, ReducedParams
from ptlattice.secular import secular_poly
from ptlattice.sturmian import (
    DegenerateStep,
    JFraction,
    f_rational,
    f_symbolic,
    factorize,
    jfraction,
    partial_fractions,
    shape_classify,
    sturmian_coupling,
)

coupling = st.fractions(min_value=Fraction(-9, 10), max_value=4, max_denominator=10)
t = Poly.x()
u = MultiPoly.var("u")


@pytest.fixture(scope="module")
def fs():
    return {J: f_symbolic(J) for J in range(1, 8)}


def same(a, b) -> bool:
    return a - b == 0


# ----------------------------------------------------------------------
# closed forms


@pytest.mark.parametrize("J", [1, 2, 3, 4])
def test_f_closed_forms(fs, J):
    assert fs[J].N == golden.poly(f"f{J}_num")
    assert fs[J].D == golden.poly(f"f{J}_den")


@pytest.mark.parametrize("J", [3, 4])
def test_partial_fraction_closed_forms(fs, J):
    pf = partial_fractions(fs[J])
    assert same(pf.A0, golden.scalar(f"f{J}_pf_A0"))
    assert pf.R == golden.poly(f"f{J}_pf_R")
    assert pf.D == golden.poly(f"f{J}_pf_D")
    # f = t - A0 - R/D
    assert (t - Poly([pf.A0])) * pf.D - pf.R == fs[J].N


def test_f7_up_to_sign(fs):
    for key, got in (("f7_num", fs[7].N), ("f7_den", fs[7].D)):
        want = golden.poly(key)
        assert got == want or got == -want


def test_f3_pole_residue(fs):
    pf = partial_fractions(fs[3])
    (pole, res), = pf.residues
    assert same(pole, MultiPoly.var("w"))
    assert same(res, -(1 + MultiPoly.var("v")) * MultiPoly.var("w"))


def test_jfraction_low_coefficients(fs):
    j4 = jfraction(fs[4])
    for key, got in zip(("A0", "B1", "A1", "B2_tilde", "A2_tilde"), (j4.A[0], j4.B[0], j4.A[1], j4.B[1], j4.A[2])):
        assert same(got, golden.scalar(key)), key
    assert same(jfraction(fs[6], depth=3).A[2], golden.scalar("A2"))


def test_b2_closed_form(fs):
    # frozen from an independent sympy expansion of f_5
    b2 = jfraction(fs[5], depth=3).B[1]
    assert same(b2, parse_expr("-(1+w)*(y^2-(1+y)*w*z)/w^2"))
    assert same(b2.subs({"z": 0}), golden.scalar("B2_tilde"))


# ----------------------------------------------------------------------
# structural identities


@pytest.mark.parametrize("J", range(2, 7))
def test_factorization_identity(fs, J):
    f = fs[J]
    assert f.N * f.N - t * (1 + u) * f.D * f.D == secular_poly(ReducedParams.symbolic(J)).poly
    assert f.N.degree == J - 1 and f.D.degree == J - 2


def test_j1_identity_carries_extra_t(fs):
    f = fs[1]
    assert f.N * f.N - t * (1 + u) * f.D * f.D == t * secular_poly(ReducedParams.symbolic(1)).poly


@pytest.mark.parametrize("J", range(2, 8))
def test_outermost_coupling_off_reduces_J(fs, J):
    assert fs[J].subs({REDUCED_NAMES[J - 1]: 0}).same_as(fs[J - 1])


@pytest.mark.parametrize("J", range(2, 7))
def test_jfraction_round_trip_symbolic(fs, J):
    jf = jfraction(fs[J])
    assert len(jf.A) == J - 1 and len(jf.B) == J - 2
    assert jf.to_ratfunc().same_as(fs[J])


@pytest.mark.parametrize("J", range(3, 6))
def test_untilded_coefficients_are_stable(fs, J):
    small, big = jfraction(fs[J]), jfraction(fs[J + 1], depth=J - 1)
    for (kind, k, a), (_, _, b) in zip(small.interleaved(), big.interleaved()):
        if not small.is_tilded(kind, k):
            assert same(a, b), (kind, k)


def test_tilde_positions():
    jf = JFraction(A=(0, 0, 0), B=(0, 0), tilde_from=3, J=4)
    assert [jf.is_tilded(k, i) for k, i, _ in jf.interleaved()] == [False, False, False, True, True]


@given(st.lists(coupling, min_size=1, max_size=4))
def test_jfraction_round_trip_numeric(others):
    f = f_rational(tuple(others))
    try:
        jf = jfraction(f)
    except DegenerateStep:
        assume(False)
    assert jf.to_ratfunc().same_as(f)


@given(st.lists(coupling, min_size=1, max_size=4), st.fractions(min_value=Fraction(11, 10), max_value=20, max_denominator=10))
def test_sturmian_coupling_makes_t_a_root(others, t0):
    f = f_rational(tuple(others))
    assume(f.D(t0) != 0)
    u0 = sturmian_coupling(t0, f)
    P = secular_poly(ReducedParams((u0,) + tuple(others))).poly
    assert P(t0) == 0


def test_factorize_rejects_numeric_u():
    from ptlattice.sturmian import FactorizationFailed

    with pytest.raises(FactorizationFailed):
        factorize(secular_poly(ReducedParams((Fraction(1), Fraction(2)))))


# ----------------------------------------------------------------------
# shapes


def test_fig3_shape():
    f = f_rational((Fraction(6), Fraction(5)))
    sc = shape_classify(f)
    assert sc.j3_shape == "/+/"
    assert sc.poles == (5.0,)
    assert [i.parity for i in sc.intervals] == ["full-range", "full-range"]
    assert sum(i.guaranteed_intersections for i in sc.intervals) == 2
    P = secular_poly(ReducedParams((Fraction(17), Fraction(6), Fraction(5)))).poly
    assert count_roots(P, 0, math.inf) == 4


def test_spike_shape_alone_does_not_fix_root_count():
    sc = shape_classify(f_rational((Fraction(1), Fraction(1))))
    assert sc.j3_shape == "/+/"
    P = secular_poly(ReducedParams((Fraction(0), Fraction(1), Fraction(1)))).poly
    assert count_roots(P) == 2


def test_cap_cup_shape():
    sc = shape_classify(f_rational((Fraction(-3, 2), Fraction(1))))
    assert sc.j3_shape == "cap+cup"


@given(st.lists(coupling, min_size=2, max_size=3))
def test_parity_matches_end_signs(others):
    f = f_rational(tuple(others))
    sc = shape_classify(f)
    for iv in sc.intervals:
        lo = iv.lo if iv.lo != -math.inf else -1e6
        hi = iv.hi if iv.hi != math.inf else 1e6
        if hi - lo < 1e-4 or (sc.zeros and min(abs(z - x) for z in sc.zeros for x in (lo, hi)) < 1e-5):
            continue
        a = float(f(Fraction(lo + 1e-7 * max(1.0, abs(lo)))))
        b = float(f(Fraction(hi - 1e-7 * max(1.0, abs(hi)))))
        assert ((a > 0) != (b > 0)) == (iv.parity == "full-range")


@given(st.lists(coupling, min_size=2, max_size=3), st.fractions(min_value=Fraction(-9, 10), max_value=10, max_denominator=10))
def test_positive_zero_guarantees_two_intersections(others, u0):
    f = f_rational(tuple(others))
    sc = shape_classify(f)
    P = secular_poly(ReducedParams((u0,) + tuple(others))).poly
    for iv in sc.intervals:
        if iv.guaranteed_intersections:
            lo = Fraction(iv.lo) if iv.lo != -math.inf else -math.inf
            hi = Fraction(iv.hi) if iv.hi != math.inf else math.inf
            # count_roots counts (lo, hi]; poles are not roots of P when 1+u != 0
            assert count_roots(P, lo, hi) >= 2
