from __future__ import annotations

import random
from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from ptlattice.model import REDUCED_NAMES, RawParams, ReducedParams, reduce
from ptlattice.secular import (
    matching_matrix,
    secular_eval_direct,
    secular_laurent,
    secular_poly,
)

fractions = st.fractions(min_value=-2, max_value=4, max_denominator=12)


def sympy_secular(J: int):
    """Secular polynomial from a sympy determinant, built independently."""
    x, t = sympy.symbols("x t")
    names = sympy.symbols(" ".join(REDUCED_NAMES[:J]))
    names = names if isinstance(names, tuple) else (names,)
    n = 2 * J
    m = sympy.zeros(n, n)
    for i in range(n):
        m[i, i] = x if i in (0, n - 1) else x + 1 / x
    for i in range(n - 1):
        k = abs(i - (J - 1))
        m[i, i + 1] = -(1 + names[k])
        m[i + 1, i] = -1
    det = sympy.expand(m.det(method="berkowitz"))
    low = min(sympy.Poly(sympy.expand(det * x ** (2 * n)), x).monoms())[0] - 2 * n
    p = sympy.expand(det * x ** (-low))
    p = sympy.Poly(p, x)
    assert all(e % 2 == 0 for (e,) in p.monoms())
    q = sympy.Poly(sum(c * t ** (e // 2) for (e,), c in p.terms()), t)
    return sympy.expand(q.as_expr() / q.LC())


def ours_in_sympy(P):
    syms = {s: sympy.Symbol(s) for s in REDUCED_NAMES + ("t",)}
    return sympy.expand(sympy.sympify(str(P).replace("^", "**"), locals=syms))


def test_symbolic_secular_matches_sympy_determinant():
    for J in (1, 2, 3, 4):
        ours = ours_in_sympy(secular_poly(ReducedParams.symbolic(J)).poly)
        assert sympy.expand(ours - sympy_secular(J)) == 0, J


def test_only_even_powers_of_x():
    for J in range(1, 9):
        lp = secular_laurent(ReducedParams.symbolic(J) if J <= 7 else ReducedParams((Fraction(1, 3),) * J))
        assert all(k % 2 == 0 for k, _ in lp.items())


def test_degrees():
    assert secular_poly(ReducedParams.symbolic(1)).poly.degree == 1
    for J in range(2, 8):
        assert secular_poly(ReducedParams.symbolic(J)).poly.degree == 2 * J - 2


@given(st.lists(fractions, min_size=1, max_size=5), st.fractions(min_value=Fraction(1, 7), max_value=5, max_denominator=7))
def test_recursion_equals_dense_determinant(values, x):
    r = ReducedParams(tuple(values))
    assert secular_laurent(r)(x) == secular_eval_direct(r, x)


@given(st.lists(st.tuples(fractions, fractions), min_size=1, max_size=4), st.fractions(min_value=Fraction(1, 5), max_value=3, max_denominator=5))
def test_raw_determinant_depends_on_reduced_values_only(pairs, x):
    raw = RawParams(tuple(pairs))
    assert secular_eval_direct(raw, x) == secular_eval_direct(reduce(raw), x)


def test_numeric_specialization_commutes():
    rng = random.Random(3)
    for J in (2, 3, 4, 5):
        sym = secular_poly(ReducedParams.symbolic(J)).poly
        for _ in range(5):
            vals = tuple(Fraction(rng.randint(-9, 30), rng.randint(1, 9)) for _ in range(J))
            num = secular_poly(ReducedParams(vals)).poly
            assert sym.subs(dict(zip(REDUCED_NAMES, vals))).to_numeric() == num


def test_fig3_quartic():
    P = secular_poly(ReducedParams((Fraction(17), Fraction(6), Fraction(5)))).poly
    assert [int(c) for c in P.coeffs] == [25, -340, 291, -40, 1]


def test_matching_matrix_layout():
    mm = matching_matrix(ReducedParams((Fraction(1), Fraction(2), Fraction(3))))
    assert mm.dim == 6
    assert mm.bond_products == (4, 3, 2, 3, 4)
    m = mm.at(2.0)
    assert m[0, 0] == 2.0 and m[5, 5] == 2.0 and m[2, 2] == 2.5
