from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ptlattice.model import (
    RawParams,
    ReducedParams,
    SingularParameters,
    build_truncated,
    embed,
    energy_of_t,
    params_from_document,
    parse_pairs,
    parse_values,
    phi_of_t,
    pt_check,
    reduce,
    reduce_checked,
    t_of_energy,
    to_fraction,
)
from ptlattice.oracle import char_exact

fractions = st.fractions(min_value=-3, max_value=3, max_denominator=20)
raw_pairs = st.lists(st.tuples(fractions, fractions), min_size=1, max_size=4)


def test_reduction_formula():
    raw = RawParams(((Fraction(1, 2), Fraction(3)), (Fraction(-1), Fraction(0))))
    assert reduce(raw).values == (Fraction(1), Fraction(1))


@given(st.lists(fractions, min_size=1, max_size=5))
def test_embed_then_reduce_is_identity(values):
    r = ReducedParams(tuple(values))
    assert reduce(embed(r)) == r


@given(raw_pairs, st.integers(0, 3), fractions)
def test_gauge_invariance_of_truncated_determinant(pairs, k, E):
    raw = RawParams(tuple(pairs))
    k = k % raw.J
    # move pair k along its orbit (1 - p)(1 + p') = const
    p, q = raw.pairs[k]
    if p == 1:
        return
    p2 = p / 2 + Fraction(1, 2) if p != Fraction(1, 3) else Fraction(1, 5)
    q2 = (1 - p) * (1 + q) / (1 - p2) - 1
    moved = list(raw.pairs)
    moved[k] = (p2, q2)
    other = RawParams(tuple(moved))
    assert reduce(other) == reduce(raw)
    N = raw.J + 3
    assert char_exact(build_truncated(raw, N), E) == char_exact(build_truncated(other, N), E)


@given(raw_pairs)
def test_truncated_is_pt_symmetric(pairs):
    h = build_truncated(RawParams(tuple(pairs)), len(pairs) + 2)
    assert pt_check(h)
    d = h.dense(dtype=object)
    n = h.dim
    assert all(d[i, j] == d[n - 1 - j, n - 1 - i] for i in range(n) for j in range(n))


def test_bond_layout():
    raw = RawParams(((Fraction(1, 10), Fraction(2, 10)), (Fraction(3, 10), Fraction(4, 10))))
    h = build_truncated(raw, 4)
    # array index i is site i - N; central bond (-1, 0) carries the innermost pair
    assert h.sup[3] == -1 + Fraction(1, 10) and h.sub[3] == -1 - Fraction(2, 10)
    assert h.sup[2] == -1 + Fraction(3, 10) and h.sup[4] == -1 + Fraction(3, 10)
    assert h.sup[0] == -1 and h.sub[6] == -1
    assert h.dim == 8


def test_truncation_needs_room():
    with pytest.raises(ValueError):
        build_truncated(RawParams.free(3), 3)


def test_singular_lines():
    raw = RawParams(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1))))
    assert raw.singular == (0, 1)
    with pytest.raises(SingularParameters):
        reduce_checked(raw)
    assert reduce(raw).values == (Fraction(-1), Fraction(-1))


@given(st.floats(min_value=1.0001, max_value=1e6))
def test_energy_map_round_trip(t):
    E = energy_of_t(t)
    assert E < 0
    assert t_of_energy(E) == pytest.approx(t, rel=1e-9)
    assert phi_of_t(t) == pytest.approx(0.5 * math.log(t))


def test_energy_map_rejects_continuum():
    with pytest.raises(ValueError):
        t_of_energy(0.5)


def test_parsing_helpers():
    assert to_fraction("0.05") == Fraction(1, 20)
    assert to_fraction("-3/4") == Fraction(-3, 4)
    assert parse_values("17,6,5") == (17, 6, 5)
    assert parse_pairs("0.5,0;-1,2") == ((Fraction(1, 2), 0), (-1, 2))
    doc = {"J": 2, "mode": "raw", "pairs": [[0.5, 0], [-1, 2]]}
    assert isinstance(params_from_document(doc), RawParams)
    with pytest.raises(ValueError):
        params_from_document({"J": 3, "mode": "reduced", "values": [1, 2]})


def test_symbolic_params():
    r = ReducedParams.symbolic(3)
    assert r.names == ("u", "v", "w")
    assert not r.is_numeric()
    assert len(r.others()) == 2
