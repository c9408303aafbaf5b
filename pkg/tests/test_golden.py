from __future__ import annotations

from ptlattice import golden
from ptlattice.algebra import Poly, PolyFrac
from ptlattice.cli import golden_checks


def test_fixture_keys():
    keys = set(golden.keys())
    for J in (2, 3, 4):
        assert f"secular_J{J}" in keys
    for J in (1, 2, 3, 4, 7):
        assert {f"f{J}_num", f"f{J}_den"} <= keys
    assert {"A0", "B1", "A1", "B2_tilde", "A2_tilde", "B2", "A2"} <= keys


def test_multiline_entries_join():
    p = golden.poly("f7_den")
    assert isinstance(p, Poly) and p.degree == 5
    assert golden.poly("secular_J4").degree == 6


def test_scalar_entries_have_no_t():
    for key in ("A1", "B2_tilde", "A2"):
        c = golden.scalar(key)
        assert "t" not in str(c)
    assert isinstance(golden.scalar("A2"), PolyFrac)


def test_all_fixtures_but_b2_match():
    checks = {c["check"]: c for c in golden_checks()}
    bad = [k for k, c in checks.items() if not c["ok"]]
    assert bad == ["golden:B2"]
    assert checks["golden:B2"]["note"] == "matches with the opposite overall sign"
