import pytest

import ctgame

PRELUDE = r"""
def add : Pi (m:N) Pi (n:N) N := \m:N. \n:N. natrec([k] N, m, [i, r] succ r, n)
def five := (\x:N. succ x) 4
def seven : N := add 3 4
def lhs : Pi (x:N) N := \x:N. (\y:N. succ y) x
def rhs : Pi (x:N) N := \x:N. succ x
def two : Pi (x:N) N := \x:N. 2
"""


def test_eval_numerals():
    assert ctgame.eval_nat(PRELUDE, "five") == 5
    assert ctgame.eval_nat(PRELUDE, "seven") == 7
    assert ctgame.eval_nat("def a := 3\ndef b := succ a") == 4
    with pytest.raises(ctgame.CtgError):
        ctgame.eval_nat(PRELUDE, "two")


def test_check_reports_types():
    names = dict(ctgame.check(PRELUDE))
    assert names["five"] == "N"
    assert names["lhs"].startswith("Pi")


def test_ill_typed_raises():
    with pytest.raises(ctgame.IllTypedError):
        ctgame.check("def bad := top : N")


def test_equality_verdicts():
    ok, text = ctgame.equal(PRELUDE, "lhs", "rhs")
    assert ok and text == "equal-to-depth 8"
    ok, text = ctgame.equal(PRELUDE, "lhs", "two", depth=6)
    assert not ok and text.startswith("distinct")


def test_derive_rules_names_computation():
    assert "Π-Comp" in ctgame.derive_rules("|- (\\x:N. succ x) 4 = 5 : N")


def test_prf_eval_big_ints():
    assert ctgame.prf_eval(0, [10**30]) == 0


def test_suite_filter_and_ct():
    rs = ctgame.run_suite("pazo,compose")
    assert [r["id"] for r in rs] == ["compose", "pazo"]
    assert all(r["pass"] for r in rs)
    ok, text = ctgame.ct_report(4)
    assert ok and "const7" in text
