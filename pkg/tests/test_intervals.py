from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import iv

from partineq.errors import InvalidSpec, PrecisionExhausted
from partineq.expr import IndexMap, compile_expr
from partineq.intervals import (
    RealInterval,
    decide_or_raise,
    escalate,
    precision_ladder,
    working_precision,
)


def test_ladder():
    assert list(precision_ladder(64, 1024)) == [64, 128, 256, 512, 1024]


def test_working_precision_restores():
    before = iv.prec
    with working_precision(300):
        assert iv.prec == 300
    assert iv.prec == before


def test_point_and_exact_endpoints():
    r = RealInterval.point(Fraction(1, 3), 64)
    assert r.lo_exact <= Fraction(1, 3) <= r.hi_exact
    assert r.lo_exact < r.hi_exact
    x = RealInterval.point(5)
    assert x.lo_exact == x.hi_exact == 5
    assert x.compare(4) == 1 and x.compare(6) == -1 and x.compare(5) == 0


def test_decimal_bounds_round_outward():
    r = RealInterval.point(Fraction(2, 3), 128)
    lo, hi = r.decimal_bounds(10)
    assert Fraction(lo) <= Fraction(2, 3) <= Fraction(hi)
    assert r.as_dict()["rounding"] == "outward"


def test_directed_float_conversion():
    r = RealInterval.point(Fraction(1, 10), 200)
    assert Fraction(r.lo_float()) <= r.lo_exact
    assert Fraction(r.hi_float()) >= r.hi_exact


def test_escalate_and_raise():
    out, bits = escalate(lambda b: True if b >= 256 else None, 64, 1024)
    assert (out, bits) == (True, 256)
    assert escalate(lambda b: None, 64, 256) == (None, 256)
    with pytest.raises(PrecisionExhausted):
        decide_or_raise(lambda b: None, 64, 128)


def test_decimal_literal_is_enclosed_not_rounded():
    m = IndexMap.from_expr("0.1")
    r = m.at(1, 64)
    assert r.lo_exact < Fraction(1, 10) < r.hi_exact


def test_expr_params_and_errors():
    m = IndexMap.from_expr("k*n + 1", {"k": "3/2"})
    assert m.at(4).contains(7)
    for bad in ("__import__('os')", "n.real", "foo(n)", "x + 1", "sqrt(n, 2)", "'a'"):
        with pytest.raises(InvalidSpec):
            compile_expr(bad)
    with pytest.raises(InvalidSpec):
        IndexMap.from_expr("k", {"k": "n + 1"})


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=5000),
       st.sampled_from(["pi/6*sqrt(24*n - 1)", "log(n + 1)**2/(2*log(2))", "exp(sqrt(n)/7)", "cbrt(n)/3"]))
def test_nesting_under_precision_increase(n, src):
    m = IndexMap.from_expr(src)
    coarse, fine = m.at(n, 64), m.at(n, 256)
    assert coarse.contains_interval(fine)
    assert fine.width <= coarse.width


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6))
def test_point_encloses_rational(q):
    for bits in (53, 64, 200):
        assert RealInterval.point(q, bits).contains(q)
