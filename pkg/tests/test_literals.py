import pytest
from hypothesis import given
from hypothesis import strategies as st

from avkernel.coeff import QQ, AdicCoeff
from avkernel.errors import ParseError
from avkernel.hahn import HahnSeries
from avkernel.literals import (
    parse_adic,
    parse_hahn,
    parse_kseries,
    parse_laurent,
    parse_series,
    tokenize,
)
from avkernel.valfield import LaurentElem
from strategies import adics, hahns, laurents, series


def test_adic_literal():
    a = parse_adic("1 - 1/2*t + 3*t^2 (mod t^3)")
    assert a == AdicCoeff([1, QQ(-1, 2), 3], 3)
    assert parse_adic("(1 + t)^2", 2) == AdicCoeff([1, 2], 2)
    assert parse_adic("t^5 (mod t^3)").is_zero()


def test_series_literal():
    f = parse_series("(1 - 1/2*t)*Y1^2*Y2 + t*Y2 (mod t^8)")
    assert f.nvars == 2 and f.precision == 8
    assert f.coefficient((2, 1)) == parse_adic("1 - 1/2*t", 8)
    assert parse_series("Y1 (mod t^2, n=3)").nvars == 3


def test_laurent_literal():
    a = parse_laurent("t^-2*(3 + 5*t) (mod t^8)")
    assert a.valuation == -2 and a.precision == 8 and co_of(a) == 3
    z = parse_laurent("O(t^5)")
    assert z.is_zero() and z.absolute_precision() == 5
    assert parse_laurent("0").is_exact_zero()


def co_of(a):
    return a.leading_coefficient()


def test_kseries_extracts_t_power():
    c0, h = parse_kseries("t^-1*Y1 + 2 (mod t^4)")
    assert c0 == LaurentElem.t_power(-1, 4)
    assert h == parse_series("Y1 + 2*t (mod t^4)")


def test_hahn_literal():
    a = parse_hahn("2*t^{1/2} + t + 3*t^2 (cutoff 4)")
    assert a == HahnSeries({QQ(1, 2): 2, 1: 1, 2: 3}, 4)
    assert parse_hahn("t^{-1/2} (cutoff 1)").valuation == QQ(-1, 2)


@pytest.mark.parametrize(
    "parser, text",
    [
        (parse_adic, "1 + t"),  # no precision
        (parse_adic, "t^-1 (mod t^3)"),
        (parse_adic, "Y1 (mod t^3)"),
        (parse_adic, "t^{1/2} (mod t^3)"),
        (parse_adic, "1 + (mod t^3)"),
        (parse_adic, "1/0 (mod t^3)"),
        (parse_series, "Y2 (mod t^3, n=1)"),
        (parse_series, "Y1^-1 (mod t^3)"),
        (parse_series, "Z (mod t^3)"),
        (parse_hahn, "t^{1/2}"),  # no cutoff
        (parse_laurent, "1 + t"),
        (parse_adic, "1 @ t (mod t^3)"),
    ],
)
def test_parse_errors(parser, text):
    with pytest.raises(ParseError):
        parser(text)


def test_error_position():
    with pytest.raises(ParseError) as info:
        tokenize("1 +\n  $")
    assert (info.value.line, info.value.column) == (2, 3)


@given(adics())
def test_adic_round_trip(a):
    assert parse_adic(str(a)) == a


@given(st.integers(1, 3).flatmap(lambda n: series(n, 4)))
def test_series_round_trip(f):
    assert parse_series(str(f)) == f


@given(laurents())
def test_laurent_round_trip(a):
    assert parse_laurent(str(a)) == a


@given(hahns())
def test_hahn_round_trip(a):
    assert parse_hahn(str(a)) == a
