import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from avkernel.coeff import QQ, AdicCoeff
from avkernel.errors import ContractViolation, NotAUnit
from avkernel.literals import parse_adic
from strategies import adics, precisions, units

T = sympy.Symbol("t")


def adic(text, N):
    return parse_adic(text, N)


def sympy_inverse(a: AdicCoeff):
    """Oracle: Taylor coefficients of 1/a(t) computed by sympy."""
    p = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * T**k for k, c in enumerate(a.coeffs))
    s = sympy.series(1 / p, T, 0, a.precision).removeO()
    return [QQ(str(s.coeff(T, k))) for k in range(a.precision)]


def test_ring_examples():
    assert adic("1 + t", 3) * adic("1 - t", 3) == adic("1 - t^2", 3)
    a = adic("2 - 1/3*t^2", 4)
    assert a + AdicCoeff.zero(4) == a
    assert adic("1 + t", 2) * adic("1 + t", 2) == adic("1 + 2*t", 2)


def test_ord_examples():
    assert adic("t^2 + t^3", 5).ord() == 2
    assert AdicCoeff.zero(5).ord() >= 5
    assert adic("3", 5).ord() == 0


def test_invert_examples():
    assert adic("1 - t", 3).invert_unit() == adic("1 + t + t^2", 3)
    assert AdicCoeff.one(4).invert_unit() == AdicCoeff.one(4)
    assert adic("2 + t", 2).invert_unit() == adic("1/2 - 1/4*t", 2)


def test_residue_examples():
    assert adic("3 + 5*t", 3).residue() == 3
    assert adic("t", 3).residue() == 0
    assert AdicCoeff.zero(3).residue() == 0


def test_invert_non_unit():
    with pytest.raises(NotAUnit):
        adic("t + t^2", 4).invert_unit()


def test_mixed_precision_rejected():
    with pytest.raises(ContractViolation):
        adic("1", 3) + adic("1", 4)


def test_printing():
    assert str(adic("1 - 1/2*t", 3)) == "1 - 1/2*t (mod t^3)"
    assert str(AdicCoeff.zero(2)) == "0 (mod t^2)"


@given(st.data())
def test_inverse_matches_sympy(data):
    N = data.draw(st.integers(1, 6))
    u = data.draw(units(N))
    assert list(u.invert_unit().coeffs) == sympy_inverse(u)


@given(st.data())
def test_ring_laws(data):
    N = data.draw(precisions)
    a, b, c = (data.draw(adics(N)) for _ in range(3))
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == AdicCoeff.zero(N)


@given(st.data())
def test_ord_is_a_valuation(data):
    N = data.draw(precisions)
    a, b = data.draw(adics(N)), data.draw(adics(N))
    assert (a + b).ord() >= min(a.ord(), b.ord())
    assert (a * b).ord() == min(N, a.ord() + b.ord())


@given(st.data())
def test_unit_inverse(data):
    N = data.draw(precisions)
    u = data.draw(units(N))
    assert u * u.invert_unit() == AdicCoeff.one(N)
    assert u ** -2 * u**2 == AdicCoeff.one(N)


@given(st.data())
def test_shift_and_divide(data):
    N = data.draw(st.integers(2, 8))
    k = data.draw(st.integers(0, N - 1))
    a = data.draw(adics(N))
    shifted = a.shift(k)
    assert shifted == a * AdicCoeff.t(N, k)
    assert shifted.divide_t(k) == a.with_precision(N - k)


@given(adics())
def test_literal_round_trip(a):
    assert parse_adic(str(a)) == a
