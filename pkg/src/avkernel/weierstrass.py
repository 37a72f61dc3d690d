"""Weierstrass division and preparation in A<Y>, regularization by T_d, and the
univariate dominant-index normal form over K."""

from __future__ import annotations

from dataclasses import dataclass

from .coeff import AdicCoeff
from .errors import CannotRegularize, ContractViolation, NotRegular, PrecisionExhausted
from .series import RestrictedSeries, is_regular_in_last, monic_divrem, td_transform
from .valfield import LaurentElem


@dataclass(frozen=True)
class PreparationResult:
    unit: RestrictedSeries
    monic: RestrictedSeries
    degree: int


@dataclass(frozen=True)
class UnivariateNormalForm:
    """g = scale * unit * monic, where the series factors live at ``precision``.

    The series factors are known modulo t^(N - gamma) with gamma the order of
    the dominant coefficient; multiplied by ``scale`` they recover g mod t^N.
    """

    mu: int
    scale: LaurentElem
    unit: RestrictedSeries
    monic: RestrictedSeries
    gamma: int


def _split_monic(f: RestrictedSeries, d: int):
    """f = f0 + E with f0 monic of degree d in Y_n and gauss_norm(E) >= 1."""
    n, N = f.nvars, f.precision
    lead = (0,) * (n - 1) + (d,)
    low = {m: c for m, c in f.terms.items() if m[-1] < d}
    low[lead] = AdicCoeff.one(N)
    f0 = RestrictedSeries(n, low, N)
    return f0, f - f0


def weierstrass_divide(f: RestrictedSeries, g: RestrictedSeries):
    """Return (q, r) with g = q*f + r and deg_{Y_n} r < d for f regular of degree d."""
    if f.nvars != g.nvars or f.precision != g.precision:
        raise ContractViolation("f and g must share arity and precision")
    d = is_regular_in_last(f)
    if d is None:
        raise NotRegular(f"{f} is not regular in Y{f.nvars}")
    n, N = f.nvars, f.precision
    c = f.coefficient((0,) * (n - 1) + (d,)).residue()
    c_inv = AdicCoeff.constant(1 / c, N)
    f0, E = _split_monic(f.scale(c_inv), d)

    q = RestrictedSeries.zero(n, N)
    r = RestrictedSeries.zero(n, N)
    gk = g
    # each pass multiplies the defect by E (order >= 1), so N passes clear it
    for _ in range(N + 1):
        if not gk:
            break
        qk, rk = monic_divrem(gk, f0)
        q = q + qk
        r = r + rk
        gk = -(E * qk)
    assert not gk, "Weierstrass iteration did not terminate at precision"
    return q.scale(c_inv), r


def weierstrass_prepare(f: RestrictedSeries) -> PreparationResult:
    d = is_regular_in_last(f)
    if d is None:
        raise NotRegular(f"{f} is not regular in Y{f.nvars}")
    n, N = f.nvars, f.precision
    yd = RestrictedSeries.monomial((0,) * (n - 1) + (d,), n, N)
    q, r = weierstrass_divide(f, yd)
    return PreparationResult(unit=q, monic=yd - r, degree=d)


def strip_t(f: RestrictedSeries):
    """Write f = t^k * f' with residue(f') != 0; f' is known modulo t^(N-k)."""
    k = f.gauss_norm()
    if k >= f.precision:
        raise CannotRegularize("the zero series has no nonzero residue at any order")
    if k == 0:
        return 0, f
    N = f.precision
    return k, RestrictedSeries(f.nvars, {m: c.divide_t(k) for m, c in f.terms.items()}, N - k)


def lex_leading_residue_exponent(f: RestrictedSeries):
    res = f.residue_poly()
    if not res:
        raise CannotRegularize("residue of f is zero; factor out t with strip_t first")
    return max(res)


def regularize(f: RestrictedSeries, d: int | None = None):
    """Return (d, f o T_d, ell) with f o T_d regular in Y_n of degree ell."""
    n = f.nvars
    if n < 1:
        raise ContractViolation("regularize needs at least one variable")
    mu = lex_leading_residue_exponent(f)
    deg = max(sum(m) for m in f.residue_poly())
    if d is None:
        d = deg + 1
    if d <= deg:
        raise ContractViolation(f"d must exceed the residue degree {deg}, got {d}")
    ell = sum(mu[i] * d ** (n - 1 - i) for i in range(n))
    transformed = td_transform(f, d) if n > 1 else f
    return d, transformed, ell


def univariate_normalize(c0: LaurentElem, h: RestrictedSeries) -> UnivariateNormalForm:
    """Factor c0*h in K<Y> as c * r(Y) * (Y^mu + g_1 Y^(mu-1) + ... + g_mu)."""
    if h.nvars != 1:
        raise ContractViolation("univariate_normalize needs a series in one variable")
    if c0.is_zero():
        raise PrecisionExhausted(f"scale {c0} is zero at precision")
    if not h:
        raise PrecisionExhausted("all coefficients vanish at precision")
    N = h.precision
    orders = {m[0]: c.ord() for m, c in h.terms.items()}
    gamma = min(orders.values())
    mu = max(i for i, o in orders.items() if o == gamma)
    M = N - gamma
    lead_unit = h.coefficient((mu,)).divide_t(gamma)
    inv = lead_unit.invert_unit()
    rescaled = RestrictedSeries(1, {m: c.divide_t(gamma) * inv for m, c in h.terms.items()}, M)
    prep = weierstrass_prepare(rescaled)
    if prep.degree != mu:
        raise AssertionError(f"dominant index {mu} but regular of degree {prep.degree}")
    scale = c0 * LaurentElem(gamma, lead_unit)
    return UnivariateNormalForm(
        mu=mu, scale=scale, unit=prep.unit.invert_unit(), monic=prep.monic, gamma=gamma
    )


def normal_form_holds(c0: LaurentElem, h: RestrictedSeries, nf: UnivariateNormalForm) -> bool:
    """Check c0*h == scale*unit*monic, i.e. h == t^gamma*u_mu*unit*monic modulo t^N."""
    N, gamma = h.precision, nf.gamma
    if nf.scale != c0 * LaurentElem(gamma, h.coefficient((nf.mu,)).divide_t(gamma)):
        return False
    lead = h.coefficient((nf.mu,)).divide_t(gamma)
    prod = (nf.unit * nf.monic).scale(lead)
    lifted = RestrictedSeries(1, {m: c.with_precision(N).shift(gamma) for m, c in prod.terms.items()}, N)
    monic_ok = nf.monic.coefficient((nf.mu,)) == AdicCoeff.one(nf.monic.precision) and nf.monic.deg_in_last() == nf.mu
    return monic_ok and nf.unit.is_unit() and lifted == h
