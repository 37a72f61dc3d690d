"""Constructive root lifting for the henselian pair (A/t^N, tA/t^N).

Every element of tA/t^N is nilpotent, so the finite recursion that proves
nilpotent pairs henselian terminates; it is the reference solver for the
special family 1 + X + e*a_2*X^2 + ... + e*a_M*X^M. Newton iteration is used for
general roots with unit derivative.
"""

from __future__ import annotations

from math import comb

from .coeff import AdicCoeff
from .errors import ContractViolation, NotHenselianInstance


class Poly1:
    """Univariate polynomial with AdicCoeff coefficients, constant term first."""

    def __init__(self, coeffs, precision: int | None = None):
        coeffs = list(coeffs)
        if precision is None:
            precision = next(c.precision for c in coeffs if isinstance(c, AdicCoeff))
        cs = [c if isinstance(c, AdicCoeff) else AdicCoeff.constant(c, precision) for c in coeffs]
        if any(c.precision != precision for c in cs):
            raise ContractViolation("polynomial coefficients must share one precision")
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs
        self.precision = precision

    def __repr__(self):
        return f"Poly1({[str(c) for c in self.coeffs]})"

    def __eq__(self, other):
        return isinstance(other, Poly1) and self.coeffs == other.coeffs and self.precision == other.precision

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: AdicCoeff) -> AdicCoeff:
        acc = AdicCoeff.zero(self.precision)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly1:
        return Poly1([c * k for k, c in enumerate(self.coeffs)][1:], self.precision)

    def taylor(self, a: AdicCoeff) -> list:
        """[P_(0)(a), P_(1)(a), ...] with P(a + x) = sum_i P_(i)(a) x^i."""
        N = self.precision
        powers = [AdicCoeff.one(N)]
        for _ in range(self.degree):
            powers.append(powers[-1] * a)
        out = []
        for i in range(self.degree + 1):
            s = AdicCoeff.zero(N)
            for k in range(i, self.degree + 1):
                s = s + self.coeffs[k] * powers[k - i] * comb(k, i)
            out.append(s)
        return out


def _he2(c: AdicCoeff, e: AdicCoeff, a: list) -> AdicCoeff:
    # zero of c + X + sum_{i>=2} e*a[i-2]*X^i, by induction on the nilpotency of e
    if e.is_zero() or not a:
        return -c
    N = c.precision
    m = len(a) + 1
    neg_c = -c
    pw = [AdicCoeff.one(N)]
    for _ in range(m):
        pw.append(pw[-1] * neg_c)
    epw = [AdicCoeff.one(N)]
    for _ in range(m):
        epw.append(epw[-1] * e)
    # Y + sum a_i (-c + eY)^i = b + Y(1 + e f) + sum_{j>=2} e^2 b_j Y^j
    b = AdicCoeff.zero(N)
    f = AdicCoeff.zero(N)
    bj = [AdicCoeff.zero(N) for _ in range(m - 1)]
    for i in range(2, m + 1):
        ai = a[i - 2]
        b = b + ai * pw[i]
        f = f + ai * pw[i - 1] * i
        for j in range(2, i + 1):
            bj[j - 2] = bj[j - 2] + ai * pw[i - j] * epw[j - 2] * comb(i, j)
    u_inv = (AdicCoeff.one(N) + e * f).invert_unit()
    y = _he2(b * u_inv, e * e, [x * u_inv for x in bj])
    return neg_c + e * y


def solve_special(e: AdicCoeff, a) -> AdicCoeff:
    """Zero y of 1 + X + sum_{i>=2} e*a_i*X^i with y = -1 mod t; ``a`` lists a_2, ..., a_M."""
    if e.ord() < 1:
        raise ContractViolation("e must lie in the maximal ideal tA")
    a = list(a)
    if any(x.precision != e.precision for x in a):
        raise ContractViolation("mixed precisions")
    return _he2(AdicCoeff.one(e.precision), e, a)


def solve_special_fixed_point(e: AdicCoeff, a) -> AdicCoeff:
    """Same zero via y <- -1 - sum e*a_i*y^i; each pass gains at least ord(e) digits."""
    if e.ord() < 1:
        raise ContractViolation("e must lie in the maximal ideal tA")
    a = list(a)
    N = e.precision
    y = -AdicCoeff.one(N)
    for _ in range(N + 1):
        s = AdicCoeff.zero(N)
        yi = y
        for ai in a:
            yi = yi * y
            s = s + ai * yi
        nxt = -AdicCoeff.one(N) - e * s
        if nxt == y:
            break
        y = nxt
    return y


def hensel_root(P: Poly1, a: AdicCoeff) -> AdicCoeff:
    """Root b of P with b = a mod t, for P(a) in tA and P'(a) a unit (Newton)."""
    dP = P.derivative()
    if P(a).ord() < 1 or not dP(a).is_unit():
        raise NotHenselianInstance("need P(a) = 0 mod t and P'(a) a unit")
    b = a
    for _ in range(P.precision + 1):
        val = P(b)
        if val.is_zero():
            return b
        b = b - val * dP(b).invert_unit()
    if not P(b).is_zero():
        raise AssertionError("Newton iteration did not converge at precision")
    return b


def hensel_root_quadratic(P: Poly1, a: AdicCoeff, e: AdicCoeff) -> AdicCoeff:
    """Root b of P with b - a in e*P'(a)*A, given P(a) = e*P'(a)^2 and e in tA."""
    if e.ord() < 1:
        raise NotHenselianInstance("e must lie in the maximal ideal tA")
    taylor = P.taylor(a)
    while len(taylor) < 2:
        taylor.append(AdicCoeff.zero(P.precision))
    d1 = taylor[1]
    if taylor[0] != e * d1 * d1:
        raise NotHenselianInstance("P(a) != e*P'(a)^2 at precision")
    # P(a + e P'(a) y) = e P'(a)^2 (1 + y + sum_{i>=2} e a_i y^i)
    a_list = []
    scale = AdicCoeff.one(P.precision)
    for i in range(2, len(taylor)):
        a_list.append(taylor[i] * scale)
        scale = scale * e * d1
    y = solve_special(e, a_list)
    return a + e * d1 * y
