"""The valued field K = C((t)) at relative precision.

A nonzero element is ``t^val * unit`` with ``unit`` an :class:`AdicCoeff` of
nonzero residue; the unit's precision is the relative precision. Products and
quotients keep the smaller relative precision of their operands, sums lose
digits only through cancellation. A sum in which every known digit cancels is
``ZeroAtPrecision``: zero modulo ``t^abs_prec``. The literal 0 is the exact
zero (``abs_prec is None``).

Relations treat every value as the class of its known digits. A question whose
answer hinges on digits nobody knows raises :class:`PrecisionExhausted`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from numbers import Rational

from .coeff import QQ, AdicCoeff, format_rational, format_tpoly
from .errors import ContractViolation, DivisionByZeroAtPrecision, PrecisionExhausted


class LaurentElem:
    __slots__ = ("val", "unit", "abs_prec")

    def __init__(self, val, unit, abs_prec=None):
        if unit is None:
            self.val = None
            self.unit = None
            self.abs_prec = abs_prec
            return
        if not unit.is_unit():
            raise ContractViolation("unit part must have nonzero residue")
        self.val = int(val)
        self.unit = unit
        self.abs_prec = None

    # constructors

    @classmethod
    def zero(cls, abs_prec=None) -> LaurentElem:
        """The exact zero, or ZeroAtPrecision when ``abs_prec`` is given."""
        return cls(None, None, abs_prec)

    @classmethod
    def from_poly(cls, terms, precision: int) -> LaurentElem:
        """Exact Laurent polynomial {exponent: rational} at relative precision N."""
        terms = {int(k): QQ(c) for k, c in dict(terms).items() if c}
        if not terms:
            return cls.zero()
        v = min(terms)
        unit = AdicCoeff([terms.get(v + k, 0) for k in range(precision)], precision)
        return cls(v, unit)

    @classmethod
    def constant(cls, c, precision: int) -> LaurentElem:
        return cls.from_poly({0: c}, precision)

    @classmethod
    def t_power(cls, k: int, precision: int, coeff=1) -> LaurentElem:
        return cls.from_poly({k: coeff}, precision)

    @classmethod
    def from_adic(cls, a: AdicCoeff) -> LaurentElem:
        """Embed A/t^N into K; digits lost to the valuation shift are not invented."""
        k = a.ord()
        if k >= a.precision:
            return cls.zero(a.precision)
        return cls(k, a.divide_t(k))

    # inspection

    def is_zero(self) -> bool:
        return self.unit is None

    def is_exact_zero(self) -> bool:
        return self.unit is None and self.abs_prec is None

    @property
    def valuation(self):
        return math.inf if self.unit is None else self.val

    @property
    def precision(self):
        """Relative precision of a nonzero element; None for zero."""
        return None if self.unit is None else self.unit.precision

    def absolute_precision(self):
        if self.unit is None:
            return math.inf if self.abs_prec is None else self.abs_prec
        return self.val + self.unit.precision

    def digits(self) -> dict:
        """Known nonzero digits as {exponent: rational}."""
        if self.unit is None:
            return {}
        return {self.val + k: c for k, c in enumerate(self.unit.coeffs) if c}

    def leading_coefficient(self):
        return QQ(0) if self.unit is None else self.unit.coeffs[0]

    def __eq__(self, other):
        if not isinstance(other, LaurentElem):
            return NotImplemented
        return (self.val, self.unit, self.abs_prec) == (other.val, other.unit, other.abs_prec)

    def __hash__(self):
        return hash((self.val, self.unit, self.abs_prec))

    def __repr__(self):
        return f"LaurentElem({str(self)!r})"

    def body_str(self) -> str:
        """Canonical valuation-extracted form without precision suffix."""
        if self.unit is None:
            return "0" if self.abs_prec is None else f"O(t^{self.abs_prec})"
        nz = [k for k, c in enumerate(self.unit.coeffs) if c]
        v = self.val
        tv = "" if v == 0 else ("t" if v == 1 else f"t^{v}")
        if len(nz) == 1:
            c = self.unit.coeffs[0]
            if not tv:
                return format_rational(c)
            if c == 1:
                return tv
            if c == -1:
                return f"-{tv}"
            return f"{format_rational(c)}*{tv}"
        body = format_tpoly(self.unit.coeffs)
        return body if not tv else f"{tv}*({body})"

    def __str__(self):
        if self.unit is None:
            return self.body_str()
        return f"{self.body_str()} (mod t^{self.unit.precision})"

    # arithmetic

    @staticmethod
    def _coerce(x, like) -> LaurentElem:
        if isinstance(x, LaurentElem):
            return x
        if isinstance(x, Rational):
            if not x:
                return LaurentElem.zero()
            if like.precision is None:
                raise ContractViolation("a rational next to zero has no precision to inherit")
            return LaurentElem.constant(x, like.precision)
        raise TypeError(f"cannot combine LaurentElem with {type(x).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other, self)
        except TypeError:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __neg__(self):
        if self.unit is None:
            return self
        return LaurentElem(self.val, -self.unit)

    def __sub__(self, other):
        try:
            other = self._coerce(other, self)
        except TypeError:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._coerce(other, self)
        except TypeError:
            return NotImplemented
        a, b = self, other
        if a.unit is None or b.unit is None:
            if a.is_exact_zero() or b.is_exact_zero():
                return LaurentElem.zero()
            # (zero mod t^p) * b is zero mod t^(p + v(b))
            if a.unit is None and b.unit is None:
                return LaurentElem.zero(a.abs_prec + b.abs_prec)
            z, x = (a, b) if a.unit is None else (b, a)
            return LaurentElem.zero(z.abs_prec + x.val)
        r = min(a.unit.precision, b.unit.precision)
        return LaurentElem(a.val + b.val, a.unit.with_precision(r) * b.unit.with_precision(r))

    __rmul__ = __mul__

    def inverse(self) -> LaurentElem:
        if self.unit is None:
            raise DivisionByZeroAtPrecision(f"cannot invert {self}")
        return LaurentElem(-self.val, self.unit.invert_unit())

    def __truediv__(self, other):
        try:
            other = self._coerce(other, self)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other, self) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            if self.unit is None:
                raise ContractViolation("0^0 in K needs an explicit precision")
            return LaurentElem.constant(1, self.precision)
        result = self
        for _ in range(e - 1):
            result = result * self
        return result

    def with_precision(self, precision: int) -> LaurentElem:
        """Reduce relative precision (never increases it)."""
        if self.unit is None or precision >= self.unit.precision:
            return self
        return LaurentElem(self.val, self.unit.with_precision(precision))

    def to_adic(self, precision: int) -> AdicCoeff:
        """The element of A/t^precision represented by self (requires v >= 0)."""
        if self.unit is None:
            if self.absolute_precision() < precision:
                raise PrecisionExhausted(f"{self} is not known modulo t^{precision}")
            return AdicCoeff.zero(precision)
        if self.val < 0:
            raise ContractViolation(f"{self} is not in the valuation ring")
        if self.absolute_precision() < precision:
            raise PrecisionExhausted(f"{self} is not known modulo t^{precision}")
        return self.unit.with_precision(precision).shift(self.val) if self.val < precision \
            else AdicCoeff.zero(precision)

    def agrees(self, other: LaurentElem) -> bool:
        """Equality on the digits both operands know."""
        return (self - other).is_zero()


def _add(a: LaurentElem, b: LaurentElem) -> LaurentElem:
    if a.is_exact_zero():
        return b
    if b.is_exact_zero():
        return a
    P = min(a.absolute_precision(), b.absolute_precision())
    if a.unit is None or b.unit is None:
        x = b if a.unit is None else a
        if x.unit is not None and x.val < P:
            return LaurentElem(x.val, x.unit.with_precision(P - x.val))
        return LaurentElem.zero(P)
    v0 = min(a.val, b.val)
    L = P - v0
    digits = [QQ(0)] * L
    for x in (a, b):
        off = x.val - v0
        for k, c in enumerate(x.unit.coeffs):
            if off + k >= L:
                break
            digits[off + k] += c
    for k, c in enumerate(digits):
        if c:
            return LaurentElem(v0 + k, AdicCoeff._raw(tuple(digits[k:]), L - k))
    return LaurentElem.zero(P)


# dominance


class Dominance(enum.Enum):
    PREC = "≺"
    SIM = "∼"
    ASYMP = "≍"
    SUCC = "≻"


def _require_known(x: LaurentElem, y: LaurentElem):
    # a ZeroAtPrecision is only comparable with things it is known to be below
    for z, w in ((x, y), (y, x)):
        if z.unit is None and z.abs_prec is not None:
            if w.unit is None or w.val >= z.abs_prec:
                raise PrecisionExhausted(f"cannot compare {z} with {w} at precision")


def preceq(a: LaurentElem, b: LaurentElem) -> bool:
    """a ≼ b, i.e. v(a) >= v(b)."""
    if a.is_exact_zero():
        return True
    _require_known(a, b)
    return a.valuation >= b.valuation


def prec(a, b) -> bool:
    """a ≺ b, i.e. v(a) > v(b)."""
    return not preceq(b, a)


def sim(a: LaurentElem, b: LaurentElem) -> bool:
    """a ∼ b, i.e. a - b ≺ a."""
    if a.is_zero() or b.is_zero():
        _require_known(a, b)
        return False
    return a.val == b.val and a.unit.coeffs[0] == b.unit.coeffs[0]


def dominance(a: LaurentElem, b: LaurentElem) -> tuple[Dominance, bool]:
    """Classify a against b; the boolean is a ≼ b."""
    le = preceq(a, b)
    ge = preceq(b, a)
    if le and ge:
        rel = Dominance.SIM if sim(a, b) else Dominance.ASYMP
    elif le:
        rel = Dominance.PREC
    else:
        rel = Dominance.SUCC
    return rel, le


def restricted_div(a: LaurentElem, b: LaurentElem) -> LaurentElem:
    """D(a, b) = a/b if a ≼ b != 0, else 0."""
    if b.is_zero():
        return LaurentElem.zero()
    if not preceq(a, b):
        return LaurentElem.zero()
    if a.is_zero():
        return LaurentElem.zero()
    return a / b


def abs_G(a: LaurentElem) -> LaurentElem:
    """Leading monomial t^v(a); a ZeroAtPrecision comes back unchanged as its own flag."""
    if a.unit is None:
        return a
    return LaurentElem(a.val, AdicCoeff.one(a.unit.precision))


def co(a: LaurentElem):
    """Leading coefficient in C; co(0) = 0."""
    return a.leading_coefficient()


@dataclass(frozen=True)
class Membership:
    in_R: bool
    in_oR: bool
    in_C: bool
    in_G: bool


def in_R(a: LaurentElem) -> bool:
    if a.unit is None:
        if a.abs_prec is None or a.abs_prec >= 0:
            return True
        raise PrecisionExhausted(f"cannot decide whether {a} lies in R")
    return a.val >= 0


def in_oR(a: LaurentElem) -> bool:
    if a.unit is None:
        if a.abs_prec is None or a.abs_prec >= 1:
            return True
        raise PrecisionExhausted(f"cannot decide whether {a} lies in o(R)")
    return a.val >= 1


def in_C(a: LaurentElem) -> bool:
    if a.unit is None:
        if a.abs_prec is None:
            return True
        raise PrecisionExhausted(f"cannot decide whether {a} is a constant")
    return a.val == 0 and not any(a.unit.coeffs[1:])


def in_G(a: LaurentElem) -> bool:
    if a.unit is None:
        if a.abs_prec is None:
            return False
        raise PrecisionExhausted(f"cannot decide whether {a} is a power of t")
    return a.unit.coeffs[0] == 1 and not any(a.unit.coeffs[1:])


def membership(a: LaurentElem) -> Membership:
    return Membership(in_R(a), in_oR(a), in_C(a), in_G(a))


def decompose(a: LaurentElem):
    """Split a != 0 as co(a) * abs_G(a) * (1 + m) with v(m) >= 1; returns (co, abs_G, m)."""
    if a.unit is None:
        raise DivisionByZeroAtPrecision("zero has no decomposition")
    c = co(a)
    g = abs_G(a)
    m = a / (LaurentElem.constant(c, a.unit.precision) * g) - LaurentElem.constant(1, a.unit.precision)
    return c, g, m


def viability_witness(a: LaurentElem) -> LaurentElem:
    """For a in o(R) return r in R with a = t*r; o(R) = t*R is nonzero since it contains t."""
    if not in_oR(a):
        raise ContractViolation(f"{a} is not in o(R)")
    if a.unit is None:
        return a if a.abs_prec is None else LaurentElem.zero(a.abs_prec - 1)
    return LaurentElem(a.val - 1, a.unit)


# polynomials over K and annuli


def poly_eval(coeffs, z: LaurentElem) -> LaurentElem:
    """Horner evaluation of sum coeffs[i] z^i (ascending coefficients in K)."""
    acc = LaurentElem.zero()
    for c in reversed(list(coeffs)):
        acc = acc * z + c
    return acc


def _is_one(c: LaurentElem) -> bool:
    return c.unit is not None and c.val == 0 and in_C(c) and c.unit.coeffs[0] == 1


@dataclass
class AnnulusSpec:
    """{z in R : p_0(z)^l_0 ≼ pi_0, p_i(z)^l_i ≽ pi_i (i >= 1)}.

    ``polys`` hold ascending LaurentElem coefficients of monic polynomials over R.
    Hole disjointness quantifies over the algebraic closure of K and is not
    decided here: ``verified`` stays None unless a sample check finds a clash.
    """

    polys: list
    exps: list
    radii: list
    verified: bool | None = field(default=None)

    def __post_init__(self):
        if not (len(self.polys) == len(self.exps) == len(self.radii)) or not self.polys:
            raise ContractViolation("annulus needs matching nonempty polys, exponents, radii")
        for p in self.polys:
            if not p or not _is_one(p[-1]):
                raise ContractViolation("annulus polynomials must be monic")
            if not all(in_R(c) for c in p):
                raise ContractViolation("annulus polynomials must have coefficients in R")
        if any(int(l) < 1 for l in self.exps):
            raise ContractViolation("exponents l_i must be positive")
        for r in self.radii:
            if r.is_zero() or not in_R(r):
                raise ContractViolation("radii must be nonzero elements of R")

    def in_hole(self, i: int, z: LaurentElem) -> bool:
        return prec(poly_eval(self.polys[i], z) ** self.exps[i], self.radii[i])

    def check_on_samples(self, points) -> list:
        """Sample points lying in two holes at once; sets ``verified`` to False if any."""
        clashes = []
        for z in points:
            holes = [i for i in range(1, len(self.polys)) if self.in_hole(i, z)]
            if len(holes) > 1:
                clashes.append((z, holes))
        if clashes:
            self.verified = False
        return clashes


def annulus_contains(spec: AnnulusSpec, z: LaurentElem) -> bool:
    if not in_R(z):
        raise ContractViolation(f"{z} is not in R")
    if not preceq(poly_eval(spec.polys[0], z) ** spec.exps[0], spec.radii[0]):
        return False
    for i in range(1, len(spec.polys)):
        if not preceq(spec.radii[i], poly_eval(spec.polys[i], z) ** spec.exps[i]):
            return False
    return True
