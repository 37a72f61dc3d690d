"""Truncated elements of A = C[[t]], i.e. elements of A/t^N A with C = QQ.

The ultranorm |a| = delta^ord(a) is never materialized; every norm statement
is phrased through the integer t-adic order returned by :meth:`AdicCoeff.ord`.
"""

from __future__ import annotations

from numbers import Rational

from .errors import ContractViolation, NotAUnit

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ


def format_rational(c) -> str:
    c = QQ(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_monomial_term(c, factors: str) -> tuple[str, str]:
    """Return (sign, body) for ``c*factors``; ``factors`` may be empty."""
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if not factors:
        return sign, format_rational(a)
    if a == 1:
        return sign, factors
    return sign, f"{format_rational(a)}*{factors}"


def join_terms(parts: list[tuple[str, str]]) -> str:
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def t_power(k) -> str:
    if k == 0:
        return ""
    if k == 1:
        return "t"
    return f"t^{k}"


def format_tpoly(coeffs) -> str:
    """Print sum_k coeffs[k] t^k in increasing degree, without precision suffix."""
    parts = [format_monomial_term(c, t_power(k)) for k, c in enumerate(coeffs) if c]
    return join_terms(parts)


class AdicCoeff:
    """An element of C[[t]] known modulo t^N, stored as its dense length-N vector."""

    __slots__ = ("coeffs", "precision")

    def __init__(self, coeffs, precision: int):
        if precision < 1:
            raise ContractViolation(f"precision must be >= 1, got {precision}")
        vals = [QQ(c) for c in list(coeffs)[:precision]]
        vals.extend([QQ(0)] * (precision - len(vals)))
        self.coeffs = tuple(vals)
        self.precision = precision

    @classmethod
    def _raw(cls, coeffs: tuple, precision: int) -> AdicCoeff:
        # trusted constructor: coeffs already a length-N tuple of QQ
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj.precision = precision
        return obj

    @classmethod
    def zero(cls, precision: int) -> AdicCoeff:
        return cls((), precision)

    @classmethod
    def one(cls, precision: int) -> AdicCoeff:
        return cls((1,), precision)

    @classmethod
    def constant(cls, c, precision: int) -> AdicCoeff:
        return cls((c,), precision)

    @classmethod
    def t(cls, precision: int, power: int = 1) -> AdicCoeff:
        if power < 0:
            raise ContractViolation("negative power of t is not in A")
        vals = [0] * precision
        if power < precision:
            vals[power] = 1
        return cls(vals, precision)

    def __repr__(self):
        return f"AdicCoeff({str(self)!r})"

    def __str__(self):
        return f"{format_tpoly(self.coeffs)} (mod t^{self.precision})"

    def __eq__(self, other):
        if isinstance(other, AdicCoeff):
            return self.precision == other.precision and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.precision))

    def __bool__(self):
        return any(self.coeffs)

    def _coerce(self, other) -> AdicCoeff:
        if isinstance(other, AdicCoeff):
            if other.precision != self.precision:
                raise ContractViolation(
                    f"mixed precisions t^{self.precision} and t^{other.precision}"
                )
            return other
        if isinstance(other, Rational):
            return AdicCoeff.constant(other, self.precision)
        raise TypeError(f"cannot combine AdicCoeff with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return AdicCoeff._raw(
            tuple(a + b for a, b in zip(self.coeffs, o.coeffs)), self.precision
        )

    __radd__ = __add__

    def __neg__(self):
        return AdicCoeff._raw(tuple(-a for a in self.coeffs), self.precision)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return AdicCoeff._raw(
            tuple(a - b for a, b in zip(self.coeffs, o.coeffs)), self.precision
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return AdicCoeff._raw(mul_trunc(self.coeffs, o.coeffs), self.precision)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.invert_unit() ** (-e)
        result = AdicCoeff.one(self.precision)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.invert_unit()

    def ord(self) -> int:
        """Least k with a nonzero t^k coefficient; ``precision`` when zero (the >=N sentinel)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return self.precision

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_unit(self) -> bool:
        return self.coeffs[0] != 0

    def residue(self):
        return self.coeffs[0]

    def invert_unit(self) -> AdicCoeff:
        a0 = self.coeffs[0]
        if a0 == 0:
            raise NotAUnit(f"{self} has positive t-adic order")
        n = self.precision
        inv0 = 1 / a0
        b = [QQ(0)] * n
        b[0] = inv0
        # b_k = -(1/a_0) * sum_{j=1..k} a_j b_{k-j}
        a = self.coeffs
        for k in range(1, n):
            s = QQ(0)
            for j in range(1, k + 1):
                if a[j]:
                    s += a[j] * b[k - j]
            b[k] = -inv0 * s
        return AdicCoeff._raw(tuple(b), n)

    def with_precision(self, precision: int) -> AdicCoeff:
        """Reduce to a lower precision, or embed into a higher one by zero padding."""
        if precision == self.precision:
            return self
        return AdicCoeff(self.coeffs, precision)

    def shift(self, k: int) -> AdicCoeff:
        """Multiply by t^k (k >= 0) at the same precision."""
        if k < 0:
            raise ContractViolation("use divide_t for negative shifts")
        n = self.precision
        return AdicCoeff._raw(((QQ(0),) * k + self.coeffs)[:n], n)

    def divide_t(self, k: int) -> AdicCoeff:
        """Exact division by t^k; the result is only known modulo t^(N-k)."""
        if k == 0:
            return self
        if k >= self.precision or any(self.coeffs[:k]):
            raise ContractViolation(f"{self} is not divisible by t^{k} at precision")
        return AdicCoeff._raw(self.coeffs[k:], self.precision - k)


def mul_trunc(a: tuple, b: tuple) -> tuple:
    """Truncated product of two length-N coefficient tuples."""
    n = len(a)
    out = [QQ(0)] * n
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(n - i):
            y = b[j]
            if y:
                out[i + j] += x * y
    return tuple(out)
