"""Restricted power series A<Y_1,...,Y_n> truncated at t-adic precision N.

At precision N a restricted series is a polynomial over A/t^N, so a series is
stored as a sparse map from exponent tuples to nonzero coefficient vectors.
"""

from __future__ import annotations

from numbers import Rational

from .coeff import QQ, AdicCoeff, format_monomial_term, format_tpoly, join_terms, mul_trunc
from .errors import ContractViolation, NotAUnit, NotMonic


def _zero_vec(n):
    return (QQ(0),) * n


def _add_into(acc: dict, mono, vec):
    old = acc.get(mono)
    if old is None:
        acc[mono] = vec
    else:
        acc[mono] = tuple(a + b for a, b in zip(old, vec))


def _monomial_str(mono) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"Y{i + 1}")
        elif e > 1:
            parts.append(f"Y{i + 1}^{e}")
    return "*".join(parts)


def grlex_key(mono):
    return (sum(mono), mono)


class RestrictedSeries:
    """Truncated element of A<Y_1,...,Y_n>.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero
    :class:`AdicCoeff` values of the common ``precision``.
    """

    __slots__ = ("nvars", "precision", "_vecs")

    def __init__(self, nvars: int, terms, precision: int):
        if nvars < 0:
            raise ContractViolation("nvars must be >= 0")
        vecs = {}
        for mono, c in dict(terms).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ContractViolation(f"bad monomial {mono} for {nvars} variables")
            if isinstance(c, AdicCoeff):
                if c.precision != precision:
                    raise ContractViolation("coefficient precision differs from series precision")
                vec = c.coeffs
            elif isinstance(c, (list, tuple)):
                vec = AdicCoeff(c, precision).coeffs
            else:
                vec = AdicCoeff.constant(c, precision).coeffs
            _add_into(vecs, mono, vec)
        self.nvars = nvars
        self.precision = precision
        self._vecs = {m: v for m, v in vecs.items() if any(v)}

    @classmethod
    def _raw(cls, nvars, vecs, precision):
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.precision = precision
        obj._vecs = {m: v for m, v in vecs.items() if any(v)}
        return obj

    # constructors

    @classmethod
    def zero(cls, nvars, precision):
        return cls._raw(nvars, {}, precision)

    @classmethod
    def constant(cls, a, nvars, precision):
        if not isinstance(a, AdicCoeff):
            a = AdicCoeff.constant(a, precision)
        return cls(nvars, {(0,) * nvars: a}, precision)

    @classmethod
    def one(cls, nvars, precision):
        return cls.constant(1, nvars, precision)

    @classmethod
    def variable(cls, i, nvars, precision):
        """The coordinate Y_{i+1} (``i`` is 0-based)."""
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {mono: 1}, precision)

    @classmethod
    def monomial(cls, mono, nvars, precision, coeff=1):
        return cls(nvars, {tuple(mono): coeff}, precision)

    # container protocol

    @property
    def terms(self) -> dict:
        return {m: AdicCoeff._raw(v, self.precision) for m, v in self._vecs.items()}

    def coefficient(self, mono) -> AdicCoeff:
        v = self._vecs.get(tuple(mono))
        if v is None:
            return AdicCoeff.zero(self.precision)
        return AdicCoeff._raw(v, self.precision)

    def monomials(self):
        return sorted(self._vecs, key=grlex_key, reverse=True)

    def __len__(self):
        return len(self._vecs)

    def __bool__(self):
        return bool(self._vecs)

    def is_zero(self):
        return not self._vecs

    def __eq__(self, other):
        if not isinstance(other, RestrictedSeries):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.precision == other.precision
            and self._vecs == other._vecs
        )

    def __hash__(self):
        return hash((self.nvars, self.precision, frozenset(self._vecs.items())))

    def __repr__(self):
        return f"RestrictedSeries({str(self)!r})"

    def body_str(self) -> str:
        """The series literal without its precision suffix."""
        parts = []
        for mono in self.monomials():
            vec = self._vecs[mono]
            factors = _monomial_str(mono)
            nz = [k for k, c in enumerate(vec) if c]
            if len(nz) == 1:
                k = nz[0]
                tk = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                body = "*".join(x for x in (tk, factors) if x)
                parts.append(format_monomial_term(vec[k], body))
            elif not factors:
                parts.append(("+", f"({format_tpoly(vec)})"))
            else:
                parts.append(("+", f"({format_tpoly(vec)})*{factors}"))
        return join_terms(parts)

    def __str__(self):
        used = max((i + 1 for m in self._vecs for i, e in enumerate(m) if e), default=1)
        suffix = f"(mod t^{self.precision})"
        if used != self.nvars:
            suffix = f"(mod t^{self.precision}, n={self.nvars})"
        return f"{self.body_str()} {suffix}"

    # arithmetic

    def _check(self, other):
        if isinstance(other, RestrictedSeries):
            if other.nvars != self.nvars or other.precision != self.precision:
                raise ContractViolation(
                    f"series shapes differ: (n={self.nvars}, N={self.precision}) vs "
                    f"(n={other.nvars}, N={other.precision})"
                )
            return other
        if isinstance(other, (AdicCoeff, Rational)):
            return RestrictedSeries.constant(other, self.nvars, self.precision)
        raise TypeError(f"cannot combine RestrictedSeries with {type(other).__name__}")

    def __add__(self, other):
        o = self._check(other)
        vecs = dict(self._vecs)
        for m, v in o._vecs.items():
            _add_into(vecs, m, v)
        return RestrictedSeries._raw(self.nvars, vecs, self.precision)

    __radd__ = __add__

    def __neg__(self):
        return RestrictedSeries._raw(
            self.nvars, {m: tuple(-c for c in v) for m, v in self._vecs.items()}, self.precision
        )

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        acc = {}
        items = list(o._vecs.items())
        for m1, v1 in self._vecs.items():
            for m2, v2 in items:
                mono = tuple(a + b for a, b in zip(m1, m2))
                _add_into(acc, mono, mul_trunc(v1, v2))
        return RestrictedSeries._raw(self.nvars, acc, self.precision)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.invert_unit() ** (-e)
        result = RestrictedSeries.one(self.nvars, self.precision)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, a: AdicCoeff) -> RestrictedSeries:
        return self * RestrictedSeries.constant(a, self.nvars, self.precision)

    def with_precision(self, precision: int) -> RestrictedSeries:
        if precision == self.precision:
            return self
        return RestrictedSeries(
            self.nvars, {m: AdicCoeff(v, precision) for m, v in self._vecs.items()}, precision
        )

    def extend_vars(self, nvars: int) -> RestrictedSeries:
        """View the series inside A<Y_1,...,Y_nvars> (dummy trailing variables)."""
        if nvars < self.nvars:
            raise ContractViolation("cannot drop variables")
        pad = (0,) * (nvars - self.nvars)
        return RestrictedSeries._raw(
            nvars, {m + pad: v for m, v in self._vecs.items()}, self.precision
        )

    # norms and reductions

    def gauss_norm(self) -> int:
        """Norm exponent: least t-adic order among the coefficients (N for zero)."""
        best = self.precision
        for v in self._vecs.values():
            for k, c in enumerate(v):
                if c:
                    if k < best:
                        best = k
                    break
        return best

    def residue_poly(self) -> dict:
        """Coefficientwise residue: a polynomial over QQ as {monomial: rational}."""
        return {m: v[0] for m, v in self._vecs.items() if v[0]}

    def total_degree(self) -> int:
        return max((sum(m) for m in self._vecs), default=-1)

    def deg_in_last(self) -> int:
        """Largest Y_n exponent carrying a coefficient nonzero mod t^N; -1 for zero."""
        return max((m[-1] for m in self._vecs), default=-1)

    def is_unit(self) -> bool:
        res = self.residue_poly()
        return len(res) == 1 and (0,) * self.nvars in res

    def invert_unit(self) -> RestrictedSeries:
        if not self.is_unit():
            raise NotAUnit("residue polynomial is not a nonzero constant")
        n, N = self.nvars, self.precision
        c = self._vecs[(0,) * n][0]
        normalized = self.scale(AdicCoeff.constant(1 / c, N))
        small = RestrictedSeries.one(n, N) - normalized  # gauss norm >= 1
        total = RestrictedSeries.one(n, N)
        power = RestrictedSeries.one(n, N)
        while True:
            power = power * small
            if not power:
                break
            total = total + power
        return total.scale(AdicCoeff.constant(1 / c, N))

    # substitution and evaluation

    def substitute(self, gs) -> RestrictedSeries:
        """Composition f(g_1, ..., g_m) for this f in m variables."""
        gs = list(gs)
        if len(gs) != self.nvars:
            raise ContractViolation(f"expected {self.nvars} series, got {len(gs)}")
        if not gs:
            raise ContractViolation("substitution into a 0-variable series needs a target arity")
        nv = gs[0].nvars
        for g in gs:
            if g.nvars != nv or g.precision != self.precision:
                raise ContractViolation("substituted series must share arity and precision")
        return _substitute(self, gs, nv)

    def substitute_into(self, gs, nvars: int) -> RestrictedSeries:
        """Like :meth:`substitute`, with the target arity explicit (allows m = 0)."""
        gs = list(gs)
        if len(gs) != self.nvars:
            raise ContractViolation(f"expected {self.nvars} series, got {len(gs)}")
        for g in gs:
            if g.nvars != nvars or g.precision != self.precision:
                raise ContractViolation("substituted series must share arity and precision")
        return _substitute(self, gs, nvars)

    def evaluate(self, ys) -> AdicCoeff:
        """Value sum_nu a_nu y^nu in A/t^N, with 0^0 = 1."""
        ys = list(ys)
        if len(ys) != self.nvars:
            raise ContractViolation(f"expected {self.nvars} points, got {len(ys)}")
        N = self.precision
        ys = [y if isinstance(y, AdicCoeff) else AdicCoeff.constant(y, N) for y in ys]
        for y in ys:
            if y.precision != N:
                raise ContractViolation("evaluation point precision differs from series")
        powers = [_PowerCache(y.coeffs, lambda a, b: mul_trunc(a, b), AdicCoeff.one(N).coeffs) for y in ys]
        total = list(_zero_vec(N))
        for mono, vec in self._vecs.items():
            term = vec
            for i, e in enumerate(mono):
                if e:
                    term = mul_trunc(term, powers[i].get(e))
            for k, c in enumerate(term):
                if c:
                    total[k] += c
        return AdicCoeff._raw(tuple(total), N)

    # Y_n-structure

    def coefficients_in_last(self) -> dict:
        """Split as sum_j c_j(Y') Y_n^j; returns {j: c_j} with c_j still in n variables."""
        out = {}
        for mono, v in self._vecs.items():
            out.setdefault(mono[-1], {})[mono[:-1] + (0,)] = v
        return {j: RestrictedSeries._raw(self.nvars, vs, self.precision) for j, vs in out.items()}

    def monic_divrem(self, f: RestrictedSeries):
        """Division by f monic in Y_n: returns (q, r) with self = q*f + r, deg_{Y_n} r < deg f."""
        return monic_divrem(self, f)

    def is_regular_in_last(self):
        return is_regular_in_last(self)

    def td_transform(self, d: int) -> RestrictedSeries:
        return td_transform(self, d)

    def td_inverse(self, d: int) -> RestrictedSeries:
        return td_inverse(self, d)


class _PowerCache:
    def __init__(self, base, mul, one):
        self._pows = [one, base]
        self._mul = mul

    def get(self, e):
        pows = self._pows
        while len(pows) <= e:
            pows.append(self._mul(pows[-1], pows[1]))
        return pows[e]


def _substitute(f, gs, nv):
    N = f.precision
    one = RestrictedSeries.one(nv, N)
    caches = [_PowerCache(g, lambda a, b: a * b, one) for g in gs]
    acc = {}
    for mono, vec in f._vecs.items():
        term = RestrictedSeries._raw(nv, {(0,) * nv: vec}, N)
        for i, e in enumerate(mono):
            if e:
                term = term * caches[i].get(e)
        for m, v in term._vecs.items():
            _add_into(acc, m, v)
    return RestrictedSeries._raw(nv, acc, N)


def evaluate(f: RestrictedSeries, ys) -> AdicCoeff:
    return f.evaluate(ys)


def substitute(f: RestrictedSeries, gs) -> RestrictedSeries:
    return f.substitute(gs)


def gauss_norm(f: RestrictedSeries) -> int:
    return f.gauss_norm()


def residue_poly(f: RestrictedSeries) -> dict:
    return f.residue_poly()


def monic_divrem(g: RestrictedSeries, f: RestrictedSeries):
    if g.nvars != f.nvars or g.precision != f.precision:
        raise ContractViolation("divisor and dividend must share arity and precision")
    n, N = f.nvars, f.precision
    if n == 0:
        raise ContractViolation("division needs at least one variable")
    d = f.deg_in_last()
    lead = [m for m in f._vecs if m[-1] == d]
    unit_mono = (0,) * (n - 1) + (d,)
    if d < 0 or lead != [unit_mono] or f._vecs[unit_mono] != AdicCoeff.one(N).coeffs:
        raise NotMonic(f"{f} is not monic in Y{n}")
    lower = [(m, v) for m, v in f._vecs.items() if m[-1] < d]

    buckets = {}
    for m, v in g._vecs.items():
        buckets.setdefault(m[-1], {})[m] = v
    q = {}
    top = max(buckets, default=-1)
    for e in range(top, d - 1, -1):
        bucket = buckets.pop(e, None)
        if not bucket:
            continue
        for m, c in bucket.items():
            if not any(c):
                continue
            qm = m[:-1] + (e - d,)
            _add_into(q, qm, c)
            neg = tuple(-x for x in c)
            for fm, fv in lower:
                tm = tuple(a + b for a, b in zip(qm, fm))
                _add_into(buckets.setdefault(tm[-1], {}), tm, mul_trunc(neg, fv))
    r = {}
    for bucket in buckets.values():
        for m, v in bucket.items():
            _add_into(r, m, v)
    return RestrictedSeries._raw(n, q, N), RestrictedSeries._raw(n, r, N)


def is_regular_in_last(f: RestrictedSeries):
    """Degree d when the residue of f is regular in Y_n of degree d, else None."""
    if f.nvars < 1:
        raise ContractViolation("regularity needs at least one variable")
    res = f.residue_poly()
    if not res:
        return None
    d = max(m[-1] for m in res)
    lead = [m for m in res if m[-1] == d]
    if len(lead) == 1 and not any(lead[0][:-1]):
        return d
    return None


def _td_images(n, d, N, sign):
    ys = [RestrictedSeries.variable(i, n, N) for i in range(n)]
    last = ys[-1]
    out = []
    for i in range(n - 1):
        shift = RestrictedSeries.monomial((0,) * (n - 1) + (d ** (n - 1 - i),), n, N)
        out.append(ys[i] + shift if sign > 0 else ys[i] - shift)
    out.append(last)
    return out


def td_transform(f: RestrictedSeries, d: int) -> RestrictedSeries:
    """f(T_d(Y)) with T_d(Y) = (Y_1 + Y_n^(d^(n-1)), ..., Y_(n-1) + Y_n^d, Y_n)."""
    if f.nvars < 1 or d < 1:
        raise ContractViolation("T_d needs n >= 1 and d >= 1")
    return f.substitute(_td_images(f.nvars, d, f.precision, +1))


def td_inverse(f: RestrictedSeries, d: int) -> RestrictedSeries:
    if f.nvars < 1 or d < 1:
        raise ContractViolation("T_d needs n >= 1 and d >= 1")
    return f.substitute(_td_images(f.nvars, d, f.precision, -1))
