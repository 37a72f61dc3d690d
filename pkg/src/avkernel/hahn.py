"""Finite-support Hahn series over QQ with rational exponents.

A :class:`HahnSeries` is known exactly below its ``cutoff``; nothing is
claimed about exponents at or above it. The valuation ring QQ[[t^(Q>=0)]] is an
A-ring through hahn_evaluate, and truncation operators plus a sampled
closedness check live here too.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from numbers import Rational

from .coeff import QQ, AdicCoeff, format_monomial_term, format_rational, join_terms
from .errors import BudgetExceeded, ContractViolation
from .series import RestrictedSeries


def _exp_str(g) -> str:
    g = QQ(g)
    if g == 0:
        return ""
    if g == 1:
        return "t"
    if g.denominator == 1:
        return f"t^{g.numerator}"
    return f"t^{{{format_rational(g)}}}"


class HahnSeries:
    __slots__ = ("terms", "cutoff")

    def __init__(self, terms, cutoff):
        cutoff = QQ(cutoff)
        clean = {}
        for g, c in dict(terms).items():
            g, c = QQ(g), QQ(c)
            if c and g < cutoff:
                clean[g] = clean.get(g, QQ(0)) + c
        self.terms = {g: clean[g] for g in sorted(clean) if clean[g]}
        self.cutoff = cutoff

    @classmethod
    def zero(cls, cutoff):
        return cls({}, cutoff)

    @classmethod
    def one(cls, cutoff):
        return cls({0: 1}, cutoff)

    @classmethod
    def monomial(cls, exponent, cutoff, coeff=1):
        return cls({exponent: coeff}, cutoff)

    @classmethod
    def from_adic(cls, a: AdicCoeff) -> HahnSeries:
        """The embedding iota_0: A/t^N -> Hahn series, exact below N."""
        return cls({k: c for k, c in enumerate(a.coeffs) if c}, a.precision)

    def __eq__(self, other):
        if not isinstance(other, HahnSeries):
            return NotImplemented
        return self.cutoff == other.cutoff and self.terms == other.terms

    def __hash__(self):
        return hash((self.cutoff, tuple(self.terms.items())))

    def sort_key(self):
        return (len(self.terms), tuple((g, c) for g, c in self.terms.items()), self.cutoff)

    def __repr__(self):
        return f"HahnSeries({str(self)!r})"

    def body_str(self):
        return join_terms([format_monomial_term(c, _exp_str(g)) for g, c in self.terms.items()])

    def __str__(self):
        return f"{self.body_str()} (cutoff {format_rational(self.cutoff)})"

    def __bool__(self):
        return bool(self.terms)

    @property
    def support(self):
        return list(self.terms)

    @property
    def valuation(self):
        return next(iter(self.terms), math.inf)

    def restrict(self, cutoff) -> HahnSeries:
        """Forget everything at or above ``cutoff`` (which must not exceed the current one)."""
        cutoff = QQ(cutoff)
        if cutoff > self.cutoff:
            raise ContractViolation("cannot raise a cutoff")
        return HahnSeries(self.terms, cutoff)

    def _coerce(self, other):
        if isinstance(other, HahnSeries):
            return other
        if isinstance(other, Rational):
            return HahnSeries({0: other}, self.cutoff)
        raise TypeError(f"cannot combine HahnSeries with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self.terms)
        for g, c in o.terms.items():
            acc[g] = acc.get(g, QQ(0)) + c
        return HahnSeries(acc, min(self.cutoff, o.cutoff))

    __radd__ = __add__

    def __neg__(self):
        return HahnSeries({g: -c for g, c in self.terms.items()}, self.cutoff)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        va, vb = self.valuation, o.valuation
        # a*b is known below min(v(a) + cutoff(b), v(b) + cutoff(a)); never report beyond the inputs
        cut = min(self.cutoff, o.cutoff)
        for bound in (va + o.cutoff, vb + self.cutoff):
            if bound != math.inf and bound < cut:
                cut = bound
        acc = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in o.terms.items():
                g = g1 + g2
                if g < cut:
                    acc[g] = acc.get(g, QQ(0)) + c1 * c2
        return HahnSeries(acc, cut)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ContractViolation("negative powers are not supported")
        result = HahnSeries.one(self.cutoff)
        for _ in range(e):
            result = result * self
        return result

    def truncate(self, gamma) -> HahnSeries:
        return truncate(self, gamma)


def truncate(a: HahnSeries, gamma) -> HahnSeries:
    """The proper truncation a|_gamma: the terms with exponent < gamma."""
    gamma = QQ(gamma)
    if gamma > a.cutoff:
        raise ContractViolation(f"truncation point {gamma} beyond cutoff {a.cutoff}")
    return HahnSeries({g: c for g, c in a.terms.items() if g < gamma}, a.cutoff)


def hahn_evaluate(f: RestrictedSeries, ys, cutoff) -> HahnSeries:
    """sum_nu iota_0(a_nu) y^nu, exact below min(cutoff, cutoffs of y)."""
    cutoff = QQ(cutoff)
    ys = list(ys)
    if len(ys) != f.nvars:
        raise ContractViolation(f"expected {f.nvars} points, got {len(ys)}")
    if f.precision < cutoff:
        raise ContractViolation(f"t-precision {f.precision} is below the cutoff {cutoff}")
    for y in ys:
        if y.valuation < 0:
            raise ContractViolation(f"{y} is outside the valuation ring")
    cut = min([cutoff] + [y.cutoff for y in ys])
    ys = [y.restrict(cut) for y in ys]
    powers = [[HahnSeries.one(cut)] for _ in ys]
    total = HahnSeries.zero(cut)
    for mono, coeff in f.terms.items():
        term = HahnSeries.from_adic(coeff).restrict(min(cut, QQ(f.precision)))
        for i, e in enumerate(mono):
            pw = powers[i]
            while len(pw) <= e:
                pw.append(pw[-1] * ys[i])
            if e:
                term = term * pw[e]
        total = total + term
    return total.restrict(cut)


class _Span:
    """Row-echelon QQ-span of Hahn series (exponent -> coefficient rows)."""

    def __init__(self):
        self.rows = {}

    def reduce(self, terms: dict) -> dict:
        row = dict(terms)
        while row:
            piv = min(row)
            basis = self.rows.get(piv)
            if basis is None:
                return row
            c = row[piv]
            for g, b in basis.items():
                v = row.get(g, QQ(0)) - c * b
                if v:
                    row[g] = v
                else:
                    row.pop(g, None)
        return row

    def add(self, terms: dict):
        row = self.reduce(terms)
        if row:
            piv = min(row)
            inv = 1 / row[piv]
            self.rows[piv] = {g: c * inv for g, c in row.items()}

    def __contains__(self, terms: dict) -> bool:
        return not self.reduce(terms)


def _closure_levels(base, registry, depth, budget, cutoff, witness=False):
    level0 = sorted(set(base), key=HahnSeries.sort_key)
    levels = [level0]
    seen = set(level0)
    frontier = level0
    for k in range(depth):
        # the last level of a witness run only feeds a span, so sums (already in it) are skipped
        products_only = witness and k == depth - 1
        fresh = []
        new_set = set(frontier)
        old = sorted(seen, key=HahnSeries.sort_key)

        def admit(x):
            if x not in seen:
                seen.add(x)
                fresh.append(x)
                if len(seen) > budget:
                    raise BudgetExceeded(f"closure sample exceeded {budget} elements")

        for a in frontier:
            for b in level0:
                if not products_only:
                    admit(a + b)
                    admit(a - b)
                admit(a * b)
        for name in sorted(registry):
            f = registry[name]
            for args in itertools.product(old, repeat=f.nvars):
                if any(arg in new_set for arg in args):
                    admit(hahn_evaluate(f, args, cutoff))
        frontier = sorted(fresh, key=HahnSeries.sort_key)
        levels.append(frontier)
    return levels


def closure_sample(generators, registry, depth: int, cutoff, budget: int = 20000) -> list:
    """A finite, deterministic sample of the A-closure R of ``generators`` below ``cutoff``.

    Level 0 is the generators with 0, 1, -1 and t. Level k+1 adds a+b, a-b, a*b
    for a in level k and b in level 0, and f(a_1, ...) for each registry series
    f with some argument from level k. The sample is the union of levels up to
    ``depth`` together with those proper truncations of its members that are
    witnessed in R, namely that lie in the QQ-span of levels up to depth+1
    (the last one built from products and series applications only, since
    sums never leave the span).
    Truncations without a witness are left out, so truncation_closed_on_sample
    reports them. ``budget`` bounds the number of elements generated.
    """
    cutoff = QQ(cutoff)
    registry = dict(registry)
    for name, f in registry.items():
        if f.precision < cutoff:
            raise ContractViolation(f"series {name} has t-precision below the cutoff")
    base = {
        HahnSeries.zero(cutoff),
        HahnSeries.one(cutoff),
        HahnSeries({0: -1}, cutoff),
        HahnSeries.monomial(1, cutoff),
    }
    for g in generators:
        if g.valuation < 0:
            raise ContractViolation(f"generator {g} is outside the valuation ring")
        if g.cutoff < cutoff:
            raise ContractViolation("generators must be known up to the cutoff")
        base.add(g.restrict(cutoff))
    levels = _closure_levels(base, registry, depth + 1, budget, cutoff, witness=True)
    span = _Span()
    for level in levels:
        for x in level:
            span.add(x.terms)
    sample = set().union(*levels[: depth + 1])
    for x in list(sample):
        for g in x.support:
            c = truncate(x, g)
            if c.terms in span:
                sample.add(c)
    return sorted(sample, key=HahnSeries.sort_key)


@dataclass(frozen=True)
class TruncationVerdict:
    closed: bool
    element: HahnSeries | None = None
    gamma: object = None


def truncation_closed_on_sample(S) -> TruncationVerdict:
    """Check every proper truncation of every member is again a member (below the common cutoff)."""
    S = list(S)
    if not S:
        return TruncationVerdict(True)
    cut = min(a.cutoff for a in S)
    members = [a.restrict(cut) for a in S]
    pool = set(members)
    for a in sorted(members, key=HahnSeries.sort_key):
        for g in reversed(a.support):
            if truncate(a, g) not in pool:
                return TruncationVerdict(False, a, g)
    return TruncationVerdict(True)
