"""Text literals for coefficients, series, Laurent elements and Hahn series.

All formats share one expression grammar over rationals, ``t`` and ``Y1..Yn``
with ``+ - * ^`` and parentheses, followed by a suffix:

    1 - 1/2*t + 3*t^2 (mod t^3)                  AdicCoeff
    (1 - 1/2*t)*Y1^2*Y2 + t*Y2 (mod t^8)         RestrictedSeries (", n=3" pins the arity)
    t^-2*(3 + 5*t) (mod t^8)                     LaurentElem (relative precision); O(t^5)
    2*t^{1/2} + t + 3*t^2 (cutoff 4)             HahnSeries
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .coeff import QQ, AdicCoeff
from .errors import ParseError
from .hahn import HahnSeries
from .series import RestrictedSeries
from .valfield import LaurentElem

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op><<=|:=|[-+*/^(){},;=&|!≼∧∨¬∀∃\[\]]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "end"
    text: str
    pos: int


def line_col(text: str, pos: int):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", *line_col(text, pos))
        kind = m.lastgroup
        start = m.start(kind)
        out.append(Token(kind, m.group(kind), start))
        pos = m.end()
    out.append(Token("end", "", n))
    return out


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def peek_at(self, k: int) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.peek.kind in ("op", "ident") and self.peek.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek
        if tok.text != text or tok.kind == "end":
            self.error(f"expected {text!r}", tok)
        return self.next()

    def error(self, message, tok: Token | None = None):
        tok = tok or self.peek
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", *line_col(self.text, tok.pos))


# polynomial expressions: {(t_exponent, y_monomial): rational}


def _padd(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, QQ(0)) + v
        if not out[k]:
            del out[k]
    return out


def _pmul(a, b):
    out = {}
    for (ta, ya), ca in a.items():
        for (tb, yb), cb in b.items():
            n = max(len(ya), len(yb))
            ya2 = ya + (0,) * (n - len(ya))
            yb2 = yb + (0,) * (n - len(yb))
            key = (ta + tb, tuple(x + y for x, y in zip(ya2, yb2)))
            out[key] = out.get(key, QQ(0)) + ca * cb
    return {k: v for k, v in out.items() if v}


def _norm(p):
    # strip trailing zero exponents so equal monomials compare equal
    out = {}
    for (te, y), c in p.items():
        y = tuple(y)
        while y and y[-1] == 0:
            y = y[:-1]
        key = (te, y)
        out[key] = out.get(key, QQ(0)) + c
    return {k: v for k, v in out.items() if v}


class _PolyParser:
    def __init__(self, ts: TokenStream):
        self.ts = ts

    def expr(self):
        ts = self.ts
        if ts.accept("-"):
            acc = {k: -v for k, v in self.term().items()}
        else:
            ts.accept("+")
            acc = self.term()
        while True:
            if ts.accept("+"):
                acc = _padd(acc, self.term())
            elif ts.accept("-"):
                acc = _padd(acc, {k: -v for k, v in self.term().items()})
            else:
                return _norm(acc)

    def term(self):
        acc = self.factor()
        while self.ts.accept("*"):
            acc = _pmul(acc, self.factor())
        return acc

    def exponent(self):
        ts = self.ts
        braced = ts.accept("{")
        neg = ts.accept("-")
        tok = ts.next()
        if tok.kind != "num":
            ts.error("expected an exponent", tok)
        e = QQ(int(tok.text))
        if braced and ts.accept("/"):
            tok = ts.next()
            if tok.kind != "num" or int(tok.text) == 0:
                ts.error("expected a positive denominator", tok)
            e = e / int(tok.text)
        if braced:
            ts.expect("}")
        return -e if neg else e

    def factor(self):
        tok = self.ts.peek
        base = self.atom()
        if self.ts.accept("^"):
            e = self.exponent()
            if len(base) == 1:
                ((te, y), c), = base.items()
                if e.denominator == 1 and e >= 0:
                    return self._ipow(base, int(e))
                if not any(y) and c == 1:
                    return {(te * e, y): QQ(1)}
                self.ts.error("only t may carry negative or fractional exponents", tok)
            if e.denominator != 1 or e < 0:
                self.ts.error("only t may carry negative or fractional exponents", tok)
            return self._ipow(base, int(e))
        return base

    @staticmethod
    def _ipow(base, e):
        acc = {(QQ(0), ()): QQ(1)}
        for _ in range(e):
            acc = _pmul(acc, base)
        return acc

    def atom(self):
        ts = self.ts
        tok = ts.next()
        if tok.kind == "num":
            c = QQ(int(tok.text))
            if ts.accept("/"):
                den = ts.next()
                if den.kind != "num" or int(den.text) == 0:
                    ts.error("expected a nonzero denominator", den)
                c = c / int(den.text)
            return {(QQ(0), ()): c} if c else {}
        if tok.kind == "ident":
            if tok.text == "t":
                return {(QQ(1), ()): QQ(1)}
            m = re.fullmatch(r"Y([1-9][0-9]*)", tok.text)
            if m:
                i = int(m.group(1))
                return {(QQ(0), (0,) * (i - 1) + (1,)): QQ(1)}
            ts.error("unknown symbol", tok)
        if tok.kind == "op" and tok.text == "(":
            p = self.expr()
            ts.expect(")")
            return p
        ts.error("expected a number, t, a variable or '('", tok)


_SUFFIX = re.compile(
    r"\(\s*(?:mod\s+t\s*\^\s*(?P<mod>\d+)(?:\s*,\s*n\s*=\s*(?P<n>\d+))?|cutoff\s+(?P<cut>-?\d+(?:/\d+)?))\s*\)\s*$"
)
_BIG_O = re.compile(r"^\s*O\s*\(\s*t\s*\^\s*(?P<p>-?\d+)\s*\)\s*$")


def _split_suffix(text: str):
    m = _SUFFIX.search(text)
    if not m:
        return text, {}
    info = {k: v for k, v in m.groupdict().items() if v is not None}
    return text[: m.start()], info


def parse_poly(text: str, offset: int = 0):
    ts = TokenStream(text)
    p = _PolyParser(ts).expr()
    if ts.peek.kind != "end":
        ts.error("unexpected trailing input")
    return p


def _int_t(te, text):
    if te.denominator != 1:
        raise ParseError(f"fractional power of t in {text!r}")
    return int(te)


def parse_adic(text: str, precision: int | None = None) -> AdicCoeff:
    body, info = _split_suffix(text)
    if "mod" in info:
        precision = int(info["mod"])
    if precision is None:
        raise ParseError(f"no precision given for {text!r}")
    coeffs = [QQ(0)] * precision
    for (te, y), c in parse_poly(body).items():
        if y:
            raise ParseError(f"coefficient literal {text!r} mentions a variable")
        k = _int_t(te, text)
        if k < 0:
            raise ParseError(f"negative power of t in coefficient {text!r}")
        if k < precision:
            coeffs[k] += c
    return AdicCoeff(coeffs, precision)


def parse_series(text: str, nvars: int | None = None, precision: int | None = None) -> RestrictedSeries:
    body, info = _split_suffix(text)
    if "mod" in info:
        precision = int(info["mod"])
    if "n" in info:
        nvars = int(info["n"])
    if precision is None:
        raise ParseError(f"no precision given for {text!r}")
    poly = parse_poly(body)
    used = max((len(y) for (_, y) in poly), default=0)
    if nvars is None:
        nvars = max(used, 1)
    if used > nvars:
        raise ParseError(f"literal uses Y{used} but the series has {nvars} variables")
    vecs = {}
    for (te, y), c in poly.items():
        k = _int_t(te, text)
        if k < 0:
            raise ParseError(f"negative power of t in series {text!r}")
        mono = y + (0,) * (nvars - len(y))
        vec = vecs.setdefault(mono, [QQ(0)] * precision)
        if k < precision:
            vec[k] += c
    return RestrictedSeries(nvars, {m: v for m, v in vecs.items()}, precision)


def parse_kseries(text: str, nvars: int | None = None, precision: int | None = None):
    """A K<Y> literal (negative t-powers allowed) as (c0 = t^m, h in A<Y>) with g = c0*h."""
    body, info = _split_suffix(text)
    if "mod" in info:
        precision = int(info["mod"])
    if "n" in info:
        nvars = int(info["n"])
    if precision is None:
        raise ParseError(f"no precision given for {text!r}")
    poly = parse_poly(body)
    if not poly:
        return LaurentElem.zero(), RestrictedSeries.zero(nvars or 1, precision)
    m = min(_int_t(te, text) for (te, _) in poly)
    shifted = {(te - m, y): c for (te, y), c in poly.items()}
    used = max((len(y) for (_, y) in poly), default=0)
    nvars = nvars or max(used, 1)
    vecs = {}
    for (te, y), c in shifted.items():
        mono = y + (0,) * (nvars - len(y))
        vec = vecs.setdefault(mono, [QQ(0)] * precision)
        if int(te) < precision:
            vec[int(te)] += c
    return LaurentElem.t_power(m, precision), RestrictedSeries(nvars, vecs, precision)


def parse_laurent(text: str, precision: int | None = None) -> LaurentElem:
    m = _BIG_O.match(text)
    if m:
        return LaurentElem.zero(int(m.group("p")))
    body, info = _split_suffix(text)
    if "mod" in info:
        precision = int(info["mod"])
    poly = parse_poly(body)
    terms = {}
    for (te, y), c in poly.items():
        if y:
            raise ParseError(f"Laurent literal {text!r} mentions a variable")
        k = _int_t(te, text)
        terms[k] = terms.get(k, QQ(0)) + c
    if not any(terms.values()):
        return LaurentElem.zero()
    if precision is None:
        raise ParseError(f"no precision given for {text!r}")
    return LaurentElem.from_poly(terms, precision)


def parse_hahn(text: str, cutoff=None) -> HahnSeries:
    body, info = _split_suffix(text)
    if "cut" in info:
        cutoff = QQ(info["cut"])
    if cutoff is None:
        raise ParseError(f"no cutoff given for {text!r}")
    terms = {}
    for (te, y), c in parse_poly(body).items():
        if y:
            raise ParseError(f"Hahn literal {text!r} mentions a variable")
        terms[te] = terms.get(te, QQ(0)) + c
    return HahnSeries(terms, cutoff)


def format_adic(a: AdicCoeff) -> str:
    return str(a)


def format_series(f: RestrictedSeries) -> str:
    return str(f)


def format_laurent(a: LaurentElem) -> str:
    return str(a)


def format_hahn(a: HahnSeries) -> str:
    return str(a)
