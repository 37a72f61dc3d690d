"""Terms and quantifier-free formulas of the analytic valued-field language.

Terms are built from K-constants (exact Laurent polynomials in t), variables,
ring operations, restricted division D, co, abs and applications of named
restricted series. Formulas combine ``<<=`` (dominance), ``=``, C(.) and G(.)
with ``&``, ``|`` and ``!`` (unicode ≼ ∧ ∨ ¬ are accepted on input).

    term    := sum
    sum     := product (("+" | "-") product)*
    product := unary ("*" unary)*
    unary   := "-" unary | power
    power   := atom ("^" ["-"] int)?
    atom    := int ["/" int] | "t" | ident | ident "(" term ("," term)* ")"
             | "D(" term "," term ")" | "co(" term ")" | "abs(" term ")" | "(" term ")"
    formula := conj ("|" conj)*
    conj    := neg ("&" neg)*
    neg     := "!" neg | "C(" term ")" | "G(" term ")" | "(" formula ")"
             | term ("<<=" | "=") term
"""

from __future__ import annotations

import re

from dataclasses import dataclass
from pathlib import Path

from .coeff import QQ, AdicCoeff, format_monomial_term, join_terms
from .errors import ContractViolation, ParseError, PrecisionExhausted, UnboundVariable
from .literals import Token, TokenStream, line_col, parse_laurent, parse_series
from .series import RestrictedSeries
from .valfield import LaurentElem, abs_G, co, in_C, in_G, in_R, preceq, restricted_div

RESERVED = frozenset({"t", "D", "co", "abs", "C", "G"})
QUANTIFIERS = frozenset({"forall", "exists", "all", "ex", "∀", "∃"})
MAX_CONST_POWER = 64
_QUANTIFIER_WORD = re.compile(r"(?<![A-Za-z0-9_])(?:forall|exists|all|ex)(?![A-Za-z0-9_])|[∀∃]")


# ---------------------------------------------------------------- AST


@dataclass(frozen=True)
class Const:
    """An exact Laurent polynomial: ((exponent, coefficient), ...) by increasing exponent."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, d) -> Const:
        return cls(tuple((int(k), QQ(c)) for k, c in sorted(d.items()) if c))

    def as_dict(self) -> dict:
        return dict(self.terms)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Dcall:
    num: object
    den: object


@dataclass(frozen=True)
class Co:
    arg: object


@dataclass(frozen=True)
class Abs:
    arg: object


@dataclass(frozen=True)
class Apply:
    name: str
    args: tuple


@dataclass(frozen=True)
class Le:
    left: object
    right: object


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class InC:
    arg: object


@dataclass(frozen=True)
class InG:
    arg: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Not:
    arg: object


TERM_NODES = (Const, Var, Neg, Add, Sub, Mul, Pow, Dcall, Co, Abs, Apply)
FORMULA_NODES = (Le, Eq, InC, InG, And, Or, Not)


# ---------------------------------------------------------------- constant folding


def _cadd(a: dict, b: dict, sign=1) -> dict:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, QQ(0)) + sign * c
    return out


def _cmul(a: dict, b: dict) -> dict:
    out = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            out[k1 + k2] = out.get(k1 + k2, QQ(0)) + c1 * c2
    return out


def _cpow(a: dict, e: int):
    if e < 0:
        if len(a) != 1:
            return None
        ((k, c),) = a.items()
        return {k * e: 1 / c ** (-e)}
    acc = {0: QQ(1)}
    for _ in range(e):
        acc = _cmul(acc, a)
    return acc


def fold(node):
    """Collapse ring operations on constants into a single Const (one level)."""
    if isinstance(node, Neg) and isinstance(node.arg, Const):
        return Const.from_dict({k: -c for k, c in node.arg.terms})
    if isinstance(node, (Add, Sub, Mul)) and isinstance(node.left, Const) and isinstance(node.right, Const):
        a, b = node.left.as_dict(), node.right.as_dict()
        if isinstance(node, Add):
            return Const.from_dict(_cadd(a, b))
        if isinstance(node, Sub):
            return Const.from_dict(_cadd(a, b, -1))
        return Const.from_dict(_cmul(a, b))
    if isinstance(node, Pow) and isinstance(node.base, Const):
        p = _cpow(node.base.as_dict(), node.exponent)
        if p is not None:
            return Const.from_dict(p)
    return node


# ---------------------------------------------------------------- printing


def _const_body(c: Const) -> str:
    if not c.terms:
        return "0"
    parts = []
    for k, coeff in c.terms:
        factor = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        parts.append(format_monomial_term(coeff, factor))
    return join_terms(parts)


def _const_is_atomic(c: Const) -> bool:
    # bare inside a product such a constant cannot merge with its neighbours on reparse
    if not c.terms:
        return True
    if len(c.terms) != 1:
        return False
    k, coeff = c.terms[0]
    return coeff == 1 or (k == 0 and coeff > 0)


_SUM, _PRODUCT, _UNARY, _ATOM = range(4)


def _term_str(node, level: int) -> str:
    if isinstance(node, Const):
        body = _const_body(node)
        if level == _SUM or (_const_is_atomic(node) and not (level == _ATOM and "^" in body)):
            return body
        return f"({body})"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Apply):
        return f"{node.name}({', '.join(_term_str(a, _SUM) for a in node.args)})"
    if isinstance(node, Dcall):
        return f"D({_term_str(node.num, _SUM)}, {_term_str(node.den, _SUM)})"
    if isinstance(node, Co):
        return f"co({_term_str(node.arg, _SUM)})"
    if isinstance(node, Abs):
        return f"abs({_term_str(node.arg, _SUM)})"
    if isinstance(node, Pow):
        s = f"{_term_str(node.base, _ATOM)}^{node.exponent}"
        return s if level <= _UNARY else f"({s})"
    if isinstance(node, Neg):
        s = f"-{_term_str(node.arg, _UNARY)}"
        return s if level <= _UNARY else f"({s})"
    if isinstance(node, Mul):
        s = f"{_term_str(node.left, _PRODUCT)}*{_term_str(node.right, _UNARY)}"
        return s if level <= _PRODUCT else f"({s})"
    if isinstance(node, (Add, Sub)):
        op = "+" if isinstance(node, Add) else "-"
        s = f"{_term_str(node.left, _SUM)} {op} {_term_str(node.right, _PRODUCT)}"
        return s if level <= _SUM else f"({s})"
    raise TypeError(f"not a term: {node!r}")


def format_term(node) -> str:
    return _term_str(node, _SUM)


_OR, _AND, _NOT = range(3)


def _formula_str(node, level: int) -> str:
    if isinstance(node, Le):
        return f"{_term_str(node.left, _SUM)} <<= {_term_str(node.right, _SUM)}"
    if isinstance(node, Eq):
        return f"{_term_str(node.left, _SUM)} = {_term_str(node.right, _SUM)}"
    if isinstance(node, InC):
        return f"C({_term_str(node.arg, _SUM)})"
    if isinstance(node, InG):
        return f"G({_term_str(node.arg, _SUM)})"
    if isinstance(node, Not):
        inner = node.arg
        s = _formula_str(inner, _NOT)
        if isinstance(inner, (Le, Eq)):
            s = f"({s})"
        return f"!{s}"
    if isinstance(node, And):
        s = f"{_formula_str(node.left, _AND)} & {_formula_str(node.right, _NOT)}"
        return s if level <= _AND else f"({s})"
    if isinstance(node, Or):
        s = f"{_formula_str(node.left, _OR)} | {_formula_str(node.right, _AND)}"
        return s if level <= _OR else f"({s})"
    raise TypeError(f"not a formula: {node!r}")


def format_formula(node) -> str:
    return _formula_str(node, _OR)


# ---------------------------------------------------------------- parsing


class _Parser:
    def __init__(self, text: str, registry=None, variables=None):
        try:
            self.ts = TokenStream(text)
        except ParseError:
            # binder syntax such as "exists x: ..." fails to tokenize; name the real problem
            m = _QUANTIFIER_WORD.search(text)
            if m:
                raise ParseError(
                    f"quantifier {m.group(0)!r} is not supported: only quantifier-free formulas are evaluated",
                    *line_col(text, m.start()),
                ) from None
            raise
        self.registry = registry
        self.variables = None if variables is None else set(variables)

    def error(self, message, tok=None):
        self.ts.error(message, tok)

    def _check_quantifier(self):
        tok = self.ts.peek
        if tok.text in QUANTIFIERS:
            raise ParseError(
                f"quantifier {tok.text!r} is not supported: only quantifier-free formulas are evaluated",
                *line_col(self.ts.text, tok.pos),
            )

    # terms

    def term(self):
        self._check_quantifier()
        node = self.product()
        while True:
            if self.ts.accept("+"):
                node = fold(Add(node, self.product()))
            elif self.ts.accept("-"):
                node = fold(Sub(node, self.product()))
            else:
                return node

    def product(self):
        node = self.unary()
        while self.ts.accept("*"):
            node = fold(Mul(node, self.unary()))
        return node

    def unary(self):
        if self.ts.accept("-"):
            return fold(Neg(self.unary()))
        return self.power()

    def power(self):
        tok = self.ts.peek
        node = self.atom()
        if self.ts.accept("^"):
            neg = self.ts.accept("-")
            etok = self.ts.next()
            if etok.kind != "num":
                self.error("expected an integer exponent", etok)
            e = int(etok.text)
            if e > MAX_CONST_POWER and isinstance(node, Const) and len(node.terms) > 1:
                self.error("exponent too large", etok)
            e = -e if neg else e
            if e < 0 and not isinstance(node, Const):
                self.error("negative exponents apply to constants only; use D(.,.)", tok)
            folded = fold(Pow(node, e))
            if isinstance(folded, Pow) and isinstance(node, Const):
                self.error("negative power of a constant that is not a monomial", tok)
            return folded
        return node

    def _args(self, name_tok: Token):
        self.ts.expect("(")
        args = [self.term()]
        while self.ts.accept(","):
            args.append(self.term())
        self.ts.expect(")")
        return args

    def atom(self):
        ts = self.ts
        self._check_quantifier()
        tok = ts.next()
        if tok.kind == "num":
            c = QQ(int(tok.text))
            if ts.peek.text == "/" and ts.peek_at(1).kind == "num":
                ts.next()
                den = ts.next()
                if int(den.text) == 0:
                    self.error("zero denominator", den)
                c = c / int(den.text)
            return Const.from_dict({0: c})
        if tok.kind == "op" and tok.text == "(":
            node = self.term()
            ts.expect(")")
            return node
        if tok.kind != "ident":
            self.error("expected a term", tok)
        name = tok.text
        if name == "t":
            return Const(((1, QQ(1)),))
        if name in ("D", "co", "abs"):
            args = self._args(tok)
            want = 2 if name == "D" else 1
            if len(args) != want:
                self.error(f"{name} takes {want} argument{'s' if want > 1 else ''}, got {len(args)}", tok)
            if name == "D":
                return Dcall(*args)
            return Co(args[0]) if name == "co" else Abs(args[0])
        if name in ("C", "G"):
            self.error(f"{name}(.) is a predicate, not a term", tok)
        if ts.peek.text == "(":
            args = self._args(tok)
            if self.registry is not None:
                if name not in self.registry:
                    self.error(f"unknown series name {name!r}", tok)
                want = self.registry[name].nvars
                if len(args) != want:
                    self.error(f"series {name!r} takes {want} argument(s), got {len(args)}", tok)
            return Apply(name, tuple(args))
        if self.variables is not None and name not in self.variables:
            self.error(f"undeclared variable {name!r}", tok)
        return Var(name)

    # formulas

    def formula(self):
        node = self.conj()
        while self.ts.accept("|") or self.ts.accept("∨"):
            node = Or(node, self.conj())
        return node

    def conj(self):
        node = self.neg()
        while self.ts.accept("&") or self.ts.accept("∧"):
            node = And(node, self.neg())
        return node

    def neg(self):
        ts = self.ts
        self._check_quantifier()
        if ts.accept("!") or ts.accept("¬"):
            return Not(self.neg())
        tok = ts.peek
        if tok.kind == "ident" and tok.text in ("C", "G") and ts.peek_at(1).text == "(":
            ts.next()
            args = self._args(tok)
            if len(args) != 1:
                self.error(f"{tok.text} takes 1 argument, got {len(args)}", tok)
            return InC(args[0]) if tok.text == "C" else InG(args[0])
        if tok.text == "(":
            saved = ts.i
            try:
                ts.next()
                node = self.formula()
                ts.expect(")")
                if ts.peek.text not in ("<<=", "≼", "=", "+", "-", "*", "^"):
                    return node
            except ParseError:
                pass
            ts.i = saved
        return self.relation()

    def relation(self):
        left = self.term()
        tok = self.ts.next()
        if tok.text in ("<<=", "≼"):
            return Le(left, self.term())
        if tok.text == "=":
            return Eq(left, self.term())
        self.error("expected '<<=' or '='", tok)

    def finish(self, node):
        if self.ts.peek.kind != "end":
            self.error("unexpected trailing input")
        return node


def parse_term(text: str, registry=None, variables=None):
    p = _Parser(text, registry, variables)
    return p.finish(p.term())


def parse_formula(text: str, registry=None, variables=None):
    p = _Parser(text, registry, variables)
    return p.finish(p.formula())


def free_vars(node) -> set:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Const):
        return set()
    if isinstance(node, Apply):
        return set().union(*(free_vars(a) for a in node.args))
    if isinstance(node, Pow):
        return free_vars(node.base)
    out = set()
    for name in getattr(node, "__dataclass_fields__", {}):
        child = getattr(node, name)
        if isinstance(child, TERM_NODES + FORMULA_NODES):
            out |= free_vars(child)
    return out


# ---------------------------------------------------------------- registry and environments


class SeriesRegistry(dict):
    """Named restricted series sharing one t-adic precision."""

    def __init__(self, entries=None):
        super().__init__()
        for name, f in dict(entries or {}).items():
            self[name] = f

    def __setitem__(self, name, f):
        if name in self:
            raise ContractViolation(f"series {name!r} registered twice")
        if name in RESERVED:
            raise ContractViolation(f"{name!r} is a reserved word")
        if not isinstance(f, RestrictedSeries):
            raise ContractViolation(f"{name!r} is not a restricted series")
        if self and f.precision != self.precision:
            raise ContractViolation("all registered series must share one precision")
        super().__setitem__(name, f)

    @property
    def precision(self):
        return next(iter(self.values())).precision if self else None


def _definitions(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":=" not in line:
            raise ParseError("expected 'name := literal'", lineno, 1)
        name, literal = (s.strip() for s in line.split(":=", 1))
        if not name or not (name[0].isalpha() and name.isascii() and name.replace("_", "a").isalnum()):
            raise ParseError(f"bad name {name!r}", lineno, 1)
        if name in RESERVED:
            raise ParseError(f"{name!r} is a reserved word", lineno, 1)
        yield lineno, name, literal


def _relocate(err: ParseError, lineno: int) -> ParseError:
    return ParseError(err.message, lineno, err.column)


def parse_registry(text: str, precision: int | None = None) -> SeriesRegistry:
    reg = SeriesRegistry()
    for lineno, name, literal in _definitions(text):
        try:
            f = parse_series(literal, precision=precision)
        except ParseError as err:
            raise _relocate(err, lineno) from None
        try:
            reg[name] = f
        except ContractViolation as err:
            raise ParseError(str(err), lineno, 1) from None
    return reg


def parse_env(text: str, precision: int | None = None) -> dict:
    env = {}
    for lineno, name, literal in _definitions(text):
        if name in env:
            raise ParseError(f"variable {name!r} bound twice", lineno, 1)
        try:
            env[name] = parse_laurent(literal, precision=precision)
        except ParseError as err:
            raise _relocate(err, lineno) from None
    return env


def load_registry(path, precision: int | None = None) -> SeriesRegistry:
    return parse_registry(Path(path).read_text(), precision)


def load_env(path, precision: int | None = None) -> dict:
    return parse_env(Path(path).read_text(), precision)


def format_registry(reg) -> str:
    return "".join(f"{name} := {f}\n" for name, f in reg.items())


def format_env(env) -> str:
    return "".join(f"{name} := {a}\n" for name, a in env.items())


# ---------------------------------------------------------------- evaluation


def _precision(precision, registry):
    if precision is not None:
        return precision
    if registry:
        return registry.precision
    raise ContractViolation("no precision given and no registry to inherit one from")


def apply_series(f: RestrictedSeries, args, precision: int) -> LaurentElem:
    """f(args) in K, with the convention f(y) = 0 when some y_i lies outside R."""
    if not all(in_R(a) for a in args):
        return LaurentElem.zero()
    M = min([precision, f.precision] + [a.absolute_precision() for a in args])
    if M <= 0:
        raise PrecisionExhausted(f"arguments of a series are not known modulo t")
    M = int(M)
    ys = [a.to_adic(M) for a in args]
    return LaurentElem.from_adic(f.with_precision(M).evaluate(ys))


def eval_term(node, env, registry=None, precision: int | None = None) -> LaurentElem:
    N = _precision(precision, registry)
    return _Evaluator(env, registry or {}, N).term(node)


def eval_formula(node, env, registry=None, precision: int | None = None) -> bool:
    N = _precision(precision, registry)
    return _Evaluator(env, registry or {}, N).formula(node)


class _Evaluator:
    def __init__(self, env, registry, N):
        self.env = env
        self.registry = registry
        self.N = N

    def term(self, node) -> LaurentElem:
        N = self.N
        if isinstance(node, Const):
            return LaurentElem.from_poly(node.as_dict(), N)
        if isinstance(node, Var):
            if node.name not in self.env:
                raise UnboundVariable(node.name)
            return self.env[node.name].with_precision(N)
        if isinstance(node, Neg):
            return -self.term(node.arg)
        if isinstance(node, Add):
            return self.term(node.left) + self.term(node.right)
        if isinstance(node, Sub):
            return self.term(node.left) - self.term(node.right)
        if isinstance(node, Mul):
            return self.term(node.left) * self.term(node.right)
        if isinstance(node, Pow):
            base = self.term(node.base)
            if node.exponent == 0:
                return LaurentElem.constant(1, N)
            return base ** node.exponent
        if isinstance(node, Dcall):
            return restricted_div(self.term(node.num), self.term(node.den))
        if isinstance(node, Co):
            a = self.term(node.arg)
            if a.is_zero() and not a.is_exact_zero():
                raise PrecisionExhausted(f"leading coefficient of {a} is unknown")
            c = co(a)
            return LaurentElem.constant(c, N) if c else LaurentElem.zero()
        if isinstance(node, Abs):
            return abs_G(self.term(node.arg))
        if isinstance(node, Apply):
            if node.name not in self.registry:
                raise ContractViolation(f"unknown series name {node.name!r}")
            f = self.registry[node.name]
            if len(node.args) != f.nvars:
                raise ContractViolation(f"series {node.name!r} takes {f.nvars} argument(s)")
            return apply_series(f, [self.term(a) for a in node.args], N)
        raise TypeError(f"not a term: {node!r}")

    def formula(self, node) -> bool:
        if isinstance(node, Le):
            return preceq(self.term(node.left), self.term(node.right))
        if isinstance(node, Eq):
            return (self.term(node.left) - self.term(node.right)).is_zero()
        if isinstance(node, InC):
            return in_C(self.term(node.arg))
        if isinstance(node, InG):
            return in_G(self.term(node.arg))
        if isinstance(node, Not):
            return not self.formula(node.arg)
        if isinstance(node, And):
            return self.formula(node.left) and self.formula(node.right)
        if isinstance(node, Or):
            return self.formula(node.left) or self.formula(node.right)
        raise TypeError(f"not a formula: {node!r}")


# ---------------------------------------------------------------- terms as series


def compile_term(node, variables, registry, precision: int) -> RestrictedSeries:
    """The series f in A<Y> with f(y) = node(y) for y in R^n (Y_i stands for variables[i]).

    Only constants from A, variables, ring operations and series applications
    are allowed; D, co and abs have no series counterpart.
    """
    variables = list(variables)
    n = max(len(variables), 1)
    index = {v: i for i, v in enumerate(variables)}

    def go(x) -> RestrictedSeries:
        if isinstance(x, Const):
            d = x.as_dict()
            if any(k < 0 for k in d):
                raise ContractViolation(f"constant {format_term(x)} is not in A")
            coeffs = [d.get(k, 0) for k in range(precision)]
            return RestrictedSeries.constant(AdicCoeff(coeffs, precision), n, precision)
        if isinstance(x, Var):
            if x.name not in index:
                raise UnboundVariable(x.name)
            return RestrictedSeries.variable(index[x.name], n, precision)
        if isinstance(x, Neg):
            return -go(x.arg)
        if isinstance(x, Add):
            return go(x.left) + go(x.right)
        if isinstance(x, Sub):
            return go(x.left) - go(x.right)
        if isinstance(x, Mul):
            return go(x.left) * go(x.right)
        if isinstance(x, Pow):
            if x.exponent < 0:
                raise ContractViolation("negative powers have no series counterpart")
            return go(x.base) ** x.exponent
        if isinstance(x, Apply):
            f = registry[x.name].with_precision(precision)
            return f.substitute_into([go(a) for a in x.args], n)
        raise ContractViolation(f"{type(x).__name__} has no series counterpart")

    return go(node)


def random_ring_term(rng, variables, registry, depth: int):
    """A random term of depth <= ``depth`` built from ring ops, small constants and applications."""
    names = sorted(registry)
    if depth <= 0 or rng.random() < 0.25:
        if variables and rng.random() < 0.6:
            return Var(rng.choice(list(variables)))
        k = rng.randint(0, 2)
        return Const.from_dict({k: QQ(rng.randint(-3, 3), rng.randint(1, 3))})
    kind = rng.choice(["add", "sub", "mul", "neg", "pow", "apply", "apply"])
    sub = lambda: random_ring_term(rng, variables, registry, depth - 1)
    if kind == "apply" and names:
        name = rng.choice(names)
        return Apply(name, tuple(sub() for _ in range(registry[name].nvars)))
    if kind == "neg":
        return fold(Neg(sub()))
    if kind == "pow":
        return fold(Pow(sub(), rng.randint(0, 3)))
    cls = {"add": Add, "sub": Sub, "mul": Mul}.get(kind, Add)
    return fold(cls(sub(), sub()))


__all__ = [
    "Const", "Var", "Neg", "Add", "Sub", "Mul", "Pow", "Dcall", "Co", "Abs", "Apply",
    "Le", "Eq", "InC", "InG", "And", "Or", "Not",
    "parse_term", "parse_formula", "format_term", "format_formula", "fold", "free_vars",
    "SeriesRegistry", "parse_registry", "parse_env", "load_registry", "load_env",
    "format_registry", "format_env", "eval_term", "eval_formula", "apply_series",
    "compile_term", "random_ring_term",
]
