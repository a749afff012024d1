"""Input language for coefficient fields, space expressions and twist bivectors.

Grammar (EBNF)::

    expr     = [ "+" | "-" ] term { ( "+" | "-" ) term } ;
    term     = unary { ( "*" | "/" ) unary } ;
    unary    = "-" unary | power ;
    power    = atom [ "^" INTEGER ] ;
    atom     = NUMBER | "i" | "t" | "tau" | "x1" | "x2" | "x3"
             | "alpha1" ... "alpha6" | "kappa1" ... "kappa6"
             | FUNC "(" expr ")" | "(" expr ")" ;
    FUNC     = "cosh" | "sinh" | "cos" | "sin" ;

    bivector = "none" | [ "+" | "-" ] wedge { ( "+" | "-" ) wedge } ;
    wedge    = [ coeff ( ":" | "*" ) ] GEN "^" GEN ;
    GEN      = ( "P" | "K" | "F" ) ( "1" | "2" | "3" ) ;

A number written directly before a name or parenthesis multiplies it
(``2t`` is ``2*t``).  Function arguments must reduce to ``k*t/tau`` with a
nonzero integer ``k``.  Divisors must reduce to a nonzero number times a power
of ``tau``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .coefficients import (
    FLAT,
    HYPERBOLIC,
    PARAMETERS,
    TRIGONOMETRIC,
    GaussianRational,
    I,
    ModeError,
    ScalarField,
    cosh_like,
    sinh_like,
)
from .spacetime import SpaceExpr


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int, expected=()):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column, self.expected = line, col, tuple(expected)
        detail = f"{message} at line {line}, column {col}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)


class ElaborationError(ValueError):
    """Syntactically valid input that has no meaning in the engine."""


# -- syntax tree -------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Wedge:
    coeff: object  # syntax tree, or None for unit coefficient
    left: str
    right: str


HYPERBOLIC_FUNCS = {"cosh", "sinh"}
TRIG_FUNCS = {"cos", "sin"}
FUNCS = HYPERBOLIC_FUNCS | TRIG_FUNCS
SYMBOLS = {"i", "t", "tau", "x1", "x2", "x3", *PARAMETERS}
GENERATOR_RE = re.compile(r"[PKF][123]\Z")

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^():]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        if kind == "num" and tokens and tokens[-1][0] == "num":
            raise ParseError("unexpected number", text, start, ("operator",))
        # Implicit product: "2t", "3(x1+x2)".
        prev = tokens[-1] if tokens else None
        if prev and prev[0] == "num" and prev[2] + len(prev[1]) == start and (kind == "name" or value == "("):
            tokens.append(("op", "*", start))
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, generators: bool = False):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.generators = generators

    @property
    def tok(self):
        return self.tokens[self.i]

    def peek(self, offset=1):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def fail(self, message, expected=()):
        raise ParseError(message, self.text, self.tok[2], expected)

    def accept(self, value):
        if self.tok[0] == "op" and self.tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            found = self.tok[1] or "end of input"
            self.fail(f"unexpected {found!r}", (repr(value),))

    def finish(self):
        if self.tok[0] != "end":
            self.fail(f"unexpected {self.tok[1]!r}", ("operator", "end of input"))

    def is_generator(self, tok=None):
        tok = tok or self.tok
        return self.generators and tok[0] == "name" and bool(GENERATOR_RE.match(tok[1]))

    # expr = [+-] term {(+-) term}
    def expr(self):
        if self.accept("-"):
            node = Neg(self.term())
        else:
            self.accept("+")
            node = self.term()
        while True:
            if self.accept("+"):
                node = Bin("+", node, self.term())
            elif self.accept("-"):
                node = Bin("-", node, self.term())
            else:
                return node

    def term(self, stop_before_generator=False):
        node = self.unary()
        while True:
            if stop_before_generator and self.tok[1] == "*" and self.is_generator(self.peek()):
                return node
            if self.accept("*"):
                node = Bin("*", node, self.unary())
            elif self.accept("/"):
                node = Bin("/", node, self.unary())
            else:
                return node

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept("^"):
            kind, value, _ = self.tok
            if kind != "num":
                self.fail("exponent must be a non-negative integer", ("integer",))
            self.i += 1
            return Pow(base, int(value))
        return base

    def atom(self):
        kind, value, _ = self.tok
        if kind == "num":
            self.i += 1
            return Num(Fraction(int(value)))
        if kind == "name":
            if value in FUNCS:
                self.i += 1
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(value, arg)
            if value in SYMBOLS:
                self.i += 1
                return Sym(value)
            if self.is_generator():
                self.fail(f"generator {value!r} outside a wedge", ("coefficient symbol",))
            self.fail(f"unknown identifier {value!r}", ("number", "symbol", "function"))
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        found = value or "end of input"
        self.fail(f"unexpected {found!r}", ("number", "symbol", "function", "'('"))

    # bivector = "none" | [+-] wedge {(+-) wedge}
    def bivector(self):
        if self.tok[0] == "name" and self.tok[1] == "none" and self.peek()[0] == "end":
            self.i += 1
            return []
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        wedges = [self.wedge(sign)]
        while True:
            if self.accept("+"):
                wedges.append(self.wedge(1))
            elif self.accept("-"):
                wedges.append(self.wedge(-1))
            else:
                return wedges

    def wedge(self, sign):
        coeff = None
        if not self.is_generator():
            coeff = self.term(stop_before_generator=True)
            if not (self.accept(":") or self.accept("*")):
                self.fail("missing separator before generator", ("':'", "'*'"))
        if sign < 0:
            coeff = Neg(Num(Fraction(1)) if coeff is None else coeff)
        left = self.generator()
        self.expect("^")
        right = self.generator()
        return Wedge(coeff, left, right)

    def generator(self):
        if not self.is_generator():
            self.fail(f"unexpected {self.tok[1] or 'end of input'!r}", ("generator P1..P3, K1..K3, F1..F3",))
        name = self.tok[1]
        self.i += 1
        return name


def parse(text: str):
    """Parse an expression into its syntax tree."""
    p = _Parser(text)
    node = p.expr()
    p.finish()
    return node


def parse_bivector(text: str) -> list[Wedge]:
    p = _Parser(text, generators=True)
    wedges = p.bivector()
    p.finish()
    return wedges


# -- elaboration -------------------------------------------------------------


def functions_used(node) -> set[str]:
    if isinstance(node, Call):
        return {node.func} | functions_used(node.arg)
    if isinstance(node, Bin):
        return functions_used(node.left) | functions_used(node.right)
    if isinstance(node, (Neg,)):
        return functions_used(node.operand)
    if isinstance(node, Pow):
        return functions_used(node.base)
    if isinstance(node, Wedge):
        return functions_used(node.coeff) if node.coeff is not None else set()
    return set()


def infer_mode(node, mode: str | None = None) -> str:
    used = functions_used(node)
    hyp, trig = bool(used & HYPERBOLIC_FUNCS), bool(used & TRIG_FUNCS)
    if hyp and trig:
        raise ElaborationError("mode conflict: hyperbolic and trigonometric functions mixed")
    implied = HYPERBOLIC if hyp else TRIGONOMETRIC if trig else None
    if implied is None:
        return mode or FLAT
    if mode is not None and mode != implied:
        raise ElaborationError(f"mode conflict: input is {implied} but {mode} was requested")
    return implied


def elaborate(node, mode: str | None = None) -> SpaceExpr:
    """Turn a syntax tree into a canonical :class:`SpaceExpr`."""
    mode = infer_mode(node, mode)
    try:
        return _elab(node, mode)
    except ModeError as exc:
        raise ElaborationError(str(exc)) from exc


def _elab(node, mode) -> SpaceExpr:
    if isinstance(node, Num):
        return SpaceExpr.constant(node.value, mode)
    if isinstance(node, Sym):
        name = node.name
        if name == "i":
            return SpaceExpr.constant(I, mode)
        if name == "t":
            return SpaceExpr.scalar(ScalarField.time(1, mode))
        if name == "tau":
            return SpaceExpr.scalar(ScalarField.tau(1, mode))
        if name in ("x1", "x2", "x3"):
            return SpaceExpr.coordinate(int(name[1]), mode)
        return SpaceExpr.scalar(ScalarField.param(name, mode))
    if isinstance(node, Neg):
        return -_elab(node.operand, mode)
    if isinstance(node, Pow):
        return _elab(node.base, mode) ** node.exponent
    if isinstance(node, Bin):
        left = _elab(node.left, mode)
        right = _elab(node.right, mode)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return left * _reciprocal(right, mode)
    if isinstance(node, Call):
        k = _frequency(node.arg)
        build = cosh_like if node.func in ("cosh", "cos") else sinh_like
        return SpaceExpr.scalar(build(mode, k))
    raise ElaborationError(f"cannot elaborate {node!r}")


def _reciprocal(e: SpaceExpr, mode) -> ScalarField:
    if e.is_scalar() and len(f := e.scalar_part()) == 1:
        ((m, k, p, q), c), = f.items()
        if m == 0 and k == 0 and not q:
            return ScalarField({(0, 0, -p, ()): GaussianRational(1) / c}, mode if p else FLAT)
    raise ElaborationError("division only by nonzero numbers and powers of tau")


def _frequency(arg) -> int:
    if functions_used(arg):
        raise ElaborationError("nested functions are not supported")
    f = _elab(arg, HYPERBOLIC)
    if f.is_scalar() and len(s := f.scalar_part()) == 1:
        ((m, k, p, q), c), = s.items()
        if (m, k, p, q) == (1, 0, -1, ()) and c.im == 0 and c.re.denominator == 1:
            return int(c.re)
    raise ElaborationError("function arguments must be k*t/tau with integer k")


def parse_expr(text: str, mode: str | None = None) -> SpaceExpr:
    """Parse and elaborate in one step."""
    return elaborate(parse(text), mode)


def parse_field(text: str, mode: str | None = None) -> ScalarField:
    e = parse_expr(text, mode)
    if not e.is_scalar():
        raise ElaborationError("expected a coefficient field without x-dependence")
    return e.scalar_part() if e else ScalarField.zero(e.mode)


def elaborate_coefficient(node) -> ScalarField:
    """Twist coefficients: numbers, i and parameters only."""
    if node is None:
        return ScalarField.constant(1)
    if functions_used(node):
        raise ElaborationError("twist coefficients must be constant")
    try:
        e = _elab(node, FLAT)
    except ModeError as exc:
        raise ElaborationError("twist coefficients must not depend on tau") from exc
    f = e.scalar_part() if e.is_scalar() else None
    if f is None or not f.is_time_independent():
        raise ElaborationError("twist coefficients must be constant")
    return f
