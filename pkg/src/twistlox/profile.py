"""A small language for profile functions of one variable ``y``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' factor)?
    base   := NUMBER | 'y' | 'pi' | 'e' | FUNC '(' expr ')' | '(' expr ')'

``^`` binds tighter than unary minus, which binds tighter than ``*`` and
``/``; ``^`` is right-associative.  Expressions are immutable trees that can
be evaluated, printed back to source and differentiated symbolically.

>>> e = parse_profile("y*sinh(y)")
>>> str(differentiate_profile(e))
'sinh(y) + y*cosh(y)'
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Union

from .errors import DomainError, ProfileSyntaxError, UnknownFunction, UnknownIdentifier

__all__ = [
    "Num", "Var", "Neg", "BinOp", "Call", "ProfileExpr", "FUNCTIONS",
    "parse_profile", "eval_profile", "differentiate_profile", "substitute",
]


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float
    name: str | None = None     # 'pi' or 'e' for named constants

    def __post_init__(self):
        if not (self.value >= 0.0 and math.isfinite(self.value)):
            raise ValueError("number literals are finite and nonnegative")


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str                     # one of + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Num, Var, Neg, BinOp, Call]

ZERO = Num(0.0)
ONE = Num(1.0)
TWO = Num(2.0)
Y = Var()


def _sqrt(v):
    if v < 0:
        raise ValueError
    return math.sqrt(v)


def _ln(v):
    if v <= 0:
        raise ValueError
    return math.log(v)


FUNCTIONS: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "tanh": math.tanh,
    "exp": math.exp,
    "ln": _ln,
    "sqrt": _sqrt,
    "abs": abs,
}
CONSTANTS = {"pi": math.pi, "e": math.e}


class _MathLib:
    """Evaluation backend: function table, power and constant lookup."""

    def __init__(self, functions, power, const=float):
        self.functions = functions
        self.power = power
        self.const = const


FLOAT = _MathLib(FUNCTIONS, math.pow)
_MP = None


def mp_lib():
    """mpmath backend, at whatever precision ``mpmath.mp`` is set to."""
    global _MP
    if _MP is None:
        import mpmath

        def guard(fn, ok):
            def wrapped(v):
                if not ok(v):
                    raise ValueError
                return fn(v)
            return wrapped

        def power(a, b):
            if a < 0 and b != int(b) or a == 0 and b < 0:
                raise ValueError
            return mpmath.power(a, b)

        table = {
            "sin": mpmath.sin, "cos": mpmath.cos, "tan": mpmath.tan,
            "sinh": mpmath.sinh, "cosh": mpmath.cosh, "tanh": mpmath.tanh,
            "exp": mpmath.exp, "abs": abs,
            "ln": guard(mpmath.log, lambda v: v > 0),
            "sqrt": guard(mpmath.sqrt, lambda v: v >= 0),
        }
        named = {"pi": lambda: +mpmath.pi, "e": lambda: +mpmath.e}

        def const(node_value, name=None):
            return named[name]() if name else mpmath.mpf(node_value)

        _MP = _MathLib(table, power, const)
    return _MP


# -- tokenizer ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Token:
    kind: str       # 'num', 'ident', 'op', 'end'
    text: str
    offset: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ProfileSyntaxError(f"unexpected character {src[pos]!r}",
                                     _byte_offset(src, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), _byte_offset(src, pos)))
        pos = m.end()
    tokens.append(_Token("end", "", _byte_offset(src, len(src))))
    return tokens


def _byte_offset(src: str, index: int) -> int:
    return len(src[:index].encode("utf-8"))


# -- parser ------------------------------------------------------------------

_BASE_START = {"NUMBER", "y", "pi", "e", "FUNC", "("}


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> None:
        if self.tok.text != text or self.tok.kind == "end":
            raise ProfileSyntaxError(f"unexpected {self._describe(self.tok)}",
                                     self.tok.offset, {text})
        self.advance()

    @staticmethod
    def _describe(t: _Token) -> str:
        return "end of input" if t.kind == "end" else f"token {t.text!r}"

    def parse(self) -> Node:
        if self.tok.kind == "end":
            raise ProfileSyntaxError("empty expression", self.tok.offset,
                                     _BASE_START | {"-"})
        node = self.expr()
        if self.tok.kind != "end":
            raise ProfileSyntaxError(f"unexpected {self._describe(self.tok)}",
                                     self.tok.offset, {"+", "-", "*", "/", "^", "end"})
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            return Neg(self.factor())
        node = self.base()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            node = BinOp("^", node, self.factor())
        return node

    def base(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(float(t.text))
        if t.kind == "ident":
            self.advance()
            if self.tok.kind == "op" and self.tok.text == "(":
                if t.text not in FUNCTIONS:
                    raise UnknownFunction(f"unknown function {t.text!r}", t.offset,
                                          FUNCTIONS)
                self.advance()
                arg = self.expr()
                self.expect(")")
                return Call(t.text, arg)
            if t.text == "y":
                return Y
            if t.text in CONSTANTS:
                return Num(CONSTANTS[t.text], t.text)
            if t.text in FUNCTIONS:
                raise ProfileSyntaxError(f"function {t.text!r} needs an argument",
                                         self.tok.offset, {"("})
            raise UnknownIdentifier(f"unknown identifier {t.text!r}", t.offset,
                                    {"y", "pi", "e"})
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ProfileSyntaxError(f"unexpected {self._describe(t)}", t.offset,
                                 _BASE_START | {"-"})


# -- evaluation --------------------------------------------------------------

def _eval(node: Node, y, lib: _MathLib = FLOAT):
    if isinstance(node, Num):
        return node.value if lib is FLOAT else lib.const(node.value, node.name)
    if isinstance(node, Var):
        return y
    if isinstance(node, Neg):
        return -_eval(node.operand, y, lib)
    if isinstance(node, Call):
        v = _eval(node.arg, y, lib)
        try:
            out = lib.functions[node.func](v)
        except (ValueError, OverflowError):
            raise DomainError(f"{node.func} undefined at {v!r}", to_source(node)) from None
        return out
    left = _eval(node.left, y, lib)
    right = _eval(node.right, y, lib)
    op = node.op
    if op == "+":
        return left + right
    if op == "-":
        return left - right
    if op == "*":
        return left * right
    if op == "/":
        if right == 0:
            raise DomainError("division by zero", to_source(node))
        return left / right
    try:
        return lib.power(left, right)
    except (ValueError, ZeroDivisionError, OverflowError):
        raise DomainError(f"power undefined for {left!r}^{right!r}",
                          to_source(node)) from None


# -- printing ----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_NEG_PREC = 3
_ATOM_PREC = 5


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _NEG_PREC
    return _ATOM_PREC


def _wrap(node: Node, parens: bool) -> str:
    s = to_source(node)
    return f"({s})" if parens else s


def to_source(node: Node) -> str:
    """Render ``node`` so that parsing the text yields the same tree."""
    if isinstance(node, Num):
        if node.name:
            return node.name
        return repr(int(node.value)) if node.value.is_integer() and node.value < 1e15 \
            else repr(node.value)
    if isinstance(node, Var):
        return "y"
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _prec(node.operand) < _NEG_PREC)
    op, p = node.op, _PREC[node.op]
    if op == "^":
        # base must be an atom; the exponent is a full factor
        return (_wrap(node.left, _prec(node.left) < _ATOM_PREC) + "^"
                + _wrap(node.right, _prec(node.right) < _NEG_PREC))
    left = _wrap(node.left, _prec(node.left) < p)
    right = _wrap(node.right, _prec(node.right) <= p)
    sep = f" {op} " if p == 1 else op
    return left + sep + right


# -- differentiation ---------------------------------------------------------

def _is_const(node: Node) -> bool:
    if isinstance(node, Num):
        return True
    if isinstance(node, Var):
        return False
    if isinstance(node, Neg):
        return _is_const(node.operand)
    if isinstance(node, Call):
        return _is_const(node.arg)
    return _is_const(node.left) and _is_const(node.right)


def _is_num(node: Node, value: float) -> bool:
    return isinstance(node, Num) and node.value == value


def _add(a: Node, b: Node) -> Node:
    if _is_num(a, 0.0):
        return b
    if _is_num(b, 0.0):
        return a
    if isinstance(b, Neg):
        return _sub(a, b.operand)
    return BinOp("+", a, b)


def _sub(a: Node, b: Node) -> Node:
    if _is_num(b, 0.0):
        return a
    if _is_num(a, 0.0):
        return _neg(b)
    return BinOp("-", a, b)


def _neg(a: Node) -> Node:
    if _is_num(a, 0.0):
        return ZERO
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def _mul(a: Node, b: Node) -> Node:
    if _is_num(a, 0.0) or _is_num(b, 0.0):
        return ZERO
    if _is_num(a, 1.0):
        return b
    if _is_num(b, 1.0):
        return a
    if isinstance(a, Neg):
        return _neg(_mul(a.operand, b))
    if isinstance(b, Neg):
        return _neg(_mul(a, b.operand))
    return BinOp("*", a, b)


def _div(a: Node, b: Node) -> Node:
    if _is_num(a, 0.0):
        return ZERO
    if _is_num(b, 1.0):
        return a
    return BinOp("/", a, b)


def _pow(a: Node, b: Node) -> Node:
    if _is_num(b, 1.0):
        return a
    return BinOp("^", a, b)


def _diff(node: Node) -> Node:
    if isinstance(node, Num):
        return ZERO
    if isinstance(node, Var):
        return ONE
    if isinstance(node, Neg):
        return _neg(_diff(node.operand))
    if isinstance(node, Call):
        u, du = node.arg, _diff(node.arg)
        if _is_num(du, 0.0):
            return ZERO
        f = node.func
        if f == "sin":
            outer = Call("cos", u)
        elif f == "cos":
            outer = _neg(Call("sin", u))
        elif f == "tan":
            outer = _div(ONE, _pow(Call("cos", u), TWO))
        elif f == "sinh":
            outer = Call("cosh", u)
        elif f == "cosh":
            outer = Call("sinh", u)
        elif f == "tanh":
            outer = _div(ONE, _pow(Call("cosh", u), TWO))
        elif f == "exp":
            outer = node
        elif f == "ln":
            return _div(du, u)
        elif f == "sqrt":
            return _div(du, _mul(TWO, node))
        elif f == "abs":
            outer = _div(u, node)
        else:  # pragma: no cover - parser rejects unknown names
            raise ValueError(f)
        return _mul(outer, du)

    op, u, v = node.op, node.left, node.right
    du, dv = _diff(u), _diff(v)
    if op == "+":
        return _add(du, dv)
    if op == "-":
        return _sub(du, dv)
    if op == "*":
        return _add(_mul(du, v), _mul(u, dv))
    if op == "/":
        if _is_const(v):
            return _div(du, v)
        return _div(_sub(_mul(du, v), _mul(u, dv)), _pow(v, TWO))
    # power
    if _is_const(v):
        exponent = Num(v.value - 1.0) if isinstance(v, Num) and v.value >= 1.0 \
            else _sub(v, ONE)
        return _mul(_mul(v, _pow(u, exponent)), du)
    if _is_const(u):
        return _mul(_mul(node, Call("ln", u)), dv)
    return _mul(node, _add(_mul(dv, Call("ln", u)), _div(_mul(v, du), u)))


def _subst(node: Node, repl: Node) -> Node:
    if isinstance(node, Var):
        return repl
    if isinstance(node, Num):
        return node
    if isinstance(node, Neg):
        return Neg(_subst(node.operand, repl))
    if isinstance(node, Call):
        return Call(node.func, _subst(node.arg, repl))
    return BinOp(node.op, _subst(node.left, repl), _subst(node.right, repl))


# -- public wrapper ----------------------------------------------------------

@dataclass(frozen=True)
class ProfileExpr:
    """A parsed profile function ``y -> value``."""

    root: Node

    def __call__(self, y: float) -> float:
        return _eval(self.root, y)

    def evaluate_mp(self, y):
        """Evaluate with mpmath at the current ``mpmath.mp`` precision."""
        return _eval(self.root, y, mp_lib())

    def __str__(self) -> str:
        return to_source(self.root)

    def derivative(self) -> "ProfileExpr":
        return ProfileExpr(_diff(self.root))

    @property
    def is_constant(self) -> bool:
        return _is_const(self.root)


def parse_profile(src: str) -> ProfileExpr:
    """Parse ``src`` into a :class:`ProfileExpr`.

    Raises ProfileSyntaxError (or its subclasses UnknownFunction and
    UnknownIdentifier) carrying the byte offset of the problem.
    """
    return ProfileExpr(_Parser(src).parse())


def eval_profile(e: ProfileExpr, y: float) -> float:
    return _eval(e.root, y)


def differentiate_profile(e: ProfileExpr) -> ProfileExpr:
    return e.derivative()


def substitute(e: ProfileExpr, replacement: ProfileExpr) -> ProfileExpr:
    """Compose: replace every ``y`` in ``e`` by ``replacement``."""
    return ProfileExpr(_subst(e.root, replacement.root))
