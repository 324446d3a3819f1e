"""Closed-form holomorphic expressions in one complex variable.

Grammar (EBNF)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' integer)?
    base   := number | 'i' | 'pi' | 'z' | func '(' expr ')' | '(' expr ')' | '-' base
    func   in {exp, log, sin, cos, sinh, cosh, sqrt}

Whitespace is insignificant; numbers are decimals with an optional exponent.
``i`` and ``pi`` are reserved constants, and ``^`` takes integer exponents
only (write general powers as ``exp(w*log(z))``).

Expressions are immutable after parsing, evaluate deterministically, and are
closed under symbolic differentiation.  ``log`` and ``sqrt`` use the
principal branch (cut along the negative real axis); evaluation on the cut
raises no error but sets a warning flag in :func:`evaluate_checked`.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._kernels import eval_program

__all__ = [
    "Expression",
    "ExprError",
    "ParseError",
    "EvaluationError",
    "parse",
    "differentiate",
    "evaluate",
    "evaluate_checked",
]


class ExprError(Exception):
    """Base class for expression errors."""


class ParseError(ExprError):
    """Syntax error with the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class EvaluationError(ExprError):
    """Non-finite or undefined value encountered during evaluation."""


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Const(Node):
    value: complex


@dataclass(frozen=True)
class Var(Node):
    pass


@dataclass(frozen=True)
class Neg(Node):
    a: Node


@dataclass(frozen=True)
class Add(Node):
    a: Node
    b: Node


@dataclass(frozen=True)
class Sub(Node):
    a: Node
    b: Node


@dataclass(frozen=True)
class Mul(Node):
    a: Node
    b: Node


@dataclass(frozen=True)
class Div(Node):
    a: Node
    b: Node


@dataclass(frozen=True)
class Pow(Node):
    a: Node
    k: int


@dataclass(frozen=True)
class Call(Node):
    func: str
    a: Node


FUNCTIONS = ("exp", "log", "sin", "cos", "sinh", "cosh", "sqrt")

_ZERO = Const(0j)
_ONE = Const(1 + 0j)


def _is_const(n: Node, v: complex | None = None) -> bool:
    return isinstance(n, Const) and (v is None or n.value == v)


# Smart constructors: fold constants and drop identities so that derivative
# trees stay small enough for repeated differentiation.

def add(a: Node, b: Node) -> Node:
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    return Add(a, b)


def sub(a: Node, b: Node) -> Node:
    if _is_const(b, 0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    if _is_const(a, 0):
        return neg(b)
    return Sub(a, b)


def neg(a: Node) -> Node:
    if _is_const(a):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.a
    return Neg(a)


def mul(a: Node, b: Node) -> Node:
    if _is_const(a, 0) or _is_const(b, 0):
        return _ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    return Mul(a, b)


def div(a: Node, b: Node) -> Node:
    if _is_const(a, 0) and not _is_const(b, 0):
        return _ZERO
    if _is_const(b, 1):
        return a
    if _is_const(a) and _is_const(b) and b.value != 0:
        return Const(a.value / b.value)
    return Div(a, b)


def pow_(a: Node, k: int) -> Node:
    if k == 0:
        return _ONE
    if k == 1:
        return a
    if _is_const(a):
        return Const(a.value**k)
    return Pow(a, k)


# ---------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(source):
            if source[pos:].isspace():
                break
            m = _TOKEN.match(source, pos)
            if m is None or m.end() == pos:
                at = pos + len(source[pos:]) - len(source[pos:].lstrip())
                raise ParseError(f"unexpected character {source[at]!r}", at)
            if m.lastgroup is not None:
                self.tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
            pos = m.end()
        self.pos = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.source))
        self.pos += 1
        return tok

    def expect(self, text: str) -> None:
        tok = self.peek()
        if tok is None or tok[1] != text:
            at = tok[2] if tok else len(self.source)
            raise ParseError(f"expected {text!r}", at)
        self.pos += 1

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return node

    def expr(self) -> Node:
        node = self.term()
        while (tok := self.peek()) is not None and tok[1] in "+-":
            self.pos += 1
            rhs = self.term()
            node = Add(node, rhs) if tok[1] == "+" else Sub(node, rhs)
        return node

    def term(self) -> Node:
        node = self.factor()
        while (tok := self.peek()) is not None and tok[1] in "*/":
            self.pos += 1
            rhs = self.factor()
            node = Mul(node, rhs) if tok[1] == "*" else Div(node, rhs)
        return node

    def factor(self) -> Node:
        node = self.base()
        tok = self.peek()
        if tok is not None and tok[1] == "^":
            self.pos += 1
            node = Pow(node, self.integer())
        return node

    def integer(self) -> int:
        sign = 1
        tok = self.peek()
        if tok is not None and tok[1] == "-":
            sign = -1
            self.pos += 1
        tok = self.next()
        if tok[0] != "num" or not tok[1].isdigit():
            raise ParseError("exponent must be an integer", tok[2])
        return sign * int(tok[1])

    def base(self) -> Node:
        tok = self.next()
        kind, text, offset = tok
        if kind == "num":
            return Const(complex(float(text)))
        if kind == "op":
            if text == "-":
                return Neg(self.base())
            if text == "(":
                node = self.expr()
                self.expect(")")
                return node
            raise ParseError(f"unexpected token {text!r}", offset)
        # identifier
        if text == "z":
            return Var()
        if text == "i":
            return Const(1j)
        if text == "pi":
            return Const(complex(math.pi))
        if text in FUNCTIONS:
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return Call(text, node)
        raise ParseError(f"unknown identifier {text!r}", offset)


# ---------------------------------------------------------------------------
# Printing

# precedence levels: 0 add, 1 mul, 2 unary minus, 3 power, 4 atom
def _prec(n: Node) -> int:
    if isinstance(n, (Add, Sub)):
        return 0
    if isinstance(n, (Mul, Div)):
        return 1
    if isinstance(n, Neg):
        return 2
    if isinstance(n, Pow):
        return 3
    if isinstance(n, Const):
        v = n.value
        if v.imag == 0:
            return 2 if v.real < 0 else 4
        if v.real == 0:
            return 4 if v.imag == 1 else 1
        return 0
    return 4


def _fmt_float(x: float) -> str:
    s = repr(float(x))
    return s


def _const_str(v: complex) -> str:
    if v.imag == 0:
        return _fmt_float(v.real)
    if v.real == 0:
        if v.imag == 1:
            return "i"
        if v.imag == -1:
            return "-i"
        return f"{_fmt_float(v.imag)}*i"
    sign = "+" if v.imag >= 0 else "-"
    return f"{_fmt_float(v.real)} {sign} {_fmt_float(abs(v.imag))}*i"


def _to_str(n: Node, parent_prec: int = 0, right: bool = False) -> str:
    p = _prec(n)
    if isinstance(n, Const):
        s = _const_str(n.value)
    elif isinstance(n, Var):
        s = "z"
    elif isinstance(n, Neg):
        s = "-" + _to_str(n.a, 2)
    elif isinstance(n, Add):
        s = _to_str(n.a, 0) + " + " + _to_str(n.b, 0, right=True)
    elif isinstance(n, Sub):
        s = _to_str(n.a, 0) + " - " + _to_str(n.b, 1, right=True)
    elif isinstance(n, Mul):
        s = _to_str(n.a, 1) + "*" + _to_str(n.b, 1, right=True)
    elif isinstance(n, Div):
        s = _to_str(n.a, 1) + "/" + _to_str(n.b, 2, right=True)
    elif isinstance(n, Pow):
        s = _to_str(n.a, 4) + "^" + str(n.k)
    elif isinstance(n, Call):
        return f"{n.func}({_to_str(n.a, 0)})"
    else:  # pragma: no cover
        raise TypeError(n)
    if p < parent_prec or (right and p == parent_prec and isinstance(n, (Add, Sub, Mul, Div, Neg))):
        return f"({s})"
    return s


# ---------------------------------------------------------------------------
# Differentiation


def _diff(n: Node) -> Node:
    if isinstance(n, Const):
        return _ZERO
    if isinstance(n, Var):
        return _ONE
    if isinstance(n, Neg):
        return neg(_diff(n.a))
    if isinstance(n, Add):
        return add(_diff(n.a), _diff(n.b))
    if isinstance(n, Sub):
        return sub(_diff(n.a), _diff(n.b))
    if isinstance(n, Mul):
        return add(mul(_diff(n.a), n.b), mul(n.a, _diff(n.b)))
    if isinstance(n, Div):
        return div(sub(mul(_diff(n.a), n.b), mul(n.a, _diff(n.b))), pow_(n.b, 2))
    if isinstance(n, Pow):
        return mul(mul(Const(complex(n.k)), pow_(n.a, n.k - 1)), _diff(n.a))
    if isinstance(n, Call):
        inner = _diff(n.a)
        if n.func == "exp":
            outer: Node = Call("exp", n.a)
        elif n.func == "log":
            return div(inner, n.a)
        elif n.func == "sin":
            outer = Call("cos", n.a)
        elif n.func == "cos":
            outer = neg(Call("sin", n.a))
        elif n.func == "sinh":
            outer = Call("cosh", n.a)
        elif n.func == "cosh":
            outer = Call("sinh", n.a)
        elif n.func == "sqrt":
            return div(inner, mul(Const(2 + 0j), Call("sqrt", n.a)))
        else:  # pragma: no cover
            raise TypeError(n.func)
        return mul(outer, inner)
    raise TypeError(n)  # pragma: no cover


# ---------------------------------------------------------------------------
# Compilation to a stack program (consumed by the kernel backends)

OP_CONST = 0
OP_VAR = 1
OP_ADD = 2
OP_SUB = 3
OP_MUL = 4
OP_DIV = 5
OP_NEG = 6
OP_POW = 7
OP_EXP = 8
OP_LOG = 9
OP_SIN = 10
OP_COS = 11
OP_SINH = 12
OP_COSH = 13
OP_SQRT = 14

_FUNC_OPS = {
    "exp": OP_EXP,
    "log": OP_LOG,
    "sin": OP_SIN,
    "cos": OP_COS,
    "sinh": OP_SINH,
    "cosh": OP_COSH,
    "sqrt": OP_SQRT,
}


def _compile(root: Node) -> tuple[np.ndarray, np.ndarray, int]:
    ops: list[tuple[int, int]] = []
    consts: list[complex] = []

    def emit(n: Node) -> int:
        """Emit postorder code for n; returns the stack depth it needs."""
        if isinstance(n, Const):
            consts.append(n.value)
            ops.append((OP_CONST, len(consts) - 1))
            return 1
        if isinstance(n, Var):
            ops.append((OP_VAR, 0))
            return 1
        if isinstance(n, Neg):
            d = emit(n.a)
            ops.append((OP_NEG, 0))
            return d
        if isinstance(n, Pow):
            d = emit(n.a)
            ops.append((OP_POW, n.k))
            return d
        if isinstance(n, Call):
            d = emit(n.a)
            ops.append((_FUNC_OPS[n.func], 0))
            return d
        da = emit(n.a)
        db = emit(n.b)
        op = {Add: OP_ADD, Sub: OP_SUB, Mul: OP_MUL, Div: OP_DIV}[type(n)]
        ops.append((op, 0))
        return max(da, db + 1)

    depth = emit(root)
    code = np.array(ops, dtype=np.int64).reshape(-1, 2)
    return code, np.array(consts, dtype=np.complex128), depth


# ---------------------------------------------------------------------------
# Public interface


class Expression:
    """An immutable, evaluable, symbolically differentiable expression."""

    def __init__(self, root: Node):
        self._root = root
        self._code, self._consts, self._depth = _compile(root)

    @classmethod
    def parse(cls, source: str) -> "Expression":
        return cls(_Parser(source).parse())

    @property
    def root(self) -> Node:
        return self._root

    @cached_property
    def derivative(self) -> "Expression":
        return Expression(_diff(self._root))

    def __str__(self) -> str:
        return _to_str(self._root)

    def __repr__(self) -> str:
        return f"Expression({str(self)!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Expression) and self._root == other._root

    def __hash__(self) -> int:
        return hash(self._root)

    def __call__(self, z):
        return self.evaluate(z)

    def evaluate(self, z):
        """Evaluate at a complex scalar or ndarray of complex values.

        Raises :class:`EvaluationError` if any output is non-finite
        (poles, division by zero, overflow): NaN/inf never propagate
        silently.
        """
        scalar = np.isscalar(z) or getattr(z, "ndim", 0) == 0
        zs = np.ascontiguousarray(np.atleast_1d(np.asarray(z, dtype=np.complex128)))
        with np.errstate(all="ignore"):
            out = eval_program(self._code, self._consts, self._depth, zs.ravel())
        out = out.reshape(zs.shape)
        if not np.all(np.isfinite(out)):
            bad = zs.ravel()[~np.isfinite(out.ravel())][0]
            raise EvaluationError(f"non-finite value of {self} at z={bad}")
        if scalar:
            return complex(out.ravel()[0])
        return out


def parse(source: str) -> Expression:
    """Parse ``source`` into an :class:`Expression`."""
    return Expression.parse(source)


def differentiate(e: Expression) -> Expression:
    """Symbolic derivative d/dz of ``e``."""
    return e.derivative


def evaluate(e: Expression, z):
    return e.evaluate(z)


def evaluate_checked(e: Expression, z: complex) -> tuple[complex, bool]:
    """Evaluate at a scalar, reporting whether a branch cut was touched.

    Returns ``(value, branch_cut_warning)``; the flag is set when any
    ``log`` or ``sqrt`` argument lies on the principal cut (negative real
    axis, including 0 for ``log``).
    """
    warning = False

    def walk(n: Node) -> complex:
        nonlocal warning
        if isinstance(n, Const):
            return n.value
        if isinstance(n, Var):
            return complex(z)
        if isinstance(n, Neg):
            return -walk(n.a)
        if isinstance(n, Add):
            return walk(n.a) + walk(n.b)
        if isinstance(n, Sub):
            return walk(n.a) - walk(n.b)
        if isinstance(n, Mul):
            return walk(n.a) * walk(n.b)
        if isinstance(n, Div):
            num, den = walk(n.a), walk(n.b)
            if den == 0:
                raise EvaluationError(f"division by zero in {e} at z={z}")
            return num / den
        if isinstance(n, Pow):
            v = walk(n.a)
            if n.k < 0 and v == 0:
                raise EvaluationError(f"division by zero in {e} at z={z}")
            return v**n.k
        if isinstance(n, Call):
            v = walk(n.a)
            if n.func in ("log", "sqrt") and v.imag == 0 and v.real <= 0:
                if v == 0 and n.func == "log":
                    raise EvaluationError(f"log(0) in {e} at z={z}")
                warning = True
            return getattr(cmath, n.func)(v)
        raise TypeError(n)  # pragma: no cover

    value = walk(e.root)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise EvaluationError(f"non-finite value of {e} at z={z}")
    return value, warning


# Constructor helpers used by other modules to assemble data symbolically.

def const(v: complex) -> Expression:
    return Expression(Const(complex(v)))


def variable() -> Expression:
    return Expression(Var())


def combine(op, *exprs: Expression) -> Expression:
    """Apply a smart node constructor (add, sub, mul, div, neg, pow_) to
    expression operands."""
    return Expression(op(*[e.root for e in exprs]))
