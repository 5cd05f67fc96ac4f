"""Symbol expressions: parsing, printing, vectorized evaluation and torus invariance.

Grammar (EBNF, see docs/grammar.md)::

    expr    = term { ("+" | "-") term } ;
    term    = unary { ("*" | "/") unary } ;
    unary   = ("+" | "-") unary | power ;
    power   = atom [ "^" unary ] ;          (* right associative, integer exponent *)
    atom    = number | name | name "(" expr ")" | "(" expr ")" ;

Names are the variables ``z1..zn`` (complex), ``r1..rn`` (moduli), ``rho2``
(sum of squared moduli), the constants ``pi``, ``e`` and ``i``, and the
functions exp, sin, cos, sqrt, atan, re, im, conj, abs.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from .errors import EvaluationError, SymbolSyntaxError

FUNCTIONS = ("exp", "sin", "cos", "sqrt", "atan", "re", "im", "conj", "abs")
CONSTANTS = {"pi": math.pi, "e": math.e, "i": 1j}

# guards real-only functions against rounding noise in the imaginary part
_REAL_TOL = 1e-12


class RadialFlag(enum.Enum):
    SYNTACTICALLY_RADIAL = "radial"
    SYNTACTICALLY_GENERAL = "general"
    UNKNOWN = "unknown"


# --- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    kind: str  # "z", "r" or "rho2"
    index: int = 0  # 1-based; 0 for rho2


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Num, Const, Var, Neg, BinOp, Pow, Call]


# --- tokenizer ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int  # byte offset


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise SymbolSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, match.group(), _byte_offset(text, pos)))
        pos = match.end()
    tokens.append(_Token("end", "", _byte_offset(text, len(text))))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


# --- parser -------------------------------------------------------------------

_VAR_RE = re.compile(r"([zr])([1-9][0-9]*)")


class _Parser:
    def __init__(self, text: str, n: int):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.n = n

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str):
        if self.tok.text != text or self.tok.kind == "end":
            found = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            raise SymbolSyntaxError(f"expected {text!r}, found {found}", self.tok.offset)
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise SymbolSyntaxError(f"unexpected {self.tok.text!r}", self.tok.offset)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            operand = self.unary()
            return Neg(operand) if op == "-" else operand
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            caret = self.advance()
            exponent_node = self.unary()
            exponent = _constant_integer(exponent_node)
            if exponent is None:
                raise SymbolSyntaxError("exponent must be a constant integer", caret.offset)
            return Pow(base, exponent)
        return base

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "number":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "name":
            self.advance()
            return self.name(tok)
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise SymbolSyntaxError(f"unexpected {found}", tok.offset)

    def name(self, tok: _Token) -> Node:
        name = tok.text
        if name in FUNCTIONS:
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Call(name, arg)
        if name in CONSTANTS:
            return Const(name)
        if name == "rho2":
            return Var("rho2")
        match = _VAR_RE.fullmatch(name)
        if match:
            index = int(match.group(2))
            if index > self.n:
                raise SymbolSyntaxError(
                    f"variable {name} exceeds dimension n={self.n}", tok.offset
                )
            return Var(match.group(1), index)
        raise SymbolSyntaxError(f"unknown name {name!r}", tok.offset)


def _constant_integer(node: Node):
    """Fold a constant integer exponent such as ``2``, ``-3`` or ``(2^2)``."""
    if isinstance(node, Num):
        return int(node.value) if float(node.value).is_integer() else None
    if isinstance(node, Neg):
        inner = _constant_integer(node.operand)
        return None if inner is None else -inner
    if isinstance(node, Pow):
        base = _constant_integer(node.base)
        if base is None or node.exponent < 0:
            return None
        return base**node.exponent
    return None


# --- printing -----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def to_text(node: Node) -> str:
    """Print an AST back to DSL text; ``parse(to_text(t))`` reproduces ``t``."""
    return _print(node, 0)


def _print(node: Node, parent: int) -> str:
    if isinstance(node, Num):
        text = repr(node.value)
        if text in ("inf", "nan"):
            raise ValueError(f"cannot print non-finite constant {text}")
        return text
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Var):
        return "rho2" if node.kind == "rho2" else f"{node.kind}{node.index}"
    if isinstance(node, Call):
        return f"{node.func}({_print(node.arg, 0)})"
    if isinstance(node, Neg):
        text = "-" + _print(node.operand, 3)
        return f"({text})" if parent > 1 else text
    if isinstance(node, Pow):
        exponent = str(node.exponent) if node.exponent >= 0 else f"({node.exponent})"
        text = f"{_print(node.base, 5)}^{exponent}"
        return f"({text})" if parent >= 5 else text
    if isinstance(node, BinOp):
        prec = _PREC[node.op]
        left = _print(node.left, prec)
        # left-associative: a right operand of equal precedence needs brackets
        right = _print(node.right, prec + 1)
        text = f"{left} {node.op} {right}"
        return f"({text})" if prec < parent else text
    raise TypeError(f"not an AST node: {node!r}")


# --- symbol object ------------------------------------------------------------


def _references_z(node: Node) -> bool:
    if isinstance(node, Var):
        return node.kind == "z"
    if isinstance(node, (Neg,)):
        return _references_z(node.operand)
    if isinstance(node, Pow):
        return _references_z(node.base)
    if isinstance(node, Call):
        return _references_z(node.arg)
    if isinstance(node, BinOp):
        return _references_z(node.left) or _references_z(node.right)
    return False


@dataclass(frozen=True)
class SymbolExpr:
    """A parsed symbol a(z) on C^n.

    Instances are callable on arrays of points of shape ``(..., n)`` and
    return complex arrays of shape ``(...)``.
    """

    ast: Node
    n: int
    radial_flag: RadialFlag
    text: str = ""

    @property
    def is_radial(self) -> bool:
        return self.radial_flag is RadialFlag.SYNTACTICALLY_RADIAL

    def __call__(self, z) -> np.ndarray:
        return evaluate(self, z)

    def __str__(self) -> str:
        return to_text(self.ast)


def parse(text: str, n: int) -> SymbolExpr:
    """Parse DSL ``text`` into a symbol on C^n."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    ast = _Parser(text, n).parse()
    flag = RadialFlag.SYNTACTICALLY_GENERAL if _references_z(ast) else RadialFlag.SYNTACTICALLY_RADIAL
    return SymbolExpr(ast, n, flag, text)


# --- evaluation ---------------------------------------------------------------


class _Env:
    def __init__(self, z: np.ndarray):
        self.z = z
        self._r = {}
        self._rho2 = None

    def r(self, j: int) -> np.ndarray:
        if j not in self._r:
            self._r[j] = np.abs(self.z[..., j - 1])
        return self._r[j]

    def rho2(self) -> np.ndarray:
        if self._rho2 is None:
            self._rho2 = np.sum(self.z.real**2 + self.z.imag**2, axis=-1)
        return self._rho2


def _real_part(x, func: str) -> np.ndarray:
    x = np.asarray(x)
    if np.iscomplexobj(x):
        if np.any(np.abs(x.imag) > _REAL_TOL * np.maximum(1.0, np.abs(x.real))):
            raise EvaluationError(f"{func} requires a real argument")
        return x.real
    return x


def _eval(node: Node, env: _Env):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Var):
        if node.kind == "z":
            return env.z[..., node.index - 1]
        if node.kind == "r":
            return env.r(node.index)
        return env.rho2()
    if isinstance(node, Neg):
        return -_eval(node.operand, env)
    if isinstance(node, BinOp):
        left = _eval(node.left, env)
        right = _eval(node.right, env)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if np.any(np.asarray(right) == 0):
            raise EvaluationError("division by zero")
        return left / right
    if isinstance(node, Pow):
        base = _eval(node.base, env)
        if node.exponent < 0:
            if np.any(np.asarray(base) == 0):
                raise EvaluationError("zero raised to a negative power")
            return 1.0 / _int_power(base, -node.exponent)
        return _int_power(base, node.exponent)
    if isinstance(node, Call):
        arg = _eval(node.arg, env)
        return _call(node.func, arg)
    raise TypeError(f"not an AST node: {node!r}")


def _int_power(base, k: int):
    # repeated multiplication keeps integer powers exact for complex bases
    if k == 0:
        return np.ones_like(base) if isinstance(base, np.ndarray) else 1.0
    result = None
    factor = base
    while k:
        if k & 1:
            result = factor if result is None else result * factor
        k >>= 1
        if k:
            factor = factor * factor
    return result


def _call(func: str, arg):
    if func == "exp":
        return np.exp(arg)
    if func == "sin":
        return np.sin(arg)
    if func == "cos":
        return np.cos(arg)
    if func == "re":
        return np.real(arg)
    if func == "im":
        return np.imag(arg)
    if func == "conj":
        return np.conj(arg)
    if func == "abs":
        return np.abs(arg)
    if func == "sqrt":
        x = _real_part(arg, "sqrt")
        if np.any(x < 0):
            raise EvaluationError("sqrt of a negative number")
        return np.sqrt(x)
    if func == "atan":
        return np.arctan(_real_part(arg, "atan"))
    raise EvaluationError(f"unknown function {func!r}")


def _as_points(z, n: int) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0 or z.shape[-1] != n:
        raise ValueError(f"points must have trailing dimension n={n}, got shape {z.shape}")
    return z


def evaluate(expr: SymbolExpr, z) -> np.ndarray:
    """Evaluate ``expr`` at one point (shape ``(n,)``) or a batch (``(..., n)``)."""
    z = _as_points(z, expr.n)
    with np.errstate(all="ignore"):
        value = _eval(expr.ast, _Env(z))
    value = np.broadcast_to(np.asarray(value, dtype=complex), z.shape[:-1])
    if not np.all(np.isfinite(value)):
        raise EvaluationError(f"non-finite value of symbol {expr.text or to_text(expr.ast)!r}")
    return value.copy() if value.ndim else complex(value)


# --- torus action -------------------------------------------------------------


def apply_torus(angles: Sequence[float], z) -> np.ndarray:
    """The diagonal torus action (t, z) -> (e^{i t_1} z_1, ..., e^{i t_n} z_n).

    ``angles`` and ``z`` may be batches with matching leading shapes.
    """
    angles = np.asarray(angles, dtype=float)
    z = np.asarray(z, dtype=complex)
    if angles.shape[-1:] != z.shape[-1:]:
        raise ValueError("torus element and point have different lengths")
    return z * np.exp(1j * angles)


def make_rng(seed: int) -> np.random.Generator:
    """The repo-wide generator: numpy PCG64 seeded with ``seed``.

    PCG64 output streams are fixed by numpy's compatibility policy, so seeded
    samples agree bit-for-bit across platforms.
    """
    return np.random.Generator(np.random.PCG64(seed))


def sample_polydisk(rng: np.random.Generator, n: int, count: int, radius: float = 3.0) -> np.ndarray:
    """``count`` points uniform in the polydisk of ``radius`` with no zero coordinate."""
    moduli = radius * np.sqrt(rng.uniform(0.0, 1.0, size=(count, n)))
    # uniform(0, 1) may return exactly 0; nudge such draws off the axes
    moduli = np.where(moduli == 0.0, radius * 1e-6, moduli)
    phases = rng.uniform(0.0, 2 * math.pi, size=(count, n))
    return moduli * np.exp(1j * phases)


@dataclass(frozen=True)
class InvarianceResult:
    invariant: bool
    max_deviation: float
    trials: int


def check_torus_invariance(
    expr: SymbolExpr, trials: int = 200, seed: int = 0, tol: float = 1e-10
) -> InvarianceResult:
    """Numerically test a(tz) == a(z) on seeded random torus elements and points."""
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = make_rng(seed)
    z = sample_polydisk(rng, expr.n, trials)
    t = rng.uniform(0.0, 2 * math.pi, size=(trials, expr.n))
    deviation = np.abs(evaluate(expr, apply_torus(t, z)) - evaluate(expr, z))
    max_dev = float(np.max(deviation))
    return InvarianceResult(max_dev <= tol, max_dev, trials)


def free_variables(node: Node) -> Tuple[Var, ...]:
    """Distinct variables referenced by ``node``, in first-seen order."""
    seen = []

    def walk(nd):
        if isinstance(nd, Var):
            if nd not in seen:
                seen.append(nd)
        elif isinstance(nd, Neg):
            walk(nd.operand)
        elif isinstance(nd, Pow):
            walk(nd.base)
        elif isinstance(nd, Call):
            walk(nd.arg)
        elif isinstance(nd, BinOp):
            walk(nd.left)
            walk(nd.right)

    walk(node)
    return tuple(seen)
