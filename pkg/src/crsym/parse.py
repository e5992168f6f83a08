"""Surface syntax for defining functions and holomorphic vector fields.

Grammar (whitespace insignificant)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("-" | "+") unary | power
    power   := atom (("^" | "**") INT)?
    atom    := INT | "i" | "z<k>" | "w" | "d/dz<k>" | "d/dw"
             | ("conj" | "Re" | "Im" | "abs2") "(" expr ")" | "(" expr ")"

Conjugates are only reachable through ``conj``; ``Re``, ``Im`` and
``abs2`` are sugar lowered through the conjugation involution.  Division is
allowed by nonzero constants only.  Offsets in error messages are 1-based
character positions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .gaussian import GaussRational
from .poly import Poly, VarSet, conjugate

__all__ = [
    "ExprSyntaxError",
    "NotRealError",
    "NotHolomorphicError",
    "parse_expr",
    "parse_poly",
    "parse_defining_poly",
    "parse_field_components",
    "format_poly",
    "format_field",
]


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"syntax error at offset {offset}: {message}")
        self.offset = offset


class NotRealError(ValueError):
    def __init__(self, difference: Poly):
        super().__init__(f"expression is not real; conj(P) - P = {difference}")
        self.difference = difference


class NotHolomorphicError(ValueError):
    pass


# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class ImagUnit:
    pass


@dataclass(frozen=True)
class Var:
    name: str  # "z3" or "w"


@dataclass(frozen=True)
class Deriv:
    name: str  # target variable of d/d<name>


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


Node = Union[Num, ImagUnit, Var, Deriv, Call, BinOp, Neg, Pow]

_FUNCS = ("conj", "Re", "Im", "abs2")

_TOKEN = re.compile(
    r"\s*(?:(?P<deriv>d/d(?:z\d+|w)\b)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            offset = pos + len(src[pos:]) - len(src[pos:].lstrip()) + 1
            raise ExprSyntaxError(f"unexpected character {src[offset - 1]!r}", offset)
        kind = m.lastgroup
        text = m.group(kind)
        start = m.start(kind) + 1
        tokens.append((kind, text, start))
        pos = m.end()
    tokens.append(("end", "", len(src) + 1))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str):
        kind, got, off = self.take()
        if got != text:
            what = "end of input" if kind == "end" else repr(got)
            raise ExprSyntaxError(f"expected {text!r}, found {what}", off)

    def parse(self) -> Node:
        node = self.expr()
        kind, text, off = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {text!r}", off)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.peek()[1] == "-":
            self.take()
            return Neg(self.unary())
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            kind, text, off = self.take()
            if kind != "num":
                raise ExprSyntaxError("exponent must be a non-negative integer", off)
            return Pow(base, int(text))
        return base

    def atom(self) -> Node:
        kind, text, off = self.take()
        if kind == "num":
            return Num(int(text))
        if kind == "deriv":
            return Deriv(text[3:])
        if kind == "name":
            if text == "i":
                return ImagUnit()
            if text == "w" or re.fullmatch(r"z[1-9]\d*", text):
                return Var(text)
            if text in _FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(text, arg)
            raise ExprSyntaxError(f"unknown name {text!r}", off)
        if text == "(":
            node = self.expr()
            self.expect(")")
            return node
        what = "end of input" if kind == "end" else repr(text)
        raise ExprSyntaxError(f"unexpected {what}", off)


def parse_expr(src: str) -> Node:
    return _Parser(src).parse()


def _max_z_index(node: Node) -> int:
    if isinstance(node, Var):
        return int(node.name[1:]) if node.name != "w" else 0
    if isinstance(node, Deriv):
        return int(node.name[1:]) if node.name != "w" else 0
    if isinstance(node, (Call, Neg)):
        return _max_z_index(node.arg)
    if isinstance(node, Pow):
        return _max_z_index(node.base)
    if isinstance(node, BinOp):
        return max(_max_z_index(node.left), _max_z_index(node.right))
    return 0


# --------------------------------------------------------------------------
# lowering


class _FieldExpr:
    """Formal sum of coefficient * d/dx (holomorphic part, not yet Re'd)."""

    def __init__(self, comps: dict[int, Poly]):
        self.comps = comps


class _RealField:
    def __init__(self, comps: dict[int, Poly]):
        self.comps = comps


def _lower(node: Node, vs: VarSet):
    if isinstance(node, Num):
        return Poly.const(vs, node.value)
    if isinstance(node, ImagUnit):
        return Poly.const(vs, GaussRational(0, 1))
    if isinstance(node, Var):
        return Poly.var(vs, node.name)
    if isinstance(node, Deriv):
        idx = vs.w if node.name == "w" else vs.index(node.name)
        return _FieldExpr({idx: Poly.const(vs, 1)})
    if isinstance(node, Neg):
        return _scale_any(_lower(node.arg, vs), -1)
    if isinstance(node, Pow):
        base = _lower(node.base, vs)
        if not isinstance(base, Poly):
            raise ValueError("vector fields cannot be raised to a power")
        return base**node.exp
    if isinstance(node, Call):
        arg = _lower(node.arg, vs)
        if node.func == "Re" and isinstance(arg, _FieldExpr):
            return _RealField(arg.comps)
        if not isinstance(arg, Poly):
            raise ValueError(f"{node.func}() of a vector field is not allowed")
        if node.func == "conj":
            return conjugate(arg)
        if node.func == "Re":
            return arg.real_part()
        if node.func == "Im":
            return arg.imag_part()
        return arg * conjugate(arg)  # abs2
    if isinstance(node, BinOp):
        a = _lower(node.left, vs)
        b = _lower(node.right, vs)
        if node.op == "+":
            return _add_any(a, b, 1)
        if node.op == "-":
            return _add_any(a, b, -1)
        if node.op == "*":
            return _mul_any(a, b)
        if not isinstance(b, Poly) or not b.is_constant() or b.is_zero():
            raise ValueError("division is only allowed by nonzero constants")
        return _scale_any(a, b.constant_term().inverse())
    raise TypeError(node)


def _scale_any(x, c):
    if isinstance(x, Poly):
        return x.scale(c)
    return type(x)({k: v.scale(c) for k, v in x.comps.items()})


def _add_any(a, b, sign):
    if isinstance(a, Poly) and isinstance(b, Poly):
        return a + b.scale(sign)
    if type(a) is type(b):
        comps = dict(a.comps)
        for k, v in b.comps.items():
            comps[k] = comps[k] + v.scale(sign) if k in comps else v.scale(sign)
        return type(a)(comps)
    raise ValueError("cannot add a function and a vector field")


def _mul_any(a, b):
    if isinstance(a, Poly) and isinstance(b, Poly):
        return a * b
    if isinstance(a, Poly):
        a, b = b, a
    if isinstance(b, Poly):
        if isinstance(a, _RealField):
            if not (b.is_constant() and b.constant_term().is_real()):
                raise ValueError("Re(...) may only be scaled by a real constant")
        return type(a)({k: v * b for k, v in a.comps.items()})
    raise ValueError("cannot multiply two vector fields")


def _varset_for(node: Node, n: int | None) -> VarSet:
    used = _max_z_index(node)
    if n is None:
        n = max(used, 1)
    elif used > n:
        raise ValueError(f"expression uses z{used} but n={n}")
    return VarSet(n)


def parse_poly(src: str, n: int | None = None) -> Poly:
    """Parse and lower an arbitrary (not necessarily real) polynomial."""
    node = parse_expr(src)
    vs = _varset_for(node, n)
    out = _lower(node, vs)
    if not isinstance(out, Poly):
        raise ValueError("expected a function, found a vector field")
    return out


def parse_defining_poly(src: str, n: int | None = None) -> Poly:
    """Parse a defining polynomial and check that it is real."""
    P = parse_poly(src, n)
    diff = conjugate(P) - P
    if diff:
        raise NotRealError(diff)
    return P


def parse_field_components(src: str, n: int | None = None) -> tuple[VarSet, tuple[Poly, ...]]:
    """Parse ``Re(f1*d/dz1 + ... + g*d/dw)``; returns holomorphic components."""
    node = parse_expr(src)
    vs = _varset_for(node, n)
    out = _lower(node, vs)
    if isinstance(out, _FieldExpr):
        raise ValueError("a real vector field must be written as Re(...)")
    if not isinstance(out, _RealField):
        raise ValueError("expected a vector field Re(... d/dz ...)")
    zero = Poly.zero(vs)
    comps = tuple(out.comps.get(i, zero) for i in vs.holomorphic_indices())
    for c in comps:
        if not c.is_holomorphic():
            raise NotHolomorphicError(f"coefficient {c} depends on conjugate variables")
    return vs, comps


# --------------------------------------------------------------------------
# printing


def _mono_str(vs: VarSet, e) -> str:
    parts = []
    n = vs.n
    for i, k in enumerate(e):
        if not k:
            continue
        if i < n:
            base = f"z{i + 1}"
        elif i < 2 * n:
            base = f"conj(z{i - n + 1})"
        elif i == 2 * n:
            base = "w"
        else:
            base = "conj(w)"
        parts.append(base if k == 1 else f"{base}^{k}")
    return "*".join(parts)


def _coeff_sign_str(c: GaussRational) -> tuple[str, str]:
    """(sign, magnitude text) so that the term reads ``sign magnitude*mono``."""
    if c.im == 0:
        sign = "-" if c.re < 0 else "+"
        return sign, str(GaussRational(abs(c.re)))
    if c.re == 0:
        sign = "-" if c.im < 0 else "+"
        return sign, str(GaussRational(0, abs(c.im)))
    return "+", f"({c})"


def format_poly(P: Poly) -> str:
    if not P.terms:
        return "0"
    out = []
    for e, c in P.sorted_terms():
        sign, mag = _coeff_sign_str(c)
        mono = _mono_str(P.vars, e)
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def format_field(vs: VarSet, comps) -> str:
    names = [f"z{j}" for j in range(1, vs.n + 1)] + ["w"]
    parts = []
    for name, c in zip(names, comps):
        if c:
            parts.append(f"({format_poly(c)})*d/d{name}")
    if not parts:
        return "Re(0*d/dw)"
    return "Re(" + " + ".join(parts) + ")"
