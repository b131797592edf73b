"""Element expressions.

Grammar::

    expr   := '-'? term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)? "'"?
    atom   := ident | 'S' | 'ind' | 'Lam' | 'u' nat | scalar | '(' expr ')' | '[' word ']'
    scalar := nat ('/' nat)? | 'sqrt' '(' nat ')' | 'i'
    word   := (symbol (',' symbol)*)?

``[w]`` is the indicator of the cylinder of ``w`` (symbol names as in the
system file); ``[]`` is the unit.  A postfix ``'`` takes the adjoint, applied
after the power, so ``S^2'`` is ``S*^2``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .crossed import CrossedElement, S, adjoint, func, scalar
from .cylfun import CylFun, indicator, quasi_basis
from .scalar import I, ONE, RadScalar, sqrt_nonneg_rational

__all__ = ["ExprError", "Node", "parse_ast", "lower", "parse_expression", "format_element", "format_function"]

RESERVED = {"S", "ind", "Lam", "sqrt", "i"}
_U = re.compile(r"u(\d+)\Z")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ExprError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Node:
    kind: str  # add, sub, neg, mul, pow, adj, name, S, ind, Lam, u, num, sqrt, i, word
    pos: int
    args: tuple = ()
    value: object = None


def _tokens(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            out.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("id", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = repr(value) if value else kind
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise ExprError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def at(self, value) -> bool:
        tok = self.peek()
        return tok[0] == "op" and tok[1] == value

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expr(self) -> Node:
        if self.at("-"):
            pos = self.take()[2]
            node = Node("neg", pos, (self.term(),))
        else:
            node = self.term()
        while self.at("+") or self.at("-"):
            op, pos = self.take()[1:]
            node = Node("add" if op == "+" else "sub", pos, (node, self.term()))
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.at("*"):
            pos = self.take()[2]
            node = Node("mul", pos, (node, self.factor()))
        return node

    def factor(self) -> Node:
        node = self.atom()
        if self.at("^"):
            pos = self.take()[2]
            node = Node("pow", pos, (node,), int(self.take("num")[1]))
        if self.at("'"):
            node = Node("adj", self.take()[2], (node,))
        return node

    def atom(self) -> Node:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            num = int(val)
            if self.at("/"):
                self.take()
                den_tok = self.take("num")
                if int(den_tok[1]) == 0:
                    raise ExprError("malformed scalar: zero denominator", den_tok[2])
                return Node("num", pos, value=Fraction(num, int(den_tok[1])))
            return Node("num", pos, value=Fraction(num))
        if kind == "id":
            self.take()
            if val == "sqrt":
                self.take("op", "(")
                arg = self.take("num")
                self.take("op", ")")
                return Node("sqrt", pos, value=int(arg[1]))
            if val in ("S", "ind", "Lam", "i"):
                return Node(val, pos)
            m = _U.match(val)
            if m:
                return Node("u", pos, value=int(m.group(1)))
            return Node("name", pos, value=val)
        if kind == "op" and val == "(":
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        if kind == "op" and val == "[":
            self.take()
            names = []
            if not self.at("]"):
                names.append(self._symbol())
                while self.at(","):
                    self.take()
                    names.append(self._symbol())
            self.take("op", "]")
            return Node("word", pos, value=tuple(names))
        got = "end of input" if kind == "end" else repr(val)
        raise ExprError(f"expected an operand, found {got}", pos)

    def _symbol(self):
        kind, val, pos = self.peek()
        if kind not in ("num", "id"):
            raise ExprError(f"expected a symbol name, found {val!r}", pos)
        self.take()
        return (val, pos)


def parse_ast(text: str) -> Node:
    return _Parser(text).parse()


def lower(node: Node, sys) -> CrossedElement:
    """Evaluate an AST over a system (anything with ``matrix``, ``symbols`` and ``functions``)."""
    A = sys.matrix
    k = node.kind
    if k in ("add", "sub", "mul"):
        x, y = lower(node.args[0], sys), lower(node.args[1], sys)
        return x + y if k == "add" else x - y if k == "sub" else x * y
    if k == "neg":
        return -lower(node.args[0], sys)
    if k == "pow":
        return lower(node.args[0], sys) ** node.value
    if k == "adj":
        return adjoint(lower(node.args[0], sys))
    if k == "S":
        return S(A)
    if k == "ind":
        return func(quasi_basis(A).indE)
    if k == "Lam":
        return func(quasi_basis(A).Lam)
    if k == "u":
        us = quasi_basis(A).u
        if node.value >= len(us):
            raise ExprError(f"unknown identifier u{node.value}: the quasi-basis has {len(us)} elements", node.pos)
        return func(us[node.value])
    if k == "num":
        return scalar(A, node.value)
    if k == "sqrt":
        return scalar(A, sqrt_nonneg_rational(node.value))
    if k == "i":
        return scalar(A, I)
    if k == "name":
        f = sys.functions.get(node.value)
        if f is None:
            raise ExprError(f"unknown identifier {node.value!r}", node.pos)
        return func(f)
    if k == "word":
        index = {name: j for j, name in enumerate(sys.symbols)}
        w = []
        for name, pos in node.value:
            if name not in index:
                raise ExprError(f"unknown symbol {name!r}", pos)
            w.append(index[name])
        if not A.is_admissible(w):
            raise ExprError(f"inadmissible word [{','.join(n for n, _ in node.value)}]", node.pos)
        return func(indicator(A, w))
    raise AssertionError(k)


def parse_expression(text: str, sys) -> CrossedElement:
    return lower(parse_ast(text), sys)


# -- printing -----------------------------------------------------------------


def _scalar_text(c: RadScalar) -> str:
    lit = c.to_literal()
    return lit if re.fullmatch(r"[\w/()*]+", lit) else f"({lit})"


def format_function(f: CylFun, symbols: Optional[Sequence[str]] = None) -> str:
    names = list(symbols) if symbols is not None else [str(j) for j in range(f.matrix.n_symbols)]
    f = f.coarsen()
    parts = []
    for w, v in f.items():
        if not w:
            parts.append(_scalar_text(v))
        elif v == ONE:
            parts.append(f"[{','.join(names[s] for s in w)}]")
        else:
            parts.append(f"{_scalar_text(v)}*[{','.join(names[s] for s in w)}]")
    if not parts:
        return "0"
    return parts[0] if len(parts) == 1 else "(" + " + ".join(parts) + ")"


def _power(n: int, star: bool) -> str:
    if n == 0:
        return ""
    base = "S" if n == 1 else f"S^{n}"
    return base + ("'" if star else "")


def format_element(x: CrossedElement, symbols: Optional[Sequence[str]] = None) -> str:
    """Render ``x`` in the expression grammar; :func:`parse_expression` reads it back."""
    out = []
    for t in x.terms:
        factors = []
        a, b = format_function(t.a, symbols), format_function(t.b, symbols)
        if a != "1":
            factors.append(a)
        factors += [p for p in (_power(t.n, False), _power(t.m, True)) if p]
        if b != "1":
            factors.append(b)
        out.append("*".join(factors) or "1")
    return " + ".join(out) or "0"
