"""Ring-expression language.

    expr := term { "x" term } ;
    term := "Z" nat | "GF4" | "T" nat "(" expr ")" | "M" nat "(" expr ")"
          | "TE" "(" expr ")" | "P" nat "(" expr ")" | "(" expr ")" ;
    nat  := nonzero digit followed by digits.

Whitespace between tokens is ignored and products associate to the left.
``P m (R)`` is the truncated polynomial ring R[x]/(x^m).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import OrderOverflow, ParseError, RingError
from .ring import (
    DEFAULT_ORDER_CAP,
    FiniteRing,
    make_full_matrix,
    make_gf4,
    make_product,
    make_trivial_extension,
    make_truncated_poly,
    make_upper_triangular,
    make_zmod,
)

GRAMMAR = """\
expr := term { "x" term } ;
term := "Z" nat | "GF4" | "T" nat "(" expr ")" | "M" nat "(" expr ")" | "TE" "(" expr ")" | "P" nat "(" expr ")" | "(" expr ")" ;
nat := nonzero digit followed by digits."""

Span = tuple[int, int]


@dataclass(frozen=True)
class Zmod:
    n: int
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class GF4:
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Product:
    left: "RingExpr"
    right: "RingExpr"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Triangular:
    n: int
    inner: "RingExpr"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class FullMatrix:
    n: int
    inner: "RingExpr"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class TrivialExt:
    inner: "RingExpr"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class TruncPoly:
    m: int
    inner: "RingExpr"
    span: Span = field(default=(0, 0), compare=False)


RingExpr = Zmod | GF4 | Product | Triangular | FullMatrix | TrivialExt | TruncPoly


def _describe(text: str, pos: int) -> str:
    return repr(text[pos]) if pos < len(text) else "end of input"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, expected: str):
        offset = len(self.text[:self.pos].encode("utf-8"))
        raise ParseError(offset, expected, _describe(self.text, self.pos))

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, token: str) -> bool:
        self.skip()
        return self.text.startswith(token, self.pos)

    def expect(self, token: str) -> None:
        if not self.peek(token):
            self.fail(repr(token))
        self.pos += len(token)

    def nat(self) -> int:
        self.skip()
        start = self.pos
        if start >= len(self.text) or self.text[start] not in "123456789":
            self.fail("nonzero digit")
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])

    def expr(self) -> RingExpr:
        self.skip()
        start = self.pos
        node = self.term()
        while self.peek("x"):
            self.pos += 1
            right = self.term()
            node = Product(node, right, (start, self.pos))
        return node

    def wrapped(self) -> RingExpr:
        self.expect("(")
        inner = self.expr()
        self.expect(")")
        return inner

    def term(self) -> RingExpr:
        self.skip()
        start = self.pos
        if self.peek("GF4"):
            self.pos += 3
            return GF4((start, self.pos))
        if self.peek("TE"):
            self.pos += 2
            inner = self.wrapped()
            return TrivialExt(inner, (start, self.pos))
        if self.peek("("):
            return self.wrapped()
        for head, kind in (("T", Triangular), ("M", FullMatrix), ("P", TruncPoly)):
            if self.peek(head):
                self.pos += 1
                n = self.nat()
                inner = self.wrapped()
                return kind(n, inner, (start, self.pos))
        if self.peek("Z"):
            self.pos += 1
            n = self.nat()
            return Zmod(n, (start, self.pos))
        self.fail("ring term")


def parse_ring_expr(text: str) -> RingExpr:
    """Parse a ring expression; raises ParseError at the first error."""
    p = _Parser(text)
    node = p.expr()
    p.skip()
    if p.pos != len(text):
        p.fail("'x' or end of input")
    return node


def format_expr(node: RingExpr) -> str:
    """Canonical text: single spaces around x, parentheses only for right-nested products."""
    if isinstance(node, Zmod):
        return f"Z{node.n}"
    if isinstance(node, GF4):
        return "GF4"
    if isinstance(node, Product):
        right = format_expr(node.right)
        if isinstance(node.right, Product):
            right = f"({right})"
        return f"{format_expr(node.left)} x {right}"
    if isinstance(node, Triangular):
        return f"T{node.n}({format_expr(node.inner)})"
    if isinstance(node, FullMatrix):
        return f"M{node.n}({format_expr(node.inner)})"
    if isinstance(node, TrivialExt):
        return f"TE({format_expr(node.inner)})"
    if isinstance(node, TruncPoly):
        return f"P{node.m}({format_expr(node.inner)})"
    raise TypeError(f"not a ring expression: {node!r}")


def predicted_order(node: RingExpr) -> int:
    if isinstance(node, Zmod):
        return node.n
    if isinstance(node, GF4):
        return 4
    if isinstance(node, Product):
        return predicted_order(node.left) * predicted_order(node.right)
    if isinstance(node, Triangular):
        return predicted_order(node.inner) ** (node.n * (node.n + 1) // 2)
    if isinstance(node, FullMatrix):
        return predicted_order(node.inner) ** (node.n * node.n)
    if isinstance(node, TrivialExt):
        return predicted_order(node.inner) ** 2
    return predicted_order(node.inner) ** node.m


def build(node: RingExpr, max_order: int | None = None) -> FiniteRing:
    """Construct the ring an expression denotes.

    Orders are predicted before any table is touched, so an oversized
    expression fails fast with the span of the offending node.
    """
    limit = max_order
    try:
        if isinstance(node, Zmod):
            return make_zmod(node.n, max_order=limit)
        if isinstance(node, GF4):
            return make_gf4()
        if isinstance(node, Product):
            _guard(node, limit)
            return make_product(build(node.left, limit), build(node.right, limit), max_order=limit)
        _guard(node, limit)
        inner = build(node.inner, limit)
        if isinstance(node, Triangular):
            return make_upper_triangular(inner, node.n, max_order=limit)
        if isinstance(node, FullMatrix):
            return make_full_matrix(inner, node.n, max_order=limit)
        if isinstance(node, TrivialExt):
            return make_trivial_extension(inner, max_order=limit)
        return make_truncated_poly(inner, node.m, max_order=limit)
    except RingError as exc:
        if getattr(exc, "span", None) is None:
            exc.span = node.span
        raise


def _guard(node: RingExpr, limit: int | None) -> None:
    cap = DEFAULT_ORDER_CAP if limit is None else limit
    order = predicted_order(node)
    if order <= cap:
        return
    # blame the innermost subexpression that is already too large
    for child in _children(node):
        if predicted_order(child) > cap:
            _guard(child, limit)
    raise OrderOverflow(order, cap, span=node.span)


def _children(node: RingExpr) -> tuple:
    if isinstance(node, Product):
        return (node.left, node.right)
    inner = getattr(node, "inner", None)
    return () if inner is None else (inner,)


def parse_and_build(text: str, max_order: int | None = None) -> FiniteRing:
    return build(parse_ring_expr(text), max_order=max_order)


def random_ast(rng: random.Random, depth: int = 3) -> RingExpr:
    """A random expression; sizes are not bounded, only syntax is exercised."""
    leaf = depth <= 0 or rng.random() < 0.35
    if leaf:
        return GF4() if rng.random() < 0.2 else Zmod(rng.randint(1, 99))
    kind = rng.choice(["product", "T", "M", "TE", "P"])
    if kind == "product":
        return Product(random_ast(rng, depth - 1), random_ast(rng, depth - 1))
    inner = random_ast(rng, depth - 1)
    if kind == "T":
        return Triangular(rng.randint(1, 12), inner)
    if kind == "M":
        return FullMatrix(rng.randint(1, 12), inner)
    if kind == "TE":
        return TrivialExt(inner)
    return TruncPoly(rng.randint(1, 12), inner)
