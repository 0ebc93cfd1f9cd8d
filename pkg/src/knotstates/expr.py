"""A small expression language over the knot families.

::

    expr := term (('#' | '|') term)*          left-associative
    term := atom | func | '(' expr ')'
    func := 'closure(' expr ')' | 'pow#(' expr ',' int ')' | 'powU(' expr ',' int ')'
    atom := 'U' | FAM '(' int ')'             FAM in T L W H O TK

``#`` is connected sum and ``|`` disjoint union.  Expressions evaluate to a
shadow (then brute force) or straight to a polynomial through the
composition laws.
"""
from __future__ import annotations

import dataclasses
import re
from functools import reduce

from .algebra import ONE, X, Polynomial
from .diagram import (
    EMPTY,
    CutPoint,
    Shadow,
    TooManyCrossings,
    connected_sum,
    crossing_guard,
    disjoint_union,
    loop_point,
    self_closure,
    state_sum,
)
from .families import EXPR_SYMBOLS, FamilySpec, build, crossing_count
from .formulas import (
    GENERATOR_COMPONENTS,
    Components,
    csum_poly,
    family_poly_closed,
    generated_poly,
)


class ExprError(ValueError):
    pass


class ExprSyntaxError(ExprError, SyntaxError):
    """Malformed expression; ``offset`` is the 0-indexed byte position."""

    def __init__(self, message: str, offset: int):
        ValueError.__init__(self, f"{message} at offset {offset}")
        self.msg = message
        self.offset = offset

    def __str__(self) -> str:
        return f"{self.msg} at offset {self.offset}"


class UnknownFamily(ExprError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown family {name!r} at offset {offset}")
        self.name = name
        self.offset = offset


class ClosureUnsupported(ExprError):
    """The closure's argument carries no pair of cut points to reconnect."""


class EmptySummand(ExprError):
    """A connected sum has an empty diagram on one side."""


@dataclasses.dataclass(frozen=True)
class Atom:
    spec: FamilySpec


@dataclasses.dataclass(frozen=True)
class CSum:
    left: KnotExpr
    right: KnotExpr


@dataclasses.dataclass(frozen=True)
class Disjoint:
    left: KnotExpr
    right: KnotExpr


@dataclasses.dataclass(frozen=True)
class Power:
    child: KnotExpr
    n: int
    kind: str  # "csum" or "disjoint"

    def __post_init__(self):
        if self.n < 0:
            raise ExprError("power must be nonnegative")
        if self.kind not in ("csum", "disjoint"):
            raise ExprError(f"unknown power kind {self.kind!r}")


@dataclasses.dataclass(frozen=True)
class Closure:
    child: KnotExpr


KnotExpr = Atom | CSum | Disjoint | Power | Closure

SYMBOL_OF = {v: k for k, v in EXPR_SYMBOLS.items()}

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<punct>[#|(),]))")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", _byte(text, bad))
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        pos = m.end()
        if kind == "name" and value == "pow" and text.startswith("#", pos):
            value, pos = "pow#", pos + 1
        out.append((kind, value, _byte(text, start)))
    out.append(("end", "", _byte(text, len(text))))
    return out


def _byte(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, value: str | None = None, kind: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise ExprSyntaxError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> KnotExpr:
        node = self.term()
        while self.peek()[1] in ("#", "|") and self.peek()[0] == "punct":
            op = self.take()[1]
            right = self.term()
            node = CSum(node, right) if op == "#" else Disjoint(node, right)
        return node

    def term(self) -> KnotExpr:
        kind, value, off = self.peek()
        if kind == "punct" and value == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if kind != "name":
            got = repr(value) if kind != "end" else "end of input"
            raise ExprSyntaxError(f"expected a knot, found {got}", off)
        self.take()
        if value == "closure":
            self.take("(")
            node = self.expr()
            self.take(")")
            return Closure(node)
        if value in ("pow#", "powU"):
            self.take("(")
            node = self.expr()
            self.take(",")
            n = int(self.take(kind="int")[1])
            self.take(")")
            return Power(node, n, "csum" if value == "pow#" else "disjoint")
        if value == "U":
            return Atom(FamilySpec("unknot", 0))
        if value not in EXPR_SYMBOLS:
            raise UnknownFamily(value, off)
        self.take("(")
        n = int(self.take(kind="int")[1])
        self.take(")")
        return Atom(FamilySpec(EXPR_SYMBOLS[value], n))


def parse(text: str) -> KnotExpr:
    p = _Parser(text)
    node = p.expr()
    kind, value, off = p.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected {value!r}", off)
    return node


def render(e: KnotExpr) -> str:
    """Canonical text; parentheses appear only around a binary right operand."""
    if isinstance(e, Atom):
        if e.spec.family == "unknot":
            return "U"
        return f"{SYMBOL_OF[e.spec.family]}({e.spec.n})"
    if isinstance(e, (CSum, Disjoint)):
        op = "#" if isinstance(e, CSum) else "|"
        right = render(e.right)
        if isinstance(e.right, (CSum, Disjoint)):
            right = f"({right})"
        return f"{render(e.left)} {op} {right}"
    if isinstance(e, Power):
        name = "pow#" if e.kind == "csum" else "powU"
        return f"{name}({render(e.child)}, {e.n})"
    if isinstance(e, Closure):
        return f"closure({render(e.child)})"
    raise TypeError(e)


def has_cuts(e: KnotExpr) -> bool:
    """Whether the diagram of ``e`` carries an entry and an exit cut point."""
    if isinstance(e, Atom):
        return e.spec.family != "twist-knot"
    if isinstance(e, CSum):
        return has_cuts(e.left) and has_cuts(e.right)
    if isinstance(e, Power):
        return e.kind == "csum" and has_cuts(e.child)
    return False


def crossings(e: KnotExpr) -> int:
    if isinstance(e, Atom):
        return crossing_count(e.spec)
    if isinstance(e, (CSum, Disjoint)):
        return crossings(e.left) + crossings(e.right)
    if isinstance(e, Power):
        return e.n * crossings(e.child)
    return crossings(e.child)


def _is_empty(e: KnotExpr) -> bool:
    if isinstance(e, Disjoint):
        return _is_empty(e.left) and _is_empty(e.right)
    if isinstance(e, Power):
        return e.kind == "disjoint" and (e.n == 0 or _is_empty(e.child))
    return False


def check_well_formed(e: KnotExpr) -> None:
    """Reject empty summands and closures without cut points anywhere in the tree."""
    if isinstance(e, Closure) and not has_cuts(e.child):
        raise ClosureUnsupported(f"{render(e.child)} has no cut points")
    if isinstance(e, CSum):
        if _is_empty(e.left) or _is_empty(e.right):
            raise EmptySummand(render(e))
    if isinstance(e, Power) and e.kind == "csum" and e.n and _is_empty(e.child):
        raise EmptySummand(render(e))
    for child in (getattr(e, "left", None), getattr(e, "right", None), getattr(e, "child", None)):
        if child is not None:
            check_well_formed(child)


def _any_arc(k: Shadow) -> CutPoint:
    return CutPoint(0) if k.m else loop_point(0)


def _join(a: Shadow, a_cut: bool, b: Shadow, b_cut: bool, e: KnotExpr) -> Shadow:
    if a.m + a.free_loops == 0 or b.m + b.free_loops == 0:
        raise EmptySummand(render(e))
    if a_cut and b_cut:
        return connected_sum(a, a.cuts[1], b, b.cuts[0])
    return connected_sum(a, _any_arc(a), b, _any_arc(b)).with_cuts(())


def eval_shadow(e: KnotExpr) -> Shadow:
    """Build the diagram of ``e``; chains join exit to entry."""
    if isinstance(e, Atom):
        return build(e.spec)
    if isinstance(e, CSum):
        return _join(eval_shadow(e.left), has_cuts(e.left), eval_shadow(e.right), has_cuts(e.right), e)
    if isinstance(e, Disjoint):
        return disjoint_union(eval_shadow(e.left), eval_shadow(e.right)).with_cuts(())
    if isinstance(e, Power):
        if e.kind == "csum":
            acc, cut = build(FamilySpec("unknot")), True
            child, child_cut = eval_shadow(e.child), has_cuts(e.child)
            for _ in range(e.n):
                acc, cut = _join(acc, cut, child, child_cut, e), cut and child_cut
            return acc
        acc = EMPTY
        for _ in range(e.n):
            acc = disjoint_union(acc, eval_shadow(e.child))
        return acc.with_cuts(())
    if isinstance(e, Closure):
        if not has_cuts(e.child):
            raise ClosureUnsupported(f"{render(e.child)} has no cut points")
        return self_closure(eval_shadow(e.child))
    raise TypeError(e)


def _factors(e: KnotExpr) -> list[str]:
    """Flatten a cut-carrying expression into its chain of generator names."""
    if isinstance(e, Atom):
        if e.spec.family == "unknot":
            return []
        return [e.spec.family] * e.spec.n
    if isinstance(e, CSum):
        return _factors(e.left) + _factors(e.right)
    if isinstance(e, Power) and e.kind == "csum":
        return _factors(e.child) * e.n
    raise ClosureUnsupported(f"{render(e)} has no cut points")


def _closure_laws(e: KnotExpr) -> Polynomial:
    # closure(F # R) = alpha_F * closure(R) + beta_F * R, folded from the right
    unknot = GENERATOR_COMPONENTS["unknot"]
    rest, rest_closed = X, unknot.closed_poly()
    for name in reversed(_factors(e)):
        c: Components = GENERATOR_COMPONENTS[name]
        rest, rest_closed = csum_poly(c.open_poly(), rest), c.alpha * rest_closed + c.beta * rest
    return rest_closed


def _laws(e: KnotExpr) -> Polynomial:
    if isinstance(e, Atom):
        return family_poly_closed(e.spec)
    if isinstance(e, CSum):
        return csum_poly(_laws(e.left), _laws(e.right))
    if isinstance(e, Disjoint):
        return _laws(e.left) * _laws(e.right)
    if isinstance(e, Power):
        if e.kind == "csum":
            return generated_poly(_laws(e.child), e.n) if e.n else X
        return reduce(lambda a, b: a * b, [_laws(e.child)] * e.n, ONE)
    if isinstance(e, Closure):
        if not has_cuts(e.child):
            raise ClosureUnsupported(f"{render(e.child)} has no cut points")
        return _closure_laws(e.child)
    raise TypeError(e)


def eval_poly(
    e: KnotExpr | str, method: str = "laws", guard: int | None = None, workers: int = 1
) -> Polynomial:
    """Polynomial of ``e`` by brute force over its diagram or by composition laws."""
    if isinstance(e, str):
        e = parse(e)
    check_well_formed(e)
    if method == "laws":
        return _laws(e)
    if method == "brute":
        limit = crossing_guard(guard)
        m = crossings(e)
        if m > limit:
            raise TooManyCrossings(f"{m} crossings exceeds guard {limit}")
        return state_sum(eval_shadow(e), guard=limit, workers=workers)
    raise ValueError(f"unknown method {method!r}")
