"""
STL abstract syntax tree.

Nodes are immutable. Temporal operators carry a window; `window=None` marks the
untimed variant (G, F, U without bounds).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping, Union

from rosi.interval import INF, Interval


class NodeKind(str, Enum):
    PRED = "pred"
    NOT = "not"
    AND = "and"
    OR = "or"
    ALWAYS = "always"
    EVENTUALLY = "eventually"
    UNTIL = "until"
    ALWAYS_UNTIMED = "always_untimed"
    EVENTUALLY_UNTIMED = "eventually_untimed"
    UNTIL_UNTIMED = "until_untimed"


# ---- Nodes ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Predicate:
    """Linear predicate `sum(c_v * v) + constant > 0`."""

    coefficients: tuple[tuple[str, float], ...]
    constant: float = 0.0

    kind = NodeKind.PRED

    def children(self) -> tuple[Formula, ...]:
        return ()

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.coefficients)

    def evaluate(self, values: Mapping[str, float]) -> float:
        total = self.constant
        for name, coefficient in self.coefficients:
            total += coefficient * values[name]
        return total

    def bound(self, bounds: Mapping[str, Interval]) -> Interval:
        """[f_inf, f_sup] of the predicate over the given variable bounds."""
        lo = hi = self.constant
        for name, coefficient in self.coefficients:
            if coefficient == 0:
                continue
            var = bounds.get(name)
            var_lo, var_hi = (-INF, INF) if var is None else (var.lo, var.hi)
            if coefficient > 0:
                lo += coefficient * var_lo
                hi += coefficient * var_hi
            else:
                lo += coefficient * var_hi
                hi += coefficient * var_lo
        return Interval(lo, hi)


@dataclass(frozen=True)
class Not:
    child: Formula

    kind = NodeKind.NOT

    def children(self) -> tuple[Formula, ...]:
        return (self.child,)


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula

    kind = NodeKind.AND

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula

    kind = NodeKind.OR

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Always:
    child: Formula
    window: Interval | None = None

    @property
    def kind(self) -> NodeKind:
        return NodeKind.ALWAYS_UNTIMED if self.window is None else NodeKind.ALWAYS

    def children(self) -> tuple[Formula, ...]:
        return (self.child,)


@dataclass(frozen=True)
class Eventually:
    child: Formula
    window: Interval | None = None

    @property
    def kind(self) -> NodeKind:
        return NodeKind.EVENTUALLY_UNTIMED if self.window is None else NodeKind.EVENTUALLY

    def children(self) -> tuple[Formula, ...]:
        return (self.child,)


@dataclass(frozen=True)
class Until:
    left: Formula
    right: Formula
    window: Interval | None = None

    @property
    def kind(self) -> NodeKind:
        return NodeKind.UNTIL_UNTIMED if self.window is None else NodeKind.UNTIL

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


Formula = Union[Predicate, Not, And, Or, Always, Eventually, Until]

Path = tuple[int, ...]

UNTIMED_KINDS = frozenset(
    {NodeKind.ALWAYS_UNTIMED, NodeKind.EVENTUALLY_UNTIMED, NodeKind.UNTIL_UNTIMED}
)


def walk(f: Formula, path: Path = ()) -> Iterator[tuple[Path, Formula]]:
    """Pre-order traversal yielding (path, node); a path lists child indices from the root."""
    yield path, f
    for index, child in enumerate(f.children()):
        yield from walk(child, path + (index,))


def is_bounded(f: Formula) -> bool:
    return all(node.kind not in UNTIMED_KINDS for _, node in walk(f))


def predicates(f: Formula) -> list[Predicate]:
    return [node for _, node in walk(f) if isinstance(node, Predicate)]


# ---- Rendering -----------------------------------------------------------------------


def render(f: Formula) -> str:
    """Pretty-print `f` in the concrete syntax; `parse(render(f)) == f`."""
    match f:
        case Predicate():
            return _render_predicate(f)
        case Not(child=child):
            return f"not ({render(child)})"
        case And(left=left, right=right):
            return f"({render(left)}) and ({render(right)})"
        case Or(left=left, right=right):
            return f"({render(left)}) or ({render(right)})"
        case Always(child=child, window=window):
            return f"G{_render_window(window)} ({render(child)})"
        case Eventually(child=child, window=window):
            return f"F{_render_window(window)} ({render(child)})"
        case Until(left=left, right=right, window=window):
            return f"({render(left)}) U{_render_window(window)} ({render(right)})"
    raise TypeError(f"Not a formula node: {f!r}")


def _render_window(window: Interval | None) -> str:
    if window is None:
        return ""
    return f"[{window.lo!r}, {window.hi!r}]"


def _render_predicate(p: Predicate) -> str:
    terms: list[str] = []
    for index, (name, coefficient) in enumerate(p.coefficients):
        sign = "-" if coefficient < 0 else "+"
        magnitude = abs(coefficient)
        term = name if magnitude == 1 else f"{magnitude!r}*{name}"
        if index == 0:
            terms.append(f"-{term}" if sign == "-" else term)
        else:
            terms.append(f"{sign} {term}")
    return f"{' '.join(terms)} > {-p.constant!r}"
