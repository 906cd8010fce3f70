"""Deciding toric equivalence.

The decision runs in three stages: compare invariants that toric moves
preserve, normalise both sides by blow-downs and zero-pair collapses, then run
a bidirectional breadth-first search over canonical forms.  A "distinct"
verdict only ever comes from an invariant; an exhausted search is reported as
inconclusive.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .divisor import (
    Divisor,
    Entries,
    MoveTrace,
    as_divisor,
    blow_down_tuple,
    blow_up_tuple,
    canonical_tuple,
    charge,
    trace_from_path,
)
from .errors import BudgetInvalid
from .lattice import divisor_signature
from .sl2z import boundary_class, bundle_equal_oriented


@dataclass(frozen=True)
class SearchBudget:
    max_length: int
    min_entry: int
    max_nodes: int = 200_000

    def __post_init__(self):
        if self.max_length < 2:
            raise BudgetInvalid(f"max_length must be at least 2, got {self.max_length}")
        if self.max_nodes <= 0:
            raise BudgetInvalid(f"max_nodes must be positive, got {self.max_nodes}")

    def to_json(self) -> dict:
        return {"max_length": self.max_length, "min_entry": self.min_entry, "max_nodes": self.max_nodes}


def default_budget(d1: Divisor, d2: Divisor, max_nodes: int = 200_000) -> SearchBudget:
    return SearchBudget(
        max_length=max(d1.r, d2.r) + 4,
        min_entry=min(min(d1.entries), min(d2.entries)) - 4,
        max_nodes=max_nodes,
    )


@dataclass(frozen=True)
class InvariantWitness:
    name: str
    left: object
    right: object

    def to_json(self) -> dict:
        def enc(x):
            return x.to_json() if hasattr(x, "to_json") else x

        return {"invariant": self.name, "left": enc(self.left), "right": enc(self.right)}


@dataclass(frozen=True)
class EquivVerdict:
    kind: str
    trace: MoveTrace | None = None
    witness: InvariantWitness | None = None
    budget: SearchBudget | None = None
    nodes: int = 0

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "nodes": self.nodes}
        if self.trace is not None:
            out["trace"] = self.trace.to_json()
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.budget is not None:
            out["budget"] = self.budget.to_json()
        return out


def invariant_screen(d1, d2) -> InvariantWitness | None:
    """First toric invariant on which the two divisors differ, if any.

    Checked in the order b+, b0, oriented bundle class, charge.
    """
    d1, d2 = as_divisor(d1), as_divisor(d2)
    s1, s2 = divisor_signature(d1), divisor_signature(d2)
    if s1.b_plus != s2.b_plus:
        return InvariantWitness("b_plus", s1.b_plus, s2.b_plus)
    if s1.b_zero != s2.b_zero:
        return InvariantWitness("b_zero", s1.b_zero, s2.b_zero)
    if not bundle_equal_oriented(d1, d2):
        return InvariantWitness("bundle_class", boundary_class(d1), boundary_class(d2))
    q1, q2 = charge(d1), charge(d2)
    if q1 != q2:
        return InvariantWitness("charge", q1, q2)
    return None


# ---------------------------------------------------------------------------
# normalisation


def _reduce_path(t: Entries) -> list[Entries]:
    """Canonical states visited by blowing down the first -1 until none is left."""
    cur = canonical_tuple(t)
    path = [cur]
    while len(cur) >= 3 and -1 in cur:
        cur = canonical_tuple(blow_down_tuple(cur, cur.index(-1)))
        path.append(cur)
    return path


def toric_minimal_reduction(d) -> tuple[Divisor, MoveTrace]:
    d = as_divisor(d)
    path = _reduce_path(d.entries)
    trace = trace_from_path(d, path)
    return trace.replay(), trace


def _zero_pair(t: Entries) -> int | None:
    r = len(t)
    if r < 3:
        return None
    for i in range(r):
        if t[i] == 0 and t[(i + 1) % r] == 0:
            return i
    return None


def _normal_path(t: Entries) -> list[Entries]:
    path = _reduce_path(t)
    while True:
        cur = path[-1]
        i = _zero_pair(cur)
        if i is None:
            return path
        # blow up between the zeros, then blow both of them down
        up = blow_up_tuple(cur, i)
        path.append(canonical_tuple(up))
        down = blow_down_tuple(up, i)
        path.append(canonical_tuple(down))
        path.extend(_reduce_path(down))


def normalise(d) -> tuple[Divisor, MoveTrace]:
    """Toric-minimal reduction closed under zero-pair collapses."""
    d = as_divisor(d)
    path = _dedupe(_normal_path(d.entries))
    trace = trace_from_path(d, path)
    return trace.replay(), trace


def _dedupe(path: Sequence[Entries]) -> list[Entries]:
    """Drop repeated states, cutting out any loop the path makes."""
    out: list[Entries] = []
    where: dict[Entries, int] = {}
    for x in path:
        if x in where:
            k = where[x]
            for y in out[k + 1:]:
                del where[y]
            del out[k + 1:]
            continue
        where[x] = len(out)
        out.append(x)
    return out


# ---------------------------------------------------------------------------
# search


def _neighbours(t: Entries, budget: SearchBudget):
    r = len(t)
    if r < budget.max_length:
        lo = budget.min_entry
        for e in range(r):
            if t[e] - 1 >= lo and t[(e + 1) % r] - 1 >= lo and -1 >= lo:
                yield canonical_tuple(blow_up_tuple(t, e))
    if r >= 3:
        for i in range(r):
            if t[i] == -1:
                yield canonical_tuple(blow_down_tuple(t, i))


def _bfs_path(a: Entries, b: Entries, budget: SearchBudget) -> tuple[list[Entries] | None, int, bool]:
    """Shortest canonical path a -> b, the node count, and whether the budget ran out."""
    if a == b:
        return [a], 1, False
    parents = ({a: None}, {b: None})
    frontiers = ([a], [b])
    nodes = 2
    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, other = parents[side], parents[1 - side]
        nxt: list[Entries] = []
        for u in frontiers[side]:
            for v in _neighbours(u, budget):
                if v in mine:
                    continue
                mine[v] = u
                if v in other:
                    return _join(v, parents, side), nodes, False
                nodes += 1
                if nodes > budget.max_nodes:
                    return None, nodes, True
                nxt.append(v)
        frontiers = (nxt, frontiers[1]) if side == 0 else (frontiers[0], nxt)
    return None, nodes, False


def _join(meet: Entries, parents, side: int) -> list[Entries]:
    left, right = parents
    head: list[Entries] = []
    x = meet
    while x is not None:
        head.append(x)
        x = left[x]
    head.reverse()
    x = right[meet]
    while x is not None:
        head.append(x)
        x = right[x]
    return head


def decide_equivalence(d1, d2, budget: SearchBudget | None = None) -> EquivVerdict:
    d1, d2 = as_divisor(d1), as_divisor(d2)
    if budget is None:
        budget = default_budget(d1, d2)
    witness = invariant_screen(d1, d2)
    if witness is not None:
        return EquivVerdict("distinct", witness=witness, budget=budget)
    p1 = _normal_path(d1.entries)
    p2 = _normal_path(d2.entries)
    middle, nodes, exhausted = _bfs_path(p1[-1], p2[-1], budget)
    if middle is None:
        return EquivVerdict("inconclusive", budget=budget, nodes=nodes)
    path = _dedupe(p1 + middle + p2[::-1])
    trace = trace_from_path(d1, path)
    if trace.replay() != d2:
        raise AssertionError("equivalence certificate does not reach the target")
    return EquivVerdict("equivalent", trace=trace, budget=budget, nodes=nodes)
