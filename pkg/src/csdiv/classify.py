"""Fillability, anti-canonical search and rigidity reports.

Concave divisors are sorted into the four families of embeddable divisors by
the oriented class of their boundary torus bundle, then matched to the family
member with that class through the equivalence engine.  Negative
semi-definite divisors go through a search over blow-ups of the minimal-model
divisors instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .divisor import (
    Divisor,
    Entries,
    MoveTrace,
    Step,
    as_divisor,
    blow_up_tuple,
    canonical_tuple,
    charge,
    symmetries,
    trace_from_path,
)
from .equiv import SearchBudget, decide_equivalence, default_budget, toric_minimal_reduction
from .errors import NotConcave, NotSemidefinite, WrongShape
from .lattice import divisor_signature
from .sl2z import boundary_class, bundle_equal_oriented, negative_boundary_class

REASONS = (
    "b+>=2",
    "bundle-mismatch",
    "not-blown-up",
    "invariant-mismatch",
    "certificate",
    "budget",
)


# ---------------------------------------------------------------------------
# blow-up trees and componentwise domination


def _dominating_alignment(state: Entries, target: Entries) -> tuple[int, ...] | None:
    """A symmetry perm with state[perm[k]] >= target[k] for all k."""
    for u, perm in symmetries(state):
        if all(a >= b for a, b in zip(u, target)):
            return perm
    return None


@dataclass
class _TreeResult:
    trace: MoveTrace | None
    nodes: int
    exhausted: bool


def _blow_up_then_decrement(
    seed: Entries, target: Divisor, min_entry: int, max_nodes: int
) -> _TreeResult:
    """Search toric blow-ups of ``seed`` up to the target's length whose
    entries stay >= ``min_entry``, then non-toric blow-ups down to the target.
    """
    length = target.r
    start = canonical_tuple(seed)
    if len(start) > length or min(start) < min_entry:
        return _TreeResult(None, 0, False)
    parents: dict[Entries, Entries | None] = {start: None}
    level = [start]
    nodes = 1
    while level and len(level[0]) < length:
        nxt: list[Entries] = []
        for t in level:
            r = len(t)
            for e in range(r):
                if t[e] - 1 < min_entry or t[(e + 1) % r] - 1 < min_entry or -1 < min_entry:
                    continue
                v = canonical_tuple(blow_up_tuple(t, e))
                if v in parents:
                    continue
                parents[v] = t
                nxt.append(v)
                nodes += 1
                if nodes > max_nodes:
                    return _TreeResult(None, nodes, True)
        level = nxt
    goal = target.entries
    for t in level:
        perm = _dominating_alignment(t, goal)
        if perm is None:
            continue
        path = []
        x: Entries | None = t
        while x is not None:
            path.append(x)
            x = parents[x]
        path.reverse()
        seed_div = Divisor(seed)
        toric = trace_from_path(seed_div, path)
        reached = toric.replay().entries
        # re-derive the alignment on the concrete labelling reached by the trace
        perm = _dominating_alignment(reached, goal)
        steps = list(toric.steps)
        for k, p in enumerate(perm):
            steps += [Step("non_toric_blow_up", p)] * (reached[p] - goal[k])
        return _TreeResult(MoveTrace(seed_div, steps), nodes, False)
    return _TreeResult(None, nodes, False)


# ---------------------------------------------------------------------------
# the blown-up test


def hyperbolic_shape(d) -> tuple[int, ...] | None:
    """The cycle (p_1, ..., p_l) if d reads (1, 1-p1, -p2, ..., -p_{l-1}, 1-p_l)."""
    d = as_divisor(d)
    if d.r < 3:
        return None
    for u, _ in symmetries(d.entries):
        if u[0] != 1:
            continue
        p = (1 - u[1],) + tuple(-x for x in u[2:-1]) + (1 - u[-1],)
        if all(x >= 2 for x in p):
            return p
    return None


def family_four_representative(cycle: Sequence[int]) -> Divisor:
    p = tuple(cycle)
    if len(p) == 1:
        return Divisor((1, 2 - p[0]))
    return Divisor((1, 1 - p[0]) + tuple(-x for x in p[1:-1]) + (1 - p[-1],))


def blown_up_check(d, max_nodes: int = 2_000_000) -> tuple[bool, MoveTrace | None]:
    """Whether d is a non-toric blow-up of some toric blow-up of (1, 1, 1).

    Returns the verdict and, when positive, a trace from (1, 1, 1) to d.
    """
    d = as_divisor(d)
    if hyperbolic_shape(d) is None:
        raise WrongShape(f"{d} is not of the form (1, 1-p1, -p2, ..., 1-pl) with p_i >= 2, l >= 2")
    res = _blow_up_then_decrement((1, 1, 1), d, min(d.entries), max_nodes)
    if res.exhausted:
        raise RuntimeError(f"blow-up tree for {d} exceeded {max_nodes} nodes")
    return res.trace is not None, res.trace


# ---------------------------------------------------------------------------
# fillability


@dataclass(frozen=True)
class FillabilityVerdict:
    status: str
    reason: str
    family: int | None = None
    representative: Divisor | None = None
    trace: MoveTrace | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out: dict = {"status": self.status, "reason": self.reason, "family": self.family}
        if self.representative is not None:
            out["representative"] = list(self.representative.entries)
        if self.trace is not None:
            out["certificate"] = self.trace.to_json()
        if self.detail:
            out["detail"] = self.detail
        return out


def _family_candidates(d: Divisor) -> tuple[int | None, list[Divisor], str]:
    """Family number and the members whose boundary matches that of d."""
    cls = negative_boundary_class(d)
    if cls.kind == "elliptic":
        members = [Divisor((1, p)) for p in (1, 2, 3)] + [Divisor((-1, -p)) for p in (1, 2, 3)]
        return 1, [m for m in members if bundle_equal_oriented(d, m)], ""
    if cls.kind == "positive-parabolic":
        # (1, 1, p) has shear 1 - p on the reversed boundary
        p = 1 - cls.data
        return 2, ([Divisor((1, 1, p))] if p <= 1 else []), ""
    if cls.kind == "negative-parabolic":
        # (0, p) has shear -p on the reversed boundary
        p = -cls.data
        return 3, ([Divisor((0, p))] if p <= 4 else []), ""
    if cls.kind == "positive-hyperbolic":
        return None, [], ""
    cycle = boundary_class(d).hj_cycle()
    if len(cycle) == 1:
        return 4, [family_four_representative(cycle)], ""
    seen: dict[Entries, Divisor] = {}
    if hyperbolic_shape(d) is not None:
        seen[d.canonical] = d
    for k in range(len(cycle)):
        rep = family_four_representative(cycle[k:] + cycle[:k])
        seen.setdefault(rep.canonical, rep)
    blown = [rep for rep in seen.values() if blown_up_check(rep)[0]]
    if not blown:
        return 4, [], f"no rotation of the cycle {list(cycle)} is blown-up"
    return 4, blown, ""


def classify_fillability(d, budget: SearchBudget | None = None) -> FillabilityVerdict:
    d = as_divisor(d)
    sig = divisor_signature(d)
    if sig.b_plus == 0:
        raise NotConcave(f"{d} has b+ = 0, so it is not concave")
    if sig.b_plus >= 2:
        return FillabilityVerdict("not_fillable", "b+>=2", detail=f"b+ = {sig.b_plus}")
    family, members, note = _family_candidates(d)
    members = [m for m in members if bundle_equal_oriented(d, m)]
    if not members:
        if note:
            return FillabilityVerdict("not_fillable", "not-blown-up", family, detail=note)
        return FillabilityVerdict(
            "not_fillable", "bundle-mismatch", detail=str(negative_boundary_class(d))
        )
    inconclusive = None
    mismatch = None
    for rep in members:
        b = budget if budget is not None else default_budget(d, rep)
        verdict = decide_equivalence(d, rep, b)
        if verdict.kind == "equivalent":
            return FillabilityVerdict(
                "fillable", "certificate", family, representative=rep, trace=verdict.trace
            )
        if verdict.kind == "inconclusive":
            inconclusive = inconclusive or rep
        else:
            mismatch = mismatch or (rep, verdict.witness)
    if inconclusive is not None:
        return FillabilityVerdict(
            "inconclusive", "budget", family, representative=inconclusive,
            detail="equivalence search ran out of budget",
        )
    rep, witness = mismatch
    return FillabilityVerdict(
        "not_fillable", "invariant-mismatch", family, representative=rep,
        detail=f"{witness.name}: {witness.left} vs {witness.right}",
    )


# ---------------------------------------------------------------------------
# anti-canonical search

SEED_FAMILIES = (
    "(1,4)",
    "(1,1,1)",
    "(2b,4-2b)",
    "(2b,0,2-2b)",
    "(2b,0,-2b,0)",
    "(2a+1,3-2a)",
    "(4,0)",
    "(2a+1,0,1-2a)",
    "(2a+1,0,-2a-1,0)",
)


def minimal_model_seeds(min_entry: int, max_length: int) -> Iterator[tuple[str, Entries]]:
    """Minimal-model divisors of length <= max_length with all entries >= min_entry.

    Entries only go down under blow-ups and each seed component survives, so
    a seed with an entry below the target's minimum can never reach it.
    """
    lo = min_entry

    def para(values):
        # all integers k with every expression in values(k) >= lo; bodies are linear with slope +-2
        k = (lo - 8) // 2
        out = []
        while k <= (8 - lo) // 2 + 1:
            if all(v >= lo for v in values(k)):
                out.append(k)
            k += 1
        return out

    fixed = [("(1,4)", (1, 4)), ("(1,1,1)", (1, 1, 1)), ("(4,0)", (4, 0))]
    families = [
        ("(2b,4-2b)", lambda b: (2 * b, 4 - 2 * b)),
        ("(2b,0,2-2b)", lambda b: (2 * b, 0, 2 - 2 * b)),
        ("(2b,0,-2b,0)", lambda b: (2 * b, 0, -2 * b, 0)),
        ("(2a+1,3-2a)", lambda a: (2 * a + 1, 3 - 2 * a)),
        ("(2a+1,0,1-2a)", lambda a: (2 * a + 1, 0, 1 - 2 * a)),
        ("(2a+1,0,-2a-1,0)", lambda a: (2 * a + 1, 0, -2 * a - 1, 0)),
    ]
    seen: set[Entries] = set()
    for name, t in fixed:
        if len(t) <= max_length and min(t) >= lo:
            c = canonical_tuple(t)
            if c not in seen:
                seen.add(c)
                yield name, t
    for name, fn in families:
        for k in para(fn):
            t = fn(k)
            c = canonical_tuple(t)
            if len(t) <= max_length and c not in seen:
                seen.add(c)
                yield name, t


@dataclass(frozen=True)
class AntiCanonicalVerdict:
    status: str
    witness: MoveTrace | None = None
    seed: str | None = None
    obstruction: str | None = None
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.witness is not None:
            out["seed"] = list(self.witness.source.entries)
            out["seed_family"] = self.seed
            out["witness"] = self.witness.to_json()
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def anticanonical_search(d, budget: SearchBudget | None = None) -> AntiCanonicalVerdict:
    """Look for d among blow-ups of the minimal-model divisors."""
    d = as_divisor(d)
    max_nodes = budget.max_nodes if budget is not None else 2_000_000
    q = charge(d)
    if q < 0:
        return AntiCanonicalVerdict(
            "not_anti_canonical", obstruction="q-deficit",
            notes=(f"q = {q} < 0, but every minimal model has q >= 0",),
        )
    sig = divisor_signature(d)
    if sig.b_plus == 0 and sig.b_zero == 0 and q < 3:
        return AntiCanonicalVerdict(
            "not_anti_canonical", obstruction="q-deficit",
            notes=(f"negative definite with q = {q} < 3",),
        )
    total = 0
    for name, seed in minimal_model_seeds(min(d.entries), d.r):
        if charge(Divisor(seed)) > q:
            continue
        res = _blow_up_then_decrement(seed, d, min(d.entries), max_nodes - total)
        total += res.nodes
        if res.trace is not None:
            return AntiCanonicalVerdict("anti_canonical", witness=res.trace, seed=name)
        if res.exhausted:
            return AntiCanonicalVerdict(
                "inconclusive", notes=(f"blow-up search exceeded {max_nodes} nodes",)
            )
    return AntiCanonicalVerdict("not_anti_canonical", obstruction="exhaustive-search")


def strictly_semidefinite_report(d) -> AntiCanonicalVerdict:
    """Anti-canonical iff the divisor is toric equivalent to D_n with n <= 9."""
    d = as_divisor(d)
    sig = divisor_signature(d)
    if sig.b_plus != 0 or sig.b_zero == 0:
        raise NotSemidefinite(f"{d} is not strictly negative semi-definite")
    reduced, _ = toric_minimal_reduction(d)
    n = 12 - charge(d)
    notes = (
        f"toric equivalent to D_{n} via {reduced}",
        "not rigid",
        "rational embeddability is conjectured to match anti-canonicity",
    )
    if n <= 9:
        return AntiCanonicalVerdict("anti_canonical", notes=notes)
    return AntiCanonicalVerdict("not_anti_canonical", obstruction="exhaustive-search", notes=notes)


def rigidity_report(d, f: FillabilityVerdict | None = None, budget: SearchBudget | None = None) -> dict:
    """Embeddability, anti-canonicity and rigidity flags (None where undecided)."""
    d = as_divisor(d)
    sig = divisor_signature(d)
    if sig.b_plus >= 1:
        if f is None:
            f = classify_fillability(d, budget)
        value = {"fillable": True, "not_fillable": False}.get(f.status)
        return {
            "symplectically_embeddable": value,
            "rationally_embeddable": value,
            "anti_canonical": value,
            "rigid": value,
            "notes": [],
        }
    if sig.b_zero == 0:
        ac = anticanonical_search(d, budget)
        value = {"anti_canonical": True, "not_anti_canonical": False}.get(ac.status)
        return {
            "symplectically_embeddable": True,
            "rationally_embeddable": True if value else None,
            "anti_canonical": value,
            "rigid": False,
            "notes": ["rational embeddability of negative definite divisors is open"] if not value else [],
        }
    ac = strictly_semidefinite_report(d)
    value = ac.status == "anti_canonical"
    return {
        "symplectically_embeddable": True,
        "rationally_embeddable": True if value else None,
        "anti_canonical": value,
        "rigid": False,
        "notes": list(ac.notes),
    }
