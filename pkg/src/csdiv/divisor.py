"""Circular spherical divisors and the elementary moves on them.

A divisor is a cyclic sequence of self-intersection numbers ``(s_1, ..., s_r)``
with ``r >= 2``.  Two sequences describe the same divisor when they differ by a
rotation or a reversal.  The moves below act on a concrete representative and
use 0-based positions; edge ``i`` joins the components at positions ``i`` and
``(i + 1) % r``.

The tuple-level helpers (``blow_up_tuple`` and friends) are the hot path of the
equivalence and anti-canonical searches, so they take and return plain tuples.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    DivisorSyntaxError,
    LengthTwo,
    NotExceptional,
    NotZero,
    NotZeroPair,
    PreconditionError,
)

Entries = tuple[int, ...]


# ---------------------------------------------------------------------------
# tuple level


def canonical_tuple(t: Sequence[int]) -> Entries:
    """Lexicographically smallest rotation or reflected rotation of ``t``."""
    t = tuple(t)
    n = len(t)
    if n <= 1:
        return t
    lo = min(t)
    best = None
    rev = t[::-1]
    for i in range(n):
        if t[i] != lo:
            continue
        cand = t[i:] + t[:i]
        if best is None or cand < best:
            best = cand
        j = n - 1 - i
        cand = rev[j:] + rev[:j]
        if cand < best:
            best = cand
    return best


def symmetries(t: Sequence[int]) -> Iterator[tuple[Entries, tuple[int, ...]]]:
    """All 2r rotations/reflections of ``t`` with the index map used.

    Yields ``(u, perm)`` where ``u[k] == t[perm[k]]``.
    """
    n = len(t)
    for i in range(n):
        perm = tuple((i + k) % n for k in range(n))
        yield tuple(t[p] for p in perm), perm
        perm = tuple((i - k) % n for k in range(n))
        yield tuple(t[p] for p in perm), perm


def blow_up_tuple(t: Entries, edge: int) -> Entries:
    r = len(t)
    j = (edge + 1) % r
    out = list(t)
    out[edge] -= 1
    out[j] -= 1
    out.insert(edge + 1, -1)
    return tuple(out)


def blow_down_tuple(t: Entries, i: int) -> Entries:
    r = len(t)
    out = list(t)
    out[(i - 1) % r] += 1
    out[(i + 1) % r] += 1
    del out[i]
    return tuple(out)


def smoothing_tuple(t: Entries, edge: int) -> Entries:
    r = len(t)
    j = (edge + 1) % r
    merged = t[edge] + t[j] + 2
    if j == 0:
        return (merged,) + t[1:edge]
    return t[:edge] + (merged,) + t[j + 1:]


# ---------------------------------------------------------------------------
# the divisor type


@dataclass(frozen=True, eq=False)
class Divisor:
    """A cycle of spheres given by its self-intersection sequence.

    Equality and hashing ignore rotation and reflection; ``entries`` keeps the
    concrete labelling the moves refer to.
    """

    entries: Entries
    _canon: Entries = field(init=False, repr=False, compare=False)

    def __init__(self, entries: Iterable[int]):
        ent = tuple(int(x) for x in entries)
        if len(ent) < 2:
            raise PreconditionError(
                f"a circular spherical divisor needs at least 2 components, got {ent}"
            )
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "_canon", canonical_tuple(ent))

    @property
    def canonical(self) -> Entries:
        return self._canon

    @property
    def r(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._canon == other._canon

    def __hash__(self) -> int:
        return hash(self._canon)

    def __str__(self) -> str:
        return format_entries(self.entries)

    def __repr__(self) -> str:
        return f"Divisor({format_entries(self.entries)})"


def as_divisor(d: Divisor | Iterable[int] | str) -> Divisor:
    if isinstance(d, Divisor):
        return d
    if isinstance(d, str):
        return parse_divisor(d)
    return Divisor(d)


# ---------------------------------------------------------------------------
# text syntax

_INT = re.compile(r"[+-]?\d+")


def parse_divisor(text: str) -> Divisor:
    """Parse ``'(' int (',' int)* ')'`` allowing whitespace between tokens."""
    pos = 0
    n = len(text)

    def skip_ws(p: int) -> int:
        while p < n and text[p].isspace():
            p += 1
        return p

    pos = skip_ws(pos)
    if pos >= n or text[pos] != "(":
        raise DivisorSyntaxError("expected '('", text, pos)
    pos += 1
    values: list[int] = []
    while True:
        pos = skip_ws(pos)
        m = _INT.match(text, pos)
        if not m:
            raise DivisorSyntaxError("expected an integer", text, pos)
        values.append(int(m.group()))
        pos = skip_ws(m.end())
        if pos < n and text[pos] == ",":
            pos += 1
            continue
        if pos < n and text[pos] == ")":
            pos += 1
            break
        raise DivisorSyntaxError("expected ',' or ')'", text, pos)
    pos = skip_ws(pos)
    if pos != n:
        raise DivisorSyntaxError("trailing characters", text, pos)
    if len(values) < 2:
        raise DivisorSyntaxError("a divisor needs at least 2 entries", text, 0)
    return Divisor(values)


def format_entries(entries: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in entries) + ")"


def format_divisor(d: Divisor) -> str:
    """Canonical text form; ``parse_divisor(format_divisor(d)) == d``."""
    return format_entries(d.canonical)


# ---------------------------------------------------------------------------
# invariants


def canonical_form(d: Divisor) -> Divisor:
    return Divisor(d.canonical)


def charge(d: Divisor) -> int:
    """q(D) = 12 - 3r - sum(s_i); preserved by toric moves."""
    return 12 - 3 * d.r - sum(d.entries)


def self_intersection_square(d: Divisor) -> int:
    """[D]^2 = sum(s_i + 2), the square of the smoothed torus."""
    return sum(d.entries) + 2 * d.r


def nonnegative_count(d: Divisor) -> int:
    return sum(1 for s in d.entries if s >= 0)


# ---------------------------------------------------------------------------
# moves


def _check_index(d: Divisor, i: int) -> int:
    if not -d.r <= i < d.r:
        raise IndexError(f"index {i} out of range for a divisor of length {d.r}")
    return i % d.r


def toric_blow_up(d: Divisor, edge: int) -> Divisor:
    """Insert a -1 sphere at the intersection point ``edge``."""
    return Divisor(blow_up_tuple(d.entries, _check_index(d, edge)))


def toric_blow_down(d: Divisor, i: int) -> Divisor:
    i = _check_index(d, i)
    if d.r == 2:
        raise LengthTwo(f"cannot blow down a length-2 divisor {d}")
    if d.entries[i] != -1:
        raise NotExceptional(f"entry {i} of {d} is {d.entries[i]}, not -1")
    return Divisor(blow_down_tuple(d.entries, i))


def balancing_steps(d: Divisor, zero_index: int, n: int) -> list[Step]:
    """Primitive blow-up/blow-down steps realising a balancing move.

    Each unit of transfer is one toric blow-up next to the 0-sphere followed by
    blowing the old 0-sphere down; the new exceptional sphere becomes the 0.
    """
    z = _check_index(d, zero_index)
    if d.r == 2:
        raise LengthTwo(f"balancing needs r >= 3, got {d}")
    if d.entries[z] != 0:
        raise NotZero(f"entry {z} of {d} is {d.entries[z]}, not 0")
    r = d.r
    steps: list[Step] = []
    for _ in range(abs(n)):
        if n > 0:
            # blow up (pred, zero): the zero moves to z + 1, the new sphere sits at z
            steps.append(Step("blow_up", (z - 1) % r))
            if z == 0:
                # edge r-1 appends at the end: new sphere at r, zero stays at 0
                steps.append(Step("blow_down", 0))
                z = r - 1
            else:
                steps.append(Step("blow_down", z + 1))
        else:
            # blow up (zero, succ): new sphere at z + 1, zero stays at z
            steps.append(Step("blow_up", z))
            steps.append(Step("blow_down", z))
    return steps


def balancing_move(d: Divisor, zero_index: int, n: int) -> Divisor:
    """``(..., k, 0, p, ...) -> (..., k - n, 0, p + n, ...)``."""
    steps = balancing_steps(d, zero_index, n)
    return MoveTrace(d, steps).replay()


def zero_pair_steps(d: Divisor, i: int) -> list[Step]:
    """Blow up between two adjacent 0-spheres, then blow both of them down."""
    i = _check_index(d, i)
    r = d.r
    j = (i + 1) % r
    if r == 2:
        raise LengthTwo(f"zero-pair collapse needs r >= 3, got {d}")
    if d.entries[i] != 0 or d.entries[j] != 0:
        raise NotZeroPair(f"entries {i}, {j} of {d} are not both 0")
    # after blow_up(i): old i at i, new -1 at i+1, old j at i+2 (or at 0 if j == 0)
    if j == 0:
        # new sphere appended at position r; C_j is at 0, C_i at r-1
        return [Step("blow_up", i), Step("blow_down", r - 1), Step("blow_down", 0)]
    # blow down C_i (at i): C_j shifts to i+1
    return [Step("blow_up", i), Step("blow_down", i), Step("blow_down", i + 1)]


def zero_pair_collapse(d: Divisor, i: int) -> Divisor:
    """Collapse the adjacent 0-spheres at ``i, i+1`` (three toric moves).

    ``(0, 0, x3, ..., xr) -> (1, x3 + 1, x4, ..., x_{r-1}, xr + 1)`` and
    ``(0, 0, p) -> (1, p + 2)``.
    """
    return MoveTrace(d, zero_pair_steps(d, i)).replay()


def non_toric_blow_up(d: Divisor, i: int) -> Divisor:
    i = _check_index(d, i)
    out = list(d.entries)
    out[i] -= 1
    return Divisor(out)


def smoothing(d: Divisor, edge: int) -> Divisor:
    """Merge the components at ``edge`` into one of square ``s_i + s_{i+1} + 2``."""
    edge = _check_index(d, edge)
    if d.r == 2:
        raise LengthTwo(f"smoothing a length-2 divisor leaves a torus: {d}")
    return Divisor(smoothing_tuple(d.entries, edge))


# ---------------------------------------------------------------------------
# traces

MOVE_KINDS = (
    "blow_up",
    "blow_down",
    "balancing",
    "zero_pair_collapse",
    "non_toric_blow_up",
    "smoothing",
)

_ARROW_LABEL = {
    "blow_up": "blow-up",
    "blow_down": "blow-down",
    "balancing": "balance",
    "zero_pair_collapse": "collapse",
    "non_toric_blow_up": "non-toric",
    "smoothing": "smooth",
}


@dataclass(frozen=True)
class Step:
    move: str
    index: int
    n: int = 0

    def __post_init__(self):
        if self.move not in MOVE_KINDS:
            raise ValueError(f"unknown move kind {self.move!r}")

    def apply(self, d: Divisor) -> Divisor:
        if self.move == "blow_up":
            return toric_blow_up(d, self.index)
        if self.move == "blow_down":
            return toric_blow_down(d, self.index)
        if self.move == "balancing":
            return balancing_move(d, self.index, self.n)
        if self.move == "zero_pair_collapse":
            return zero_pair_collapse(d, self.index)
        if self.move == "non_toric_blow_up":
            return non_toric_blow_up(d, self.index)
        return smoothing(d, self.index)

    def to_json(self) -> dict:
        return {"move": self.move, "index": self.index, "n": self.n}

    @classmethod
    def from_json(cls, obj: dict) -> Step:
        return cls(obj["move"], int(obj["index"]), int(obj.get("n", 0)))


@dataclass(frozen=True)
class MoveTrace:
    """A source divisor and the moves that carry it to a target."""

    source: Divisor
    steps: tuple[Step, ...] = ()

    def __init__(self, source: Divisor, steps: Iterable[Step] = ()):
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "steps", tuple(steps))

    def __len__(self) -> int:
        return len(self.steps)

    def states(self) -> list[Divisor]:
        out = [self.source]
        for s in self.steps:
            out.append(s.apply(out[-1]))
        return out

    def replay(self) -> Divisor:
        d = self.source
        for s in self.steps:
            d = s.apply(d)
        return d

    def then(self, other: MoveTrace) -> MoveTrace:
        if tuple(other.source.entries) != tuple(self.replay().entries):
            raise ValueError("traces do not compose positionally")
        return MoveTrace(self.source, self.steps + other.steps)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]

    def render(self) -> str:
        """Arrow notation with 1-based positions."""
        parts = [str(self.source)]
        d = self.source
        for s in self.steps:
            d = s.apply(d)
            label = f"{_ARROW_LABEL[s.move]} {s.index + 1}"
            if s.move == "balancing":
                label += f" by {s.n}"
            parts.append(f"-[{label}]-> {d}")
        return " ".join(parts)


# Primitive moves the search engines may use when re-deriving positions.
_PRIMITIVES = ("blow_up", "blow_down", "non_toric_blow_up")


def _candidate_steps(t: Entries, kinds: Sequence[str]) -> Iterator[tuple[Step, Entries]]:
    r = len(t)
    for kind in kinds:
        if kind == "blow_up":
            for e in range(r):
                yield Step("blow_up", e), blow_up_tuple(t, e)
        elif kind == "blow_down":
            if r >= 3:
                for i in range(r):
                    if t[i] == -1:
                        yield Step("blow_down", i), blow_down_tuple(t, i)
        elif kind == "non_toric_blow_up":
            for i in range(r):
                out = list(t)
                out[i] -= 1
                yield Step("non_toric_blow_up", i), tuple(out)


def trace_from_path(
    source: Divisor, path: Sequence[Entries], kinds: Sequence[str] = ("blow_up", "blow_down")
) -> MoveTrace:
    """Turn a path of canonical forms into a positional trace from ``source``.

    ``path[0]`` must be the canonical form of ``source``; each later element is
    reached from the previous one by a single move of one of ``kinds``.
    """
    if not path:
        return MoveTrace(source)
    if path[0] != source.canonical:
        raise ValueError("path does not start at the source divisor")
    cur = source.entries
    steps: list[Step] = []
    for target in path[1:]:
        for step, nxt in _candidate_steps(cur, kinds):
            if canonical_tuple(nxt) == target:
                steps.append(step)
                cur = nxt
                break
        else:
            raise ValueError(f"no single move takes {cur} to {target}")
    return MoveTrace(source, steps)
