"""Homology of minimal fillings and caps, dual cusp cycles, Stein geography.

The dual-cycle and canonical-rotation kernels are compiled with numba so that
exhaustive sweeps over millions of cycles stay fast; ``dual_cusp`` calls the
same kernels for single cycles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numba import njit

from .classify import FillabilityVerdict, classify_fillability
from .divisor import Divisor, as_divisor, canonical_tuple, charge
from .errors import NotCuspShape, NotFillable, NotNegativeDefinite
from .lattice import divisor_signature

FINITENESS_NOTE = "finitely many minimal symplectic fillings up to symplectic deformation"
B1_NOTE = "b1(W) = b1(Y_D) - 1 = b0(Q_D), so b1(W) = 0 whenever Q_D is nondegenerate"


@dataclass(frozen=True)
class FillingHomology:
    b1: int
    b2: int
    b3: int
    b_plus: int
    b_minus: int
    b_zero: int
    euler: int
    sigma: int
    c1_zero: bool
    notes: tuple[str, ...] = field(default=(), compare=False)

    def check(self) -> bool:
        return (
            self.b2 == self.b_plus + self.b_minus + self.b_zero
            and self.euler == 1 - self.b1 + self.b2 - self.b3
            and self.sigma == self.b_plus - self.b_minus
        )

    def to_json(self) -> dict:
        return {
            "b1": self.b1, "b2": self.b2, "b3": self.b3,
            "b_plus": self.b_plus, "b_minus": self.b_minus, "b_zero": self.b_zero,
            "euler": self.euler, "sigma": self.sigma, "c1_zero": self.c1_zero,
            "notes": list(self.notes),
        }


def minimal_filling_homology(d, f: FillabilityVerdict | None = None) -> FillingHomology:
    """Betti numbers shared by all minimal symplectic fillings of the boundary."""
    d = as_divisor(d)
    if f is None:
        f = classify_fillability(d)
    if f.status != "fillable":
        raise NotFillable(f"{d} is {f.status} ({f.reason})")
    q = charge(d)
    degenerate = divisor_signature(d).b_zero
    b1 = degenerate
    b_minus = q - 2 + degenerate
    b2 = 1 + b_minus
    out = FillingHomology(
        b1=b1, b2=b2, b3=0, b_plus=0, b_minus=b_minus, b_zero=1,
        euler=1 - b1 + b2, sigma=-b_minus, c1_zero=True,
        notes=(B1_NOTE, FINITENESS_NOTE),
    )
    assert out.euler == q and out.sigma == 2 - q - degenerate
    return out


@dataclass(frozen=True)
class CapInvariants:
    euler: int
    sigma: int
    b1: int | None = None
    b2: int | None = None
    b_zero: int | None = None

    def to_json(self) -> dict:
        return {"euler": self.euler, "sigma": self.sigma, "b1": self.b1, "b2": self.b2, "b_zero": self.b_zero}


def cap_invariants(d, ambient_b2: int | None = None) -> CapInvariants:
    """Euler characteristic and signature of the complement of a neighbourhood of d.

    When Q_D is nonsingular and the ambient b2 is given, b1, b2 and b0 of the
    complement are filled in too.
    """
    d = as_divisor(d)
    q = charge(d)
    sig = divisor_signature(d)
    euler = q
    sigma = 4 - q - 2 * sig.b_plus - sig.b_zero
    if sig.b_zero == 0 and ambient_b2 is not None:
        return CapInvariants(euler, sigma, b1=0, b2=ambient_b2 + 1 - d.r, b_zero=1)
    return CapInvariants(euler, sigma)


# ---------------------------------------------------------------------------
# dual cusps


@njit(cache=True)
def _dual_into(src, n, out):
    """Write the dual cycle of src[:n] into out; return its length.

    Each run of b (-2)s becomes a (-b-3) entry and each entry -a <= -3
    becomes a-3 entries equal to -2; the two interleave so that the run
    after an entry is paired with the entry that follows it.
    """
    start = -1
    for i in range(n):
        if src[i] <= -3:
            start = i
            break
    m = 0
    i = 0
    while i < n:
        a = -src[(start + i) % n]
        i += 1
        b = 0
        while i < n and src[(start + i) % n] == -2:
            b += 1
            i += 1
        for _ in range(a - 3):
            out[m] = -2
            m += 1
        out[m] = -b - 3
        m += 1
    return m


@njit(cache=True)
def _compare_view(src, n, start, step, best, best_start, best_step):
    """Sign of (rotation start/step of src) minus (rotation best_start/best_step)."""
    for k in range(n):
        x = src[(start + step * k) % n]
        y = best[(best_start + best_step * k) % n]
        if x < y:
            return -1
        if x > y:
            return 1
    return 0


@njit(cache=True)
def _canonical_into(src, n, out):
    """Least rotation or reflected rotation of src[:n], written into out."""
    best_start = 0
    best_step = 1
    for start in range(n):
        for step in (1, -1):
            if _compare_view(src, n, start, step, src, best_start, best_step) < 0:
                best_start = start
                best_step = step
    for k in range(n):
        out[k] = src[(best_start + best_step * k) % n]
    return n


@njit(cache=True)
def _is_canonical(src, n):
    for start in range(n):
        for step in (1, -1):
            if _compare_view(src, n, start, step, src, 0, 1) < 0:
                return False
    return True


@njit(cache=True)
def _involution_sweep(max_length, min_entry):
    """Check dual(dual(c)) == c over all canonical cusp cycles.

    Returns (cycles checked, failures, min and max of q(c) + q(dual c)).
    """
    cap = max_length * (-min_entry) + 4
    cur = np.empty(max_length, np.int64)
    dual = np.empty(cap, np.int64)
    back = np.empty(cap, np.int64)
    canon = np.empty(cap, np.int64)
    checked = 0
    failures = 0
    qmin = 1 << 40
    qmax = -(1 << 40)
    for n in range(1, max_length + 1):
        for first in range(min_entry, -2):
            # the least rotation starts with the minimum entry; the rest lie in [first, -2]
            cur[0] = first
            for k in range(1, n):
                cur[k] = first
            while True:
                if _is_canonical(cur, n):
                    checked += 1
                    m = _dual_into(cur, n, dual)
                    # re-read the dual from its canonical position so the
                    # check also covers rotation and reflection
                    _canonical_into(dual, m, canon)
                    m2 = _dual_into(canon, m, back)
                    _canonical_into(back, m2, canon)
                    ok = m2 == n
                    if ok:
                        for k in range(n):
                            if canon[k] != cur[k]:
                                ok = False
                                break
                    if not ok:
                        failures += 1
                    s = 0
                    for k in range(n):
                        s += cur[k]
                    for k in range(m):
                        s += dual[k]
                    qsum = 24 - 3 * (n + m) - s
                    if qsum < qmin:
                        qmin = qsum
                    if qsum > qmax:
                        qmax = qsum
                # odometer over positions 1..n-1
                k = n - 1
                while k >= 1 and cur[k] == -2:
                    cur[k] = first
                    k -= 1
                if k < 1:
                    break
                cur[k] += 1
    return checked, failures, qmin, qmax


def involution_sweep(max_length: int, min_entry: int) -> tuple[int, int, int, int]:
    """Exhaustive dual-cusp involution check; see ``_involution_sweep``."""
    if max_length < 1 or min_entry > -3:
        raise ValueError("need max_length >= 1 and min_entry <= -3")
    return tuple(int(x) for x in _involution_sweep(max_length, min_entry))


@dataclass(frozen=True)
class CuspCycle:
    """Cycle of rational curves with all squares <= -2, at least one <= -3.

    Length 1 is allowed (an irreducible nodal curve).  Equality ignores
    rotation and reflection.
    """

    entries: tuple[int, ...]

    def __init__(self, entries: Sequence[int]):
        ent = tuple(int(x) for x in entries)
        if not ent:
            raise NotCuspShape("a cusp cycle needs at least one entry")
        if any(x > -2 for x in ent) or all(x == -2 for x in ent):
            raise NotCuspShape(f"{ent} needs all entries <= -2 and some <= -3")
        object.__setattr__(self, "entries", canonical_tuple(ent))

    @property
    def length(self) -> int:
        return len(self.entries)

    @property
    def irreducible_nodal(self) -> bool:
        return len(self.entries) == 1

    @property
    def charge(self) -> int:
        return 12 - 3 * len(self.entries) - sum(self.entries)

    def to_json(self) -> dict:
        return {"entries": list(self.entries), "irreducible_nodal": self.irreducible_nodal}

    def __str__(self) -> str:
        text = "(" + ",".join(str(x) for x in self.entries) + ")"
        return text + (" [irreducible nodal cusp]" if self.irreducible_nodal else "")


def dual_cusp(c: CuspCycle | Divisor | Sequence[int]) -> CuspCycle:
    if isinstance(c, Divisor):
        c = CuspCycle(c.entries)
    elif not isinstance(c, CuspCycle):
        c = CuspCycle(c)
    src = np.asarray(c.entries, dtype=np.int64)
    n = len(src)
    out = np.empty(n * (-int(src.min())) + 4, dtype=np.int64)
    m = _dual_into(src, n, out)
    return CuspCycle(out[:m].tolist())


# ---------------------------------------------------------------------------
# Stein geography


@dataclass(frozen=True)
class GeographyCase:
    case: int
    b_plus: int
    b_zero: int
    b1: int
    b_minus: int | None
    c1_zero: bool | None
    description: str

    def to_json(self) -> dict:
        return {
            "case": self.case, "b_plus": self.b_plus, "b_zero": self.b_zero, "b1": self.b1,
            "b_minus": self.b_minus, "c1_zero": self.c1_zero, "description": self.description,
        }


@dataclass(frozen=True)
class GeographyReport:
    q: int
    cases: tuple[GeographyCase, ...]
    anti_canonical: bool | None = None

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "anti_canonical": self.anti_canonical,
            "cases": [c.to_json() for c in self.cases],
        }


def stein_geography(d, anti_canonical: bool | None = None) -> GeographyReport:
    """Possible Betti profiles of Stein fillings of the convex boundary.

    The profiles assume d is anti-canonical; pass the known status through
    ``anti_canonical`` so it is recorded in the report.
    """
    d = as_divisor(d)
    sig = divisor_signature(d)
    if sig.b_plus or sig.b_zero:
        raise NotNegativeDefinite(f"{d} is not negative definite")
    q = charge(d)
    cases = [GeographyCase(1, 0, 0, 1, None, None, "negative definite")]
    if 3 <= q <= 21:
        cases.append(GeographyCase(2, 1, 1, 0, 21 - q, True, "b+ = 1, b0 = 1"))
    if 3 <= q <= 22:
        cases.append(GeographyCase(3, 2, 0, 1, 22 - q, True, "b+ = 2, b0 = 0"))
    return GeographyReport(q, tuple(cases), anti_canonical)
