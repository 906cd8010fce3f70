"""Concave/convex neighbourhoods via exact linear feasibility.

A divisor is concave when some z > 0 has Q_D z > 0 componentwise and convex when
some z <= 0 does.  Strict inequalities are normalised to ``>= 1`` (the cone is
scale invariant), and the resulting system is solved with the exact simplex in
``csdiv.lp``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .divisor import Divisor, as_divisor
from .lattice import divisor_signature, intersection_matrix
from .lp import check_farkas, farkas_certificate, find_nonnegative_solution, solve_linear

MODES = ("concave", "convex")


def _frac_json(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


@dataclass(frozen=True)
class GsCertificate:
    """z with Q_D z = area, area > 0; z > 0 (concave) or z <= 0 (convex)."""

    z: tuple[Fraction, ...]
    area: tuple[Fraction, ...]

    def check(self, d: Divisor, mode: str) -> bool:
        q = intersection_matrix(d).entries
        r = len(q)
        if len(self.z) != r or len(self.area) != r:
            return False
        if any(sum(q[i][j] * self.z[j] for j in range(r)) != self.area[i] for i in range(r)):
            return False
        if any(a <= 0 for a in self.area):
            return False
        if mode == "concave":
            return all(x > 0 for x in self.z)
        return all(x <= 0 for x in self.z)

    def to_json(self) -> dict:
        return {"z": [_frac_json(x) for x in self.z], "a": [_frac_json(x) for x in self.area]}


@dataclass(frozen=True)
class ConvexityVerdict:
    """Outcome of one GS feasibility problem.

    ``kind`` is the mode when feasible and ``"neither"`` otherwise; in the
    latter case ``witness`` holds a Farkas vector for the normalised system.
    """

    kind: str
    mode: str
    certificate: GsCertificate | None = None
    witness: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.certificate is not None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "mode": self.mode}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.witness is not None:
            out["farkas"] = [_frac_json(x) for x in self.witness]
        return out


def _normalised_system(q: Sequence[Sequence[int]], mode: str):
    r = len(q)
    if mode == "concave":
        # z = 1 + u, Q z >= 1  <=>  Q u >= 1 - Q 1
        g = [list(row) for row in q]
        h = [1 - sum(row) for row in q]
    else:
        # z = -u, Q z >= 1  <=>  -Q u >= 1
        g = [[-x for x in row] for row in q]
        h = [1] * r
    return g, h


def gs_feasible(d: Divisor | Sequence[int], mode: str) -> ConvexityVerdict:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    d = as_divisor(d)
    q = intersection_matrix(d).entries
    g, h = _normalised_system(q, mode)
    u = find_nonnegative_solution(g, h)
    if u is None:
        y = farkas_certificate(g, h)
        if y is None or not check_farkas(g, h, y):
            raise ArithmeticError(f"no Farkas witness for infeasible {mode} system of {d}")
        return ConvexityVerdict("neither", mode, witness=tuple(y))
    z = tuple(1 + x for x in u) if mode == "concave" else tuple(-x for x in u)
    r = len(q)
    area = tuple(sum(q[i][j] * z[j] for j in range(r)) for i in range(r))
    cert = GsCertificate(z, area)
    if not cert.check(d, mode):
        raise ArithmeticError(f"simplex produced an invalid certificate for {d}")
    return ConvexityVerdict(mode, mode, certificate=cert)


def trichotomy(d: Divisor | Sequence[int]) -> str:
    """concave if b+ >= 1, convex if negative definite, else neither."""
    sig = divisor_signature(d)
    if sig.b_plus >= 1:
        return "concave"
    if sig.b_zero == 0:
        return "convex"
    return "neither"


def solve_area(d: Divisor | Sequence[int], area: Sequence[int | Fraction]) -> tuple[Fraction, ...] | None:
    """Exact z with Q_D z = area, or None when area is not in the image."""
    q = intersection_matrix(d).entries
    z = solve_linear(q, area)
    return None if z is None else tuple(z)
