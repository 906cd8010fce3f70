"""Exact integer linear algebra for intersection lattices.

Everything here runs on Python integers; no floating point is involved, so
results hold for arbitrarily large entries.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .divisor import Divisor, as_divisor

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class IntersectionMatrix:
    """An integer matrix; for divisors it is the symmetric cyclic Q_D."""

    entries: Matrix

    def __init__(self, entries: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if rows and any(len(row) != len(rows[0]) for row in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def is_symmetric(self) -> bool:
        m = self.entries
        return all(m[i][j] == m[j][i] for i in range(self.n) for j in range(i))

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


def intersection_matrix(d: Divisor | Sequence[int]) -> IntersectionMatrix:
    d = as_divisor(d)
    s = d.entries
    r = len(s)
    rows = [[0] * r for _ in range(r)]
    for i in range(r):
        rows[i][i] = s[i]
    if r == 2:
        rows[0][1] = rows[1][0] = 2
    else:
        for i in range(r):
            j = (i + 1) % r
            rows[i][j] = rows[j][i] = 1
    return IntersectionMatrix(rows)


def _as_rows(m: IntersectionMatrix | Sequence[Sequence[int]]) -> list[list[int]]:
    if isinstance(m, IntersectionMatrix):
        return [list(row) for row in m.entries]
    return [[int(x) for x in row] for row in m]


# ---------------------------------------------------------------------------
# determinant and characteristic polynomial


def determinant(m: IntersectionMatrix | Sequence[Sequence[int]]) -> int:
    """Fraction-free Bareiss elimination."""
    a = _as_rows(m)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def characteristic_polynomial(m: IntersectionMatrix | Sequence[Sequence[int]]) -> list[int]:
    """Coefficients of det(xI - M), highest degree first (Faddeev-LeVerrier).

    Every division is exact, so integer arithmetic suffices.
    """
    a = _as_rows(m)
    n = len(a)
    coeffs = [1]
    mk = [[0] * n for _ in range(n)]
    c_prev = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [
            [sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)
        ]
        for i in range(n):
            prod[i][i] += c_prev
        mk = prod
        tr = sum(sum(a[i][t] * mk[t][i] for t in range(n)) for i in range(n))
        c = -tr // k
        coeffs.append(c)
        c_prev = c
    return coeffs


def _sign_changes(coeffs: Sequence[int]) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


@dataclass(frozen=True)
class Signature:
    b_plus: int
    b_minus: int
    b_zero: int

    @property
    def n(self) -> int:
        return self.b_plus + self.b_minus + self.b_zero

    @property
    def sigma(self) -> int:
        return self.b_plus - self.b_minus

    def definiteness(self) -> str:
        if self.b_plus == 0 and self.b_zero == 0:
            return "negative definite"
        if self.b_plus == 0:
            return "negative semi-definite"
        if self.b_minus == 0 and self.b_zero == 0:
            return "positive definite"
        return "indefinite"

    def to_json(self) -> dict:
        return {"b_plus": self.b_plus, "b_minus": self.b_minus, "b_zero": self.b_zero}

    def __iter__(self):
        return iter((self.b_plus, self.b_minus, self.b_zero))


def signature(m: IntersectionMatrix | Sequence[Sequence[int]]) -> Signature:
    """Exact inertia of a symmetric integer matrix.

    A symmetric matrix has only real eigenvalues, so Descartes' rule of signs
    counts the positive and negative roots of its characteristic polynomial
    exactly.
    """
    rows = _as_rows(m)
    n = len(rows)
    if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i)):
        raise ValueError("signature needs a symmetric matrix")
    p = characteristic_polynomial(rows)
    zero = 0
    while zero < n and p[n - zero] == 0:
        zero += 1
    core = p[: n + 1 - zero]
    pos = _sign_changes(core)
    deg = len(core) - 1
    neg = _sign_changes([c if (deg - i) % 2 == 0 else -c for i, c in enumerate(core)])
    return Signature(pos, neg, zero)


def divisor_signature(d: Divisor | Sequence[int]) -> Signature:
    return signature(intersection_matrix(d))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus cyclic factors with torsion[0] | torsion[1] | ..."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __init__(self, free_rank: int, torsion: Sequence[int] = ()):
        t = tuple(int(x) for x in torsion)
        if any(x < 2 for x in t):
            raise ValueError("torsion factors must be at least 2")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError("torsion factors must form a divisibility chain")
        object.__setattr__(self, "free_rank", int(free_rank))
        object.__setattr__(self, "torsion", t)

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for x in self.torsion:
            out *= x
        return out

    def direct_sum(self, other: AbelianGroup) -> AbelianGroup:
        return AbelianGroup(
            self.free_rank + other.free_rank,
            invariant_factors(list(self.torsion) + list(other.torsion)),
        )

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{x}" for x in self.torsion)
        return " + ".join(parts) if parts else "0"


def invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    """Regroup a list of cyclic orders into invariant factors (dropping 1s)."""
    primes: dict[int, list[int]] = {}
    for x in orders:
        x = abs(int(x))
        if x == 0:
            raise ValueError("use free_rank for infinite cyclic factors")
        p = 2
        while p * p <= x:
            if x % p == 0:
                e = 1
                while x % p == 0:
                    x //= p
                    e *= p
                primes.setdefault(p, []).append(e)
            p += 1
        if x > 1:
            primes.setdefault(x, []).append(x)
    length = max((len(v) for v in primes.values()), default=0)
    out = [1] * length
    for powers in primes.values():
        powers.sort()
        for k, e in enumerate(powers):
            out[length - len(powers) + k] *= e
    return tuple(x for x in out if x > 1)


def smith_diagonal(m: IntersectionMatrix | Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form, d1 | d2 | ..."""
    a = _as_rows(m)
    rows = len(a)
    cols = len(a[0]) if a else 0
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        # smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            changed = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    ai, at = a[i], a[t]
                    for j in range(t, cols):
                        ai[j] -= q * at[j]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    changed = True
                    break
            if changed:
                continue
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    changed = True
                    break
            if changed:
                continue
            # pivot must divide the rest of the block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            at, ab = a[t], a[bad]
            for j in range(t, cols):
                at[j] += ab[j]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def smith_normal_form(m: IntersectionMatrix | Sequence[Sequence[int]]) -> AbelianGroup:
    """Cokernel Z^rows / image(m) as an abelian group."""
    rows = _as_rows(m)
    diag = smith_diagonal(rows)
    return AbelianGroup(len(rows) - len(diag), tuple(x for x in diag if x > 1))


cokernel = smith_normal_form


def boundary_h1(d: Divisor | Sequence[int]) -> AbelianGroup:
    """H_1 of the boundary torus bundle: Z plus the cokernel of Q_D."""
    return AbelianGroup(1).direct_sum(smith_normal_form(intersection_matrix(d)))
