"""Exact linear feasibility over the rationals.

A phase-one simplex with Bland's rule on ``Fraction`` tableaux.  It is meant for
the small systems that come from intersection matrices, where exactness matters
more than speed.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = list[Fraction]


def find_nonnegative_solution(
    g: Sequence[Sequence[int | Fraction]], h: Sequence[int | Fraction]
) -> Vector | None:
    """Some u >= 0 with G u >= h, or None when the system is infeasible."""
    m = len(g)
    n = len(g[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    # columns: u (n), surplus (m), artificial (m); rows G u - s + a = h, h >= 0
    width = n + 2 * m
    rows: list[list[Fraction]] = []
    for i in range(m):
        flip = -1 if h[i] < 0 else 1
        row = [Fraction(flip * g[i][j]) for j in range(n)]
        row += [Fraction(0)] * (2 * m)
        row[n + i] = Fraction(-flip)
        row[n + m + i] = Fraction(1)
        row.append(Fraction(flip * h[i]))
        rows.append(row)
    basis = [n + m + i for i in range(m)]
    # objective: minimise the sum of artificials, i.e. reduced costs below
    cost = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(width + 1):
            cost[j] -= row[j]
    for i in range(m):
        cost[n + m + i] += 1
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            coef = rows[i][enter]
            if coef > 0:
                ratio = rows[i][width] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # cannot happen: phase one is bounded below by 0
            raise ArithmeticError("unbounded phase-one problem")
        piv_row = rows[leave]
        p = piv_row[enter]
        if p != 1:
            for j in range(width + 1):
                if piv_row[j]:
                    piv_row[j] /= p
        for i in range(m):
            if i != leave:
                f = rows[i][enter]
                if f:
                    row = rows[i]
                    for j in range(width + 1):
                        if piv_row[j]:
                            row[j] -= f * piv_row[j]
        f = cost[enter]
        for j in range(width + 1):
            if piv_row[j]:
                cost[j] -= f * piv_row[j]
        basis[leave] = enter
    if cost[width] != 0:  # optimum = -cost[width] > 0
        return None
    u = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            u[b] = rows[i][width]
    return u


def farkas_certificate(
    g: Sequence[Sequence[int | Fraction]], h: Sequence[int | Fraction]
) -> Vector | None:
    """y >= 0 with G^T y <= 0 and h . y > 0, proving G u >= h has no u >= 0."""
    m = len(g)
    n = len(g[0]) if m else 0
    alt_g = [[-g[i][j] for i in range(m)] for j in range(n)]
    alt_g.append([h[i] for i in range(m)])
    alt_h = [0] * n + [1]
    return find_nonnegative_solution(alt_g, alt_h)


def check_farkas(g, h, y) -> bool:
    m = len(g)
    n = len(g[0]) if m else 0
    if any(v < 0 for v in y):
        return False
    if any(sum(g[i][j] * y[i] for i in range(m)) > 0 for j in range(n)):
        return False
    return sum(h[i] * y[i] for i in range(m)) > 0


def solve_linear(a: Sequence[Sequence[int | Fraction]], b: Sequence[int | Fraction]) -> Vector | None:
    """Some exact solution x of A x = b, or None if there is none."""
    m = len(a)
    n = len(a[0]) if m else 0
    rows = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(m)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(rows[i][n] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return x
