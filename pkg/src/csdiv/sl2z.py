"""Monodromy matrices of boundary torus bundles and their conjugacy classes.

Conjugacy in SL(2, Z) is decided by a normal form per trace type:

* elliptic (|trace| < 2): the trace and the sign of the lower-left entry.  The
  binary form ``c x^2 + (d - a) x y - b y^2`` is definite for these matrices and
  conjugation acts on it by a change of variables, so the sign of ``c`` is an
  invariant; with the trace it separates all six finite-order classes.
* parabolic (|trace| = 2, including +-I): the sign of the trace and the shear
  amount ``n`` of ``sign * [[1, n], [0, 1]]``.
* hyperbolic (|trace| > 2): the sign of the trace and the periodic part of the
  minus continued fraction of the attracting fixed point, which is the cycle
  ``(p_1, ..., p_l)`` with ``sign * A ~ word_matrix(p)``.  The stored datum is the
  exponent word of ``R^x1 L^y1 R^x2 L^y2 ...`` in its least rotation.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable, Sequence

from .divisor import Divisor, as_divisor


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> SL2Matrix:
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __matmul__(self, other: SL2Matrix) -> SL2Matrix:
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> SL2Matrix:
        return SL2Matrix(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k: int) -> SL2Matrix:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = IDENTITY
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def inverse(self) -> SL2Matrix:
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    @property
    def trace(self) -> int:
        return self.a + self.d

    def conjugate_by(self, p: SL2Matrix) -> SL2Matrix:
        """P A P^-1."""
        return p @ self @ p.inverse()

    def mirror(self) -> SL2Matrix:
        """J A^-1 J for the reflection J = diag(1, -1)."""
        return SL2Matrix(self.d, self.b, self.c, self.a)

    def det_minus_identity(self) -> int:
        return (self.a - 1) * (self.d - 1) - self.b * self.c

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = SL2Matrix(1, 0, 0, 1)
R = SL2Matrix(1, 1, 0, 1)
L = SL2Matrix(1, 0, 1, 1)


def _elementary(t: int) -> SL2Matrix:
    return SL2Matrix(t, 1, -1, 0)


def word_matrix(t: Iterable[int]) -> SL2Matrix:
    """M(t_r) ... M(t_1) with M(t) = [[t, 1], [-1, 0]]."""
    out = IDENTITY
    count = 0
    for x in t:
        out = _elementary(int(x)) @ out
        count += 1
    if count == 0:
        raise ValueError("word_matrix needs at least one letter")
    return out


def monodromy(d: Divisor | Sequence[int]) -> SL2Matrix:
    d = as_divisor(d)
    return word_matrix(-s for s in d.entries)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def bundle_type(m: SL2Matrix) -> str:
    t = m.trace
    if abs(t) < 2:
        return "elliptic"
    polarity = "positive" if t > 0 else "negative"
    return f"{polarity}-{'parabolic' if abs(t) == 2 else 'hyperbolic'}"


# ---------------------------------------------------------------------------
# class descriptors

_ELLIPTIC_ORDER = {0: 4, 1: 6, -1: 3}
_ELLIPTIC_REPS = {
    (0, 1): SL2Matrix(0, -1, 1, 0),
    (0, -1): SL2Matrix(0, 1, -1, 0),
    (1, 1): SL2Matrix(1, -1, 1, 0),
    (1, -1): SL2Matrix(0, 1, -1, 1),
    (-1, 1): SL2Matrix(-1, -1, 1, 0),
    (-1, -1): SL2Matrix(0, 1, -1, -1),
}


@dataclass(frozen=True)
class BundleClass:
    """Conjugacy class of a monodromy matrix.

    ``sign`` is the sign of the trace.  ``data`` is a label like ``"order4+"``
    for elliptic classes, the shear ``n`` for parabolic ones, and the least
    rotation of the R/L exponent word for hyperbolic ones.
    """

    kind: str
    sign: int
    data: object

    def to_json(self) -> dict:
        data = list(self.data) if isinstance(self.data, tuple) else self.data
        return {"kind": self.kind, "sign": self.sign, "data": data}

    def hj_cycle(self) -> tuple[int, ...]:
        """For hyperbolic classes, a cycle p with sign * word_matrix(p) in the class."""
        if not self.kind.endswith("hyperbolic"):
            raise ValueError(f"{self.kind} classes have no continued-fraction cycle")
        return rl_word_to_cycle(self.data)

    def representative(self) -> SL2Matrix:
        if self.kind == "elliptic":
            label = self.data
            sign_c = 1 if label.endswith("+") else -1
            return _ELLIPTIC_REPS[(self.sign, sign_c)]
        if self.kind.endswith("parabolic"):
            m = SL2Matrix(1, self.data, 0, 1)
            return m if self.sign > 0 else -m
        m = word_matrix(self.hj_cycle())
        return m if self.sign > 0 else -m

    def inverse(self) -> BundleClass:
        if self.kind.endswith("parabolic"):
            return BundleClass(self.kind, self.sign, -self.data)
        return conjugacy_canon(self.representative().inverse())

    def mirror(self) -> BundleClass:
        """Class of J A^-1 J with J = diag(1, -1).

        T_A and T_B are orientation-preservingly diffeomorphic exactly when B
        lies in the class of A or of its mirror; reading a divisor backwards
        replaces its monodromy by the mirror.
        """
        if self.kind.endswith("hyperbolic"):
            return conjugacy_canon(self.representative().mirror())
        return self

    def __str__(self) -> str:
        if self.kind.endswith("hyperbolic"):
            return f"{self.kind} {list(self.data)}"
        return f"{self.kind} {self.data}"


def _least_rotation(seq: Sequence[int], step: int = 1) -> tuple[int, ...]:
    seq = tuple(seq)
    n = len(seq)
    return min(seq[i:] + seq[:i] for i in range(0, n, step))


def cycle_to_rl_word(cycle: Sequence[int]) -> tuple[int, ...]:
    """Exponent word (x1, y1, x2, y2, ...) of R^x1 L^y1 ... for a cycle p.

    Each entry p >= 3 together with the run of 2s following it cyclically gives
    the block (1 + run, p - 2).  The word is returned in its least rotation by
    whole blocks.
    """
    p = tuple(cycle)
    if any(x < 2 for x in p) or all(x == 2 for x in p):
        raise ValueError(f"{p} is not a hyperbolic cycle")
    start = next(i for i, x in enumerate(p) if x >= 3)
    p = p[start:] + p[:start]
    word: list[int] = []
    for x in p:
        if x >= 3:
            word += [1, x - 2]
        else:
            word[-2] += 1
    return _least_rotation(word, 2)


def rl_word_to_cycle(word: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x, y in zip(word[::2], word[1::2]):
        out.append(y + 2)
        out.extend([2] * (x - 1))
    return tuple(out)


def rl_word_matrix(word: Sequence[int]) -> SL2Matrix:
    """Product of the blocks R^x L^y, the first block acting first (rightmost)."""
    out = IDENTITY
    for x, y in zip(word[::2], word[1::2]):
        out = (R ** x) @ (L ** y) @ out
    return out


def _floor_quadratic(p: int, q: int, root_floor: int) -> int:
    """floor((p + sqrt(D)) / q) for non-square D with isqrt(D) = root_floor."""
    if q > 0:
        return (p + root_floor) // q
    return (-p - root_floor - 1) // (-q)


def _hyperbolic_cycle(m: SL2Matrix) -> tuple[int, ...]:
    """Cycle p with m ~ word_matrix(p), for m with trace >= 3."""
    a, c, d = m.a, m.c, m.d
    t = a + d
    disc = t * t - 4
    root = isqrt(disc)
    # In the coordinate y = -x, M(p) acts as y -> p - 1/y.  The attracting
    # fixed point is (P + sqrt(D)) / Q; Q divides P^2 - D throughout.
    big_p, big_q = a - d, -2 * c
    seen: dict[tuple[int, int], int] = {}
    digits: list[int] = []
    while (big_p, big_q) not in seen:
        seen[(big_p, big_q)] = len(digits)
        n = _floor_quadratic(big_p, big_q, root) + 1
        digits.append(n)
        big_p = n * big_q - big_p
        big_q = (big_p * big_p - disc) // big_q
    period = digits[seen[(big_p, big_q)]:]
    primitive = tuple(reversed(period))
    # m may be a proper power of the primitive class
    base = word_matrix(primitive)
    power = base
    cycle = primitive
    while power.trace < t:
        power = power @ base
        cycle = cycle + primitive
    if power.trace != t:
        raise ArithmeticError(f"hyperbolic reduction failed for {m}")
    return cycle


def conjugacy_canon(m: SL2Matrix) -> BundleClass:
    t = m.trace
    kind = bundle_type(m)
    if kind == "elliptic":
        sign_c = 1 if m.c > 0 else -1
        label = f"order{_ELLIPTIC_ORDER[t]}{'+' if sign_c > 0 else '-'}"
        return BundleClass(kind, _sign(t), label)
    eps = 1 if t > 0 else -1
    base = m if eps > 0 else -m
    if abs(t) == 2:
        return BundleClass(kind, eps, _parabolic_shear(base))
    return BundleClass(kind, eps, cycle_to_rl_word(_hyperbolic_cycle(base)))


def _parabolic_shear(m: SL2Matrix) -> int:
    """n with m ~ [[1, n], [0, 1]] for m of trace 2."""
    x, y, z, w = m.a - 1, m.b, m.c, m.d - 1
    if x == y == z == w == 0:
        return 0
    # kernel of m - I, from whichever row is nonzero
    if x or y:
        v0, v1 = -y, x
    else:
        v0, v1 = -w, z
    g = gcd(v0, v1)
    v0, v1 = v0 // g, v1 // g
    # w = (w0, w1) with v0*w1 - v1*w0 = 1
    g2, s, u = _ext_gcd(v0, v1)
    w0, w1 = -u * g2, s * g2  # g2 is +-1
    img0 = m.a * w0 + m.b * w1 - w0
    img1 = m.c * w0 + m.d * w1 - w1
    return img0 // v0 if v0 else img1 // v1


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = +-gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def negative_boundary_class(d: Divisor | Sequence[int]) -> BundleClass:
    """Class of the orientation-reversed boundary, i.e. of the inverse monodromy."""
    return conjugacy_canon(monodromy(d).inverse())


def boundary_class(d: Divisor | Sequence[int]) -> BundleClass:
    return conjugacy_canon(monodromy(d))


def _class_of(x: BundleClass | Divisor | SL2Matrix | Sequence[int]) -> BundleClass:
    if isinstance(x, BundleClass):
        return x
    if isinstance(x, SL2Matrix):
        return conjugacy_canon(x)
    return boundary_class(x)


def bundle_equal_oriented(x, y) -> bool:
    """Whether the two torus bundles are orientation-preservingly diffeomorphic.

    This holds when B is conjugate to A, or to A^-1 by an orientation-reversing
    matrix (reversing the base circle and a fibre direction together).
    """
    cx, cy = _class_of(x), _class_of(y)
    return cy == cx or cy == cx.mirror()
