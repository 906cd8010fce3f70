"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines.
"""
from __future__ import annotations

import itertools
import random
import time
from contextlib import contextmanager

import pytest

from csdiv.classify import anticanonical_search, classify_fillability
from csdiv.convexity import gs_feasible, trichotomy
from csdiv.divisor import (
    Divisor,
    balancing_move,
    canonical_tuple,
    charge,
    toric_blow_down,
    toric_blow_up,
    zero_pair_collapse,
)
from csdiv.equiv import decide_equivalence
from csdiv.errors import PreconditionError
from csdiv.fillings import CuspCycle, cap_invariants, dual_cusp, involution_sweep, minimal_filling_homology, stein_geography
from csdiv.lattice import determinant, divisor_signature, intersection_matrix, smith_normal_form
from csdiv.sl2z import IDENTITY, L, R, SL2Matrix, bundle_type, conjugacy_canon, monodromy, negative_boundary_class

SEVEN = (1, -2, -3, -3, -2, -3, -2)


@contextmanager
def criterion(capsys, number: int, title: str, limit: float):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({elapsed:.2f}s / {limit:g}s)")


def random_divisor(rng, max_len=8):
    return Divisor([rng.randint(-6, 4) for _ in range(rng.randint(2, max_len))])


def random_toric_move(rng, d):
    """Apply one random toric move that is legal on d (a blow-up always is)."""
    kinds = ["blow_up", "blow_down", "balance", "zero_pair"]
    rng.shuffle(kinds)
    for kind in kinds:
        if kind == "blow_up":
            return kind, toric_blow_up(d, rng.randrange(d.r))
        idx = list(range(d.r))
        rng.shuffle(idx)
        for i in idx:
            try:
                if kind == "blow_down":
                    return kind, toric_blow_down(d, i)
                if kind == "balance":
                    return kind, balancing_move(d, i, rng.choice([-2, -1, 1, 2]))
                return kind, zero_pair_collapse(d, i)
            except PreconditionError:
                continue


def test_criterion_1_toric_invariance(capsys):
    rng = random.Random(1)
    with criterion(capsys, 1, "toric invariance on 500 random divisors", 30):
        moves_seen = set()
        for _ in range(500):
            d = random_divisor(rng)
            sig = divisor_signature(d)
            q = charge(d)
            cls = negative_boundary_class(d)
            for _ in range(rng.randint(1, 6)):
                kind, e = random_toric_move(rng, d)
                moves_seen.add(kind)
                sig_e = divisor_signature(e)
                assert charge(e) == q
                assert (sig_e.b_plus, sig_e.b_zero) == (sig.b_plus, sig.b_zero)
                assert negative_boundary_class(e) == cls
                if kind == "blow_up":
                    assert sig_e.b_minus == sig.b_minus + 1
                elif kind == "blow_down":
                    assert sig_e.b_minus == sig.b_minus - 1
                d, sig = e, sig_e
        assert moves_seen == {"blow_up", "blow_down", "balance", "zero_pair"}


def test_criterion_2_monodromy_lattice(capsys):
    rng = random.Random(2)
    with criterion(capsys, 2, "monodromy and lattice agree on 500 divisors", 30):
        for _ in range(500):
            d = random_divisor(rng)
            a = monodromy(d)
            q = intersection_matrix(d)
            det_q = determinant(q)
            assert abs(a.det_minus_identity()) == abs(det_q)
            rows = a.rows()
            shifted = [[rows[0][0] - 1, rows[0][1]], [rows[1][0], rows[1][1] - 1]]
            assert smith_normal_form(shifted).order == smith_normal_form(q).order


def test_criterion_3_trichotomy(capsys):
    with criterion(capsys, 3, "exact LP matches signature trichotomy (r <= 5, entries -5..3)", 300):
        seen = set()
        counts = {"concave": 0, "convex": 0, "neither": 0}
        for r in range(2, 6):
            for t in itertools.product(range(-5, 4), repeat=r):
                c = canonical_tuple(t)
                if c != t or c in seen:
                    continue
                seen.add(c)
                d = Divisor(c)
                kind = trichotomy(d)
                counts[kind] += 1
                assert gs_feasible(d, "concave").feasible == (kind == "concave"), c
                assert gs_feasible(d, "convex").feasible == (kind == "convex"), c
        assert all(counts.values())


EQUIVALENCES = [
    [(-1, 4), (1, -1, -2, -2, -2)],
    [(1, 4), (3, -1, 0), (1, 1, 0)],
    [(2, 2), (1, 1, -1)],
    [(3, -2, 0), (2, -2, -1, -1), (2, -1, 0)],
] + [[(0, 0, 0, p), (1, 1, p + 1)] for p in range(-4, 1)]


def test_criterion_4_equivalences(capsys):
    with criterion(capsys, 4, "known equivalences certified by replayable traces", 10):
        for chain in EQUIVALENCES:
            for a, b in zip(chain, chain[1:]):
                v = decide_equivalence(Divisor(a), Divisor(b))
                assert v.kind == "equivalent", (a, b)
                assert v.trace.replay() == Divisor(b)


def test_criterion_5_fillability(capsys):
    with criterion(capsys, 5, "fillability table", 30):
        for p in range(-6, 5):
            assert classify_fillability(Divisor((0, p))).status == "fillable", p
        for p in (5, 6):
            assert classify_fillability(Divisor((0, p))).status == "not_fillable", p
        for p in range(-6, 2):
            assert classify_fillability(Divisor((1, 1, p))).status == "fillable", p
        v = classify_fillability(Divisor((1, 1, 2)))
        assert (v.status, v.reason) == ("not_fillable", "b+>=2")
        assert classify_fillability(Divisor((5, 0))).status == "not_fillable"
        v = classify_fillability(Divisor(SEVEN))
        assert (v.status, v.family) == ("fillable", 4)


def test_criterion_6_filling_homology(capsys):
    with criterion(capsys, 6, "filling homology and cap cross-check", 5):
        h = minimal_filling_homology(Divisor((1, 1, 1)))
        assert (h.b1, h.b2, h.b_minus) == (2, 1, 0)
        h7 = minimal_filling_homology(Divisor(SEVEN))
        assert (h7.b1, h7.b2, h7.b_minus) == (0, 4, 3)
        assert cap_invariants(Divisor(SEVEN), ambient_b2=10).b2 == 4
        records = [h, h7] + [minimal_filling_homology(Divisor((0, p))) for p in range(-6, 5)]
        assert all(rec.check() for rec in records)


def test_criterion_7_anticanonical(capsys):
    with criterion(capsys, 7, "D_n anti-canonical exactly for n <= 9", 120):
        for n in range(1, 10):
            d = Divisor((-1, -4)) if n == 1 else Divisor((-2,) * n)
            v = anticanonical_search(d)
            assert v.status == "anti_canonical", n
            assert v.witness.replay() == d
        v10 = anticanonical_search(Divisor((-2,) * 10))
        assert (v10.status, v10.obstruction) == ("not_anti_canonical", "exhaustive-search")
        v11 = anticanonical_search(Divisor((-2,) * 10 + (-3,)))
        assert (v11.status, v11.obstruction) == ("not_anti_canonical", "q-deficit")


def test_criterion_8_dual_involution(capsys):
    with criterion(capsys, 8, "dual cusp involution, length <= 8, entries >= -12", 60):
        checked, failures, qmin, qmax = involution_sweep(8, -12)
        assert checked > 10**7 and failures == 0
        assert qmin == qmax == 24
        assert dual_cusp(CuspCycle((-5, -2))) == CuspCycle((-4, -2, -2))
        assert dual_cusp(CuspCycle((-3, -2))) == CuspCycle((-4,))


def random_sl2(rng, steps):
    m = IDENTITY
    for _ in range(steps):
        m = m @ (R if rng.random() < 0.5 else L) ** rng.randint(-3, 3)
    return -m if rng.random() < 0.5 else m


def test_criterion_9_conjugacy(capsys):
    rng = random.Random(9)
    with criterion(capsys, 9, "conjugacy canonical forms stable; parabolic shear recovered", 60):
        elliptic = [SL2Matrix(0, -1, 1, 0), SL2Matrix(1, -1, 1, 0), SL2Matrix(-1, -1, 1, 0)]
        mats = [e.conjugate_by(random_sl2(rng, 3)) for e in elliptic]
        mats += [SL2Matrix(1, n, 0, 1).conjugate_by(random_sl2(rng, 3)) for n in (3, -5)]
        mats += [(-SL2Matrix(1, n, 0, 1)).conjugate_by(random_sl2(rng, 3)) for n in (2, -7)]
        while len(mats) < 50:
            mats.append(random_sl2(rng, 6))
        kinds = {bundle_type(m).split("-")[-1] for m in mats}
        assert kinds == {"elliptic", "parabolic", "hyperbolic"}
        for m in mats:
            cls = conjugacy_canon(m)
            for _ in range(200):
                assert conjugacy_canon(m.conjugate_by(random_sl2(rng, 6))) == cls
        for n in range(-20, 21):
            for base in (SL2Matrix(1, n, 0, 1), -SL2Matrix(1, n, 0, 1)):
                for _ in range(10):
                    assert conjugacy_canon(base.conjugate_by(random_sl2(rng, 6))).data == n


def test_criterion_10_geography(capsys):
    with criterion(capsys, 10, "Stein geography report", 1):
        rep = stein_geography(Divisor((-2, -5)))
        assert rep.q == 13
        assert [c.case for c in rep.cases] == [1, 2, 3]
        assert [c.b_minus for c in rep.cases[1:]] == [8, 9]
        for d in [(-14, -3), (-20, -2), (-6, -6, -6, -6, -6)]:
            r = stein_geography(Divisor(d))
            assert r.q >= 23 and [c.case for c in r.cases] == [1]


@pytest.fixture(scope="session", autouse=True)
def _warm_numba():
    # compile the dual-cusp kernels outside the timed region
    involution_sweep(2, -4)
