"""Acceptance criteria, one test each, at their stated tolerances.

Each test records a PASS/FAIL line that is repeated in the terminal summary.
"""

import math
import random
import time
from fractions import Fraction as F
from pathlib import Path

from walkident import walks
from walkident.exact import is_pole
from walkident.identities import REVERSAL_TARGET, check_reversal, eval_identity
from walkident.prove import PROVABLE, seeded_mutations, verify_induction, verify_polynomial
from walkident.render import render_walk, scene_for
from walkident.walks import (
    avoids,
    check_decomposition,
    check_recursion,
    closed_form_T,
    count_avoiding,
    count_paths,
    count_touching,
    decomposition_grid,
    end_at,
    first_passage_count,
    first_reaches,
    oracle_count,
    simulate,
    touches,
)

GOLDEN = Path(__file__).parent / "golden"
RATIONALS = [F(1, 2), F(-1, 2), F(1, 3), F(7, 5), F(-3, 2), F(9, 7)]


def test_criterion_01_integer_sweep(criterion):
    start = time.perf_counter()
    counts = {"equal": 0, "unequal": 0, "pole": 0}
    bad = []
    span = range(-10, 11)
    for ident in ("I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8"):
        two = ident in ("I1", "I2", "I3", "I4")
        for m in span:
            for r in (span if two else [None]):
                for n in range(26):
                    rep = eval_identity(ident, n, m, r)
                    counts[rep.status] += 1
                    if rep.status == "unequal":
                        bad.append((ident, n, m, r))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    criterion(1, ok, f"I1-I8, n<=25, m,r in [-10,10]: {counts['equal']} equal, "
                     f"{counts['pole']} pole, {counts['unequal']} unequal, {elapsed:.1f}s")
    assert not bad, bad[:5]
    assert elapsed < 60


def test_criterion_02_rational_parameters(criterion):
    bad, total = [], 0
    for ident in ("I1", "I2", "I3", "I4"):
        for m in RATIONALS:
            for r in RATIONALS:
                for n in range(16):
                    total += 1
                    if eval_identity(ident, n, m, r).status != "equal":
                        bad.append((ident, n, m, r))
    for ident in ("I7", "I8"):
        for m in RATIONALS:
            for n in range(16):
                total += 1
                if eval_identity(ident, n, m).status != "equal":
                    bad.append((ident, n, m))
    criterion(2, not bad, f"{total} rational points, {len(bad)} failures")
    assert not bad, bad[:5]


def test_criterion_03_degenerate_limits(criterion):
    bad = []
    for ident in ("I7", "I8"):
        for n in range(21):
            rep = eval_identity(ident, n, -1, keep_terms=True)
            if rep.status != "equal" or any(is_pole(t) for t in rep.terms):
                bad.append((ident, n))
    first = eval_identity("I7", 1, -1, keep_terms=True)
    spot = first.terms == (2, 2) and first.lhs == first.rhs == 4
    for ident in ("I9", "I10"):
        for n in range(31):
            if eval_identity(ident, n).status != "equal":
                bad.append((ident, n))
    ok = not bad and spot
    criterion(3, ok, f"I7/I8 at m=-1 n<=20, I9/I10 n<=30; I7 n=1: {first.terms} -> {first.lhs}={first.rhs}")
    assert ok, bad


def _oracle_cases(N):
    for m in range(-N, N + 1, 2):
        yield [end_at(m)], count_paths(N, m)
        if m < 0:
            continue
        for r in range(-N, N + 1):
            yield [end_at(m), touches(r)], count_touching(N, m, r)
            if r < 0:
                yield [end_at(m), avoids(r)], count_avoiding(N, m, r)
                if -r <= 4:
                    yield [end_at(m), avoids(r)], closed_form_T(N, m, -r)
            if r >= 1:
                for k in range((N - r) // 2 + 1):
                    yield [end_at(m), first_reaches(r, r + 2 * k)], first_passage_count(N, m, r, k)


def test_criterion_04_oracle_equivalence(criterion):
    start = time.perf_counter()
    checked, bad = 0, []
    for N in range(15):
        for cons, value in _oracle_cases(N):
            ex = oracle_count(N, cons, backend="exhaustive")
            dp = oracle_count(N, cons, backend="dp")
            checked += 1
            if not ex == dp == value:
                bad.append((N, cons, ex, dp, value))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    criterion(4, ok, f"{checked} constraint sets with N<=14, both backends, {len(bad)} mismatches, {elapsed:.1f}s")
    assert not bad, bad[:3]
    assert elapsed < 60


def test_criterion_05_decompositions(criterion):
    bad, total = [], 0
    for which in walks.DECOMPOSITIONS:
        for params in decomposition_grid(which, 14):
            total += 1
            rep = check_decomposition(which, params)
            if rep.status != "equal":
                bad.append((which, params))
    spots = [
        (check_decomposition("cross-left", {"N": 4, "m": 0, "r": 1}), 6, (1, 2, 3)),
        (check_decomposition("band", {"N": 4, "m": 0, "r": -1}), 3, (2, 1)),
        (check_decomposition("reach-3", {"N": 5, "m": 3}), 4, (2, 2)),
    ]
    spots_ok = all(rep.lhs == rep.rhs == v and tuple(t for t in rep.terms if t) == terms
                   for rep, v, terms in spots)
    ok = not bad and spots_ok
    criterion(5, ok, f"9 decompositions, {total} grid points, {len(bad)} failures, spot values ok={spots_ok}")
    assert ok, bad[:5]


def test_criterion_06_recursion(criterion):
    bad, total = [], 0
    for N in range(21):
        for m in range(0, N + 1):
            for r in range(-N, N + 1):
                total += 1
                if check_recursion(N, m, r).status != "equal":
                    bad.append((N, m, r))
    off_diagonal = [p for p in bad if p[2] != p[1] + 1]
    detail = f"{total} points, {len(bad)} unequal"
    if bad:
        detail += (f" (all at r = m+1: {not off_diagonal}; first {bad[0]}: "
                   f"{check_recursion(*bad[0]).lhs} != {check_recursion(*bad[0]).rhs})")
    criterion(6, not bad, detail)
    assert not bad, f"{len(bad)} failures, e.g. {bad[:3]}"


def test_criterion_07_polynomial_proofs(criterion):
    failures = [(i, n) for i in PROVABLE for n in range(9) if not verify_polynomial(i, n).verified]
    survivors = [i for i, mut in seeded_mutations().items() if verify_polynomial(mut, 2).verified]
    ok = not failures and not survivors and len(seeded_mutations()) == 6
    criterion(7, ok, f"{len(PROVABLE)} identities x n<=8 verified; 6 mutations, {len(survivors)} survived")
    assert ok, (failures, survivors)


def test_criterion_08_induction(criterion):
    results = {i: all(c.verified for c in verify_induction(i, 20)) for i in ("I7", "I8")}
    ok = all(results.values())
    criterion(8, ok, f"induction to n=20: {results}")
    assert ok


def test_criterion_09_reversal(criterion):
    rng = random.Random(20240101)
    bad, total = [], 0
    for src in REVERSAL_TARGET:
        for _ in range(50):
            n = rng.randint(0, 8)
            m, r = (F(rng.randint(-60, 60), rng.choice([2, 3, 5, 7])) for _ in range(2))
            if m.denominator == 1 or r.denominator == 1:
                m, r = m + F(1, 11), r + F(1, 13)
            total += 1
            if check_reversal(src, n, m, r).status != "equal":
                bad.append((src, n, m, r))
    criterion(9, not bad, f"I2<->I3, I1, I4 fixed: {total} sampled rational points, {len(bad)} mismatches")
    assert not bad, bad[:5]


def test_criterion_10_monte_carlo(criterion):
    samples, p = 10**6, 56 / 256
    a = simulate(8, samples, 1)
    b = simulate(8, samples, 1)
    freq = a.frequency(2)
    band = 5 * math.sqrt(p * (1 - p) / samples)
    reproducible = a.ends == b.ends and a.touches == b.touches
    ok = abs(freq - p) <= band and reproducible
    criterion(10, ok, f"freq(2)={freq:.6f} vs p={p:.6f}, |diff|={abs(freq - p):.6f} <= {band:.6f}; "
                      f"reproducible={reproducible}")
    assert ok


def test_criterion_11_golden_figures(criterion):
    scenes = {"figure1.txt": scene_for("LRRLLLRL"),
              "figure2.txt": scene_for("LLRLLLLRRRLR", barrier=4, reflect=True)}
    same = {}
    for name, scene in scenes.items():
        first, second = render_walk(scene).encode(), render_walk(scene).encode()
        same[name] = first == second == (GOLDEN / name).read_bytes()
    ok = all(same.values())
    criterion(11, ok, f"byte-identical renders: {same}")
    assert ok
