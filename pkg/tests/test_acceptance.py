"""Acceptance criteria 1-10, one test each.

Every test prints a single ``PASS criterion N`` or ``FAIL criterion N`` line
(bypassing output capture) and then asserts the criterion.
"""
import time

import pytest

from hhh.braid import BraidWord, conjugate, torus_braid
from hhh.exactalg import TriSeries
from hhh.hilb import torus_prediction
from hhh.hochschild import markov_discrepancies, moy1_discrepancies, moy2_discrepancies, unknot_factor
from hhh.pipeline import compute_hhh, verify_euler, verify_symmetry

TREFOIL = BraidWord(2, (1, 1, 1))
FIGURE_EIGHT = BraidWord(3, (1, -2, 1, -2))
T25 = torus_braid(2, 5)
T34 = torus_braid(3, 4)
HOPF = BraidWord(2, (1, 1))
CORPUS = [BraidWord(1, ()), TREFOIL, FIGURE_EIGHT, T25, HOPF]


def report(capsys, n: int, ok: bool, detail: str = ""):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}" + (f": {detail}" if detail else ""))
    assert ok, detail


def test_criterion_1_unknot(capsys):
    start = time.perf_counter()
    res = compute_hhh(BraidWord(1, ()), window=40)
    elapsed = time.perf_counter() - start
    bad = res.unreduced.discrepancies(unknot_factor(40), 40)
    ok = res.reduced.to_rows() == [[0, 0, 0, 1]] and not bad and res.certified and elapsed < 1
    report(capsys, 1, ok, f"{elapsed:.2f}s, first discrepancy {bad[:1]}")


def test_criterion_2_moy2(capsys):
    start = time.perf_counter()
    bad = moy2_discrepancies(24)
    elapsed = time.perf_counter() - start
    report(capsys, 2, not bad and elapsed < 10, f"{elapsed:.2f}s, first discrepancy {bad[:1]}")


def test_criterion_3_moy1(capsys):
    start = time.perf_counter()
    bad = moy1_discrepancies(20)
    elapsed = time.perf_counter() - start
    report(capsys, 3, not bad and elapsed < 120, f"{elapsed:.2f}s, first discrepancy {bad[:1]}")


def test_criterion_4_markov_factors(capsys):
    failures = []
    for dots, n in [((), 2), ((1,), 3), ((1, 1), 3)]:
        first, second = markov_discrepancies(dots, n, 20)
        if first:
            failures.append((dots, "first", first[0]))
        if second:
            failures.append((dots, "second", second[0]))
    report(capsys, 4, not failures, f"violations {failures}")


def test_criterion_5_markov_invariance(capsys):
    start = time.perf_counter()
    words = [TREFOIL, BraidWord(3, (1, 1, 1, 2)), BraidWord(3, (1, 1, 1, -2)), conjugate(BraidWord(3, (1, 1, 1, 2)), 2)]
    tables = [compute_hhh(w).reduced.to_rows() for w in words]
    elapsed = time.perf_counter() - start
    ok = all(t == tables[0] for t in tables) and len(tables[0]) == 3 and elapsed < 300
    report(capsys, 5, ok, f"{elapsed:.2f}s, tables {tables}")


def test_criterion_6_euler(capsys):
    bad = []
    for w in CORPUS:
        rep = verify_euler(compute_hhh(w))
        if not rep.ok:
            bad.append((w.text(), rep.first_violation()))
    report(capsys, 6, not bad, f"violations {bad}")


def test_criterion_7_symmetry(capsys):
    bad = []
    timings = {}
    for name, w in [("trefoil", TREFOIL), ("figure-eight", FIGURE_EIGHT), ("T(2,5)", T25), ("T(3,4)", T34)]:
        start = time.perf_counter()
        rep = verify_symmetry(compute_hhh(w))
        timings[name] = round(time.perf_counter() - start, 1)
        if not rep.ok:
            bad.append((name, rep.first_violation()))
    ok = not bad and timings["T(3,4)"] < 1800
    report(capsys, 7, ok, f"timings {timings}, violations {bad}")


def test_criterion_8_torus_knots(capsys):
    bad = []
    for n, k in [(2, 1), (2, 2), (3, 1)]:
        res = compute_hhh(torus_braid(n, n * k + 1), window=20)
        engine = (res.unreduced - res.unreduced.shift(q=2)).truncate(20)
        diff = engine.discrepancies(torus_prediction(n, k, 20), 20)
        if diff:
            bad.append(((n, k), diff[0]))
    report(capsys, 8, not bad, f"violations {bad}")


def _same(x: TriSeries | None, y: TriSeries | None, cutoff: int) -> bool:
    if x is None or y is None:
        return x is None and y is None
    return not x.discrepancies(y, cutoff)


def test_criterion_9_degeneration(capsys):
    bad = []
    for w in CORPUS:
        a = compute_hhh(w)
        b = compute_hhh(w, minimize=False)
        c = compute_hhh(w, window=a.window + 8)
        W = a.window
        if not (_same(a.unreduced, b.unreduced, W) and _same(a.reduced, b.reduced, W)):
            bad.append((w.text(), "minimize"))
        if not (_same(a.unreduced, c.unreduced, W) and _same(a.reduced, c.reduced, W)):
            bad.append((w.text(), "window"))
    report(capsys, 9, not bad, f"violations {bad}")


def test_criterion_10_determinism(capsys):
    bad = []
    for w in CORPUS:
        dumps = {th: compute_hhh(w, threads=th).dumps() for th in (1, 4, 8)}
        if len(set(dumps.values())) != 1:
            bad.append(w.text())
    report(capsys, 10, not bad, f"non-deterministic {bad}")
