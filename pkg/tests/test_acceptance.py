"""The thirteen acceptance criteria, one test each, at their stated tolerances.

Each test records a PASS/FAIL line that is printed in the terminal summary.
Timings are measured in-process after a warm-up call, so one-off JIT
compilation and interpreter start-up are excluded.
"""

from __future__ import annotations

import math
import random
import statistics
import time

import numpy as np

from evendecomp import experiments as ex
from evendecomp import rigs
from evendecomp import _kernels as K
from evendecomp.decompose import Thresholds, decompose_dense, decompose_sparse, decompose_uniform
from evendecomp.degeneracy import exact_even_degenerate
from evendecomp.graph import complete, emit_graph6
from evendecomp.oracle import census, exact_even_decomposable, graph_rows
from evendecomp.witness import Status, verify_witness


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def test_01_k4_verdict(acceptance):
    k4 = complete(4)

    def decide():
        return exact_even_decomposable(k4)[0], exact_even_degenerate(k4)[0]

    decide()
    runs = []
    for _ in range(7):
        verdict, dt = timed(decide)
        runs.append(dt)
    dt = statistics.median(runs)
    ok = verdict == (False, False) and dt < 1e-3
    acceptance(1, "K4 is non-even-decomposable and non-even-degenerate, < 1 ms", ok, f"{dt * 1e3:.3f} ms")
    assert ok


def test_02_census_n4_decomposability(acceptance):
    census(3)
    r, dt = timed(census, 4, degeneracy=False, exemplars=5, workers=1)
    fails = r.exemplars["even_nondecomposable"]
    ok = r.even_edge == 32 and r.even_decomposable == 31 and fails == [emit_graph6(complete(4))] and dt < 1.0
    acceptance(2, "n=4: 31 of 32 even-edge graphs even-decomposable, only K4 fails, < 1 s", ok, f"{r.even_decomposable}/{r.even_edge}, {dt:.3f} s")
    assert ok


def test_03_census_n4_degeneracy(acceptance):
    census(3)
    r, dt = timed(census, 4, decomposability=False, exemplars=16, workers=1)
    ex_graphs = r.exemplars["non_even_degenerate"]
    from evendecomp.graph import parse_graph6

    all_odd = all(all(g.degree(v) % 2 for v in range(4)) for g in map(parse_graph6, ex_graphs))
    ok = (
        r.total == 64
        and r.non_even_degenerate == 8
        and len(ex_graphs) == 8
        and all_odd
        and r.nondegenerate_not_all_odd == 0
        and dt < 1.0
    )
    acceptance(3, "n=4: exactly 8 of 64 non-even-degenerate, all with all-odd degrees, < 1 s", ok, f"{r.non_even_degenerate}/64, {dt:.3f} s")
    assert ok


def test_04_small_n_degenerate(acceptance):
    census(3)
    t0 = time.perf_counter()
    counts = [census(n, decomposability=False, workers=1).non_even_degenerate for n in range(4)]
    dt = time.perf_counter() - t0
    ok = counts == [0, 0, 0, 0] and dt < 1.0
    acceptance(4, "n <= 3: zero non-even-degenerate graphs, < 1 s", ok, f"{counts}, {dt:.3f} s")
    assert ok


def test_05_k4_free_n7(acceptance):
    results = []
    t0 = time.perf_counter()
    for n in range(8):
        r = census(n, degeneracy=False)
        results.append((r.k4free_even, r.k4free_even_nondecomposable))
    dt = time.perf_counter() - t0
    r7 = results[7]
    ok = all(bad == 0 for _, bad in results) and r7[0] > 0 and dt < 30 * 60
    acceptance(5, "n <= 7: every even-edge K4-free graph is even-decomposable", ok, f"{r7[0]} K4-free even graphs at n=7, {dt:.1f} s")
    assert ok


def test_06_degenerate_implies_decomposable(acceptance):
    t0 = time.perf_counter()
    bad = [census(n).degenerate_even_nondecomposable for n in range(7)]
    dt = time.perf_counter() - t0
    ok = bad == [0] * 7 and dt < 120
    acceptance(6, "n <= 6: no even-degenerate even-edge graph is non-decomposable", ok, f"{dt:.2f} s")
    assert ok


def test_07_verify_lemmas(acceptance):
    results, dt = timed(rigs.verify_lemmas)
    p3 = [r for r in results if "stage" in r.name]
    failed = [r for r in results if not r.ok]
    # 10 signatures x (4 stage-2 sizes + 3 stage-3 sizes) x 2 regimes
    ok = len(p3) == 140 and not failed and dt < 10
    detail = f"{len(results) - len(failed)}/{len(results)} cases, {dt:.2f} s"
    if failed:
        detail += f"; first failure: {failed[0].name}: {failed[0].detail}"
    acceptance(7, "verify-lemmas: all parity rigs pass, < 10 s", ok, detail)
    assert ok


def test_08_planted_soundness(acceptance):
    per_regime = 3334
    decomposed = {"uniform": 0, "sparse": 0, "dense": 0}
    witness_failures = 0
    assertion_failures = 0
    uniform_unmet = 0
    t0 = time.perf_counter()
    for regime in decomposed:
        for i in range(per_regime):
            rng = random.Random(f"{regime}-{i}")
            try:
                if regime == "uniform":
                    g, gadgets, t = rigs.planted_uniform(rng)
                    out = decompose_uniform(g, gadgets, t)
                    uniform_unmet += not out.decomposed
                elif regime == "sparse":
                    g, gadgets = rigs.planted_sparse(rng)
                    out = decompose_sparse(g, Thresholds(len(gadgets), g.n + 1, g.n), packing=gadgets)
                else:
                    g, gadgets = rigs.planted_dense(rng)
                    out = decompose_dense(g, Thresholds(len(gadgets), g.n + 1, g.n), packing=gadgets)
            except AssertionError:
                assertion_failures += 1
                continue
            if out.status is Status.DECOMPOSED:
                decomposed[regime] += 1
                steps = np.array(list(out.witness.steps) + [0], dtype=np.uint64)
                if not verify_witness(g, out.witness) or not K.replay_ok(graph_rows(g), g.n, steps, len(out.witness.steps)):
                    witness_failures += 1
    dt = time.perf_counter() - t0
    ok = witness_failures == 0 and assertion_failures == 0 and uniform_unmet == 0 and dt < 300
    acceptance(
        8,
        "planted gadgets: every Decomposed witness verifies, no postcondition failures",
        ok,
        f"{3 * per_regime} instances, decomposed {decomposed}, {dt:.1f} s",
    )
    assert ok


def test_09_c4_monte_carlo(acceptance):
    ex.estimate_c(4, 1000, seed=1)
    rec, dt = timed(ex.estimate_c, 4, 1_000_000, 20240601)
    sigma = math.sqrt(0.125 * 0.875 / rec.samples)
    ok = abs(rec.estimate - 0.125) <= 3 * sigma and dt < 30
    acceptance(9, "c4 estimate within 3 sigma of 1/8 (10^6 samples)", ok, f"{rec.estimate:.5f}, {dt:.2f} s")
    assert ok


def test_10_recursion_inequality(acceptance):
    t0 = time.perf_counter()
    recs = {n: ex.estimate_c(n, 1_000_000, seed=1000 + n) for n in range(4, 16)}
    dt = time.perf_counter() - t0
    worst = -math.inf
    ok = True
    for n in range(4, 15):
        q = 2.0**-n
        a, b = recs[n], recs[n + 1]
        sigma = math.hypot(b.stderr, (1 - q) * a.stderr)
        slack = (1 - q) * a.estimate + q + 3 * sigma - b.estimate
        worst = max(worst, -slack)
        ok &= slack >= 0
    ok &= dt < 30 * 60
    summary = ", ".join(f"c{n}={recs[n].estimate:.4f}" for n in (4, 8, 12, 15))
    acceptance(10, "c_{n+1} <= (1-2^-n) c_n + 2^-n + 3 sigma for n = 4..14", ok, f"{summary}, {dt:.1f} s")
    assert ok


def test_11_removal_bound(acceptance):
    rec, dt = timed(ex.removal_process_stats, 30, 10, 3, 100_000, 777)
    bound = ex.removal_bound(10, 3)
    ok = rec.estimate >= bound - 3 * rec.stderr and dt < 600
    acceptance(11, "removal process: P(F) >= 1 - 7*2^(-t/2) - 4*2^(-a^2) - 3 sigma at (30, 10, 3)", ok, f"{rec.estimate:.5f} vs {bound:.4f}, {dt:.1f} s")
    assert ok


def test_12_statistical_suites(acceptance):
    alpha = 1e-3
    t0 = time.perf_counter()
    parity = [ex.degree_parity_uniformity(n, 1_000_000, seed=4200 + n) for n in (4, 6, 8, 10)]
    forget = [
        ex.forgetfulness(n, target, drop, 200_000, seed=4300 + 10 * n + drop)
        for n, target, drop in ((4, 0b0000, 3), (5, 0b00011, 4), (5, 0b11110, 0), (6, 0b101101, 2))
    ]
    dt = time.perf_counter() - t0
    pvals = [r.pvalue for r in parity + forget]
    ok = all(p > alpha for p in pvals) and dt < 300
    acceptance(12, "degree-parity uniformity and forgetfulness pass at 10^-3", ok, f"min p = {min(pvals):.3g}, {dt:.1f} s")
    assert ok


def test_13_determinism(acceptance):
    runs = {
        "c": lambda w: ex.estimate_c(9, 120_000, 5, workers=w, timing=False),
        "bstar": lambda w: ex.estimate_b_star(6, 110_000, 6, workers=w, timing=False),
        "removal": lambda w: ex.removal_process_stats(12, 4, 2, 105_000, 7, workers=w, timing=False),
        "nondecomposable": lambda w: ex.estimate_nondecomposable(8, 0.6, 101_000, 8, workers=w, timing=False),
        "nondecomposable-constructive": lambda w: ex.estimate_nondecomposable(20, 0.1, 6, 9, workers=w, timing=False),
        "parity": lambda w: ex.degree_parity_uniformity(7, 130_000, 10, workers=w).to_record(),
        "forget": lambda w: ex.forgetfulness(5, 0b00110, 1, 60_000, 11, workers=w).to_record(),
    }
    t0 = time.perf_counter()
    mismatched = []
    for name, fn in runs.items():
        texts = set()
        for w in (1, 2, 8):
            rec = fn(w)
            texts.add(ex.records_to_text([rec], "json") + ex.records_to_text([rec], "csv"))
        if len(texts) != 1:
            mismatched.append(name)
    census_texts = {census(6, exemplars=3, workers=w).to_json() for w in (1, 2, 8)}
    if len(census_texts) != 1:
        mismatched.append("census")
    dt = time.perf_counter() - t0
    ok = not mismatched and dt < 300
    acceptance(13, "byte-identical records at 1, 2 and 8 workers", ok, f"{len(runs) + 1} experiments, {dt:.1f} s" + (f"; differ: {mismatched}" if mismatched else ""))
    assert ok
