"""Acceptance suite: one test per criterion, each printing a pass/fail
line with its runtime.

Criterion 6 (estimator soundness) runs over the instances generated by
criteria 1-5, which register them in INSTANCES as they run; the tests in
this module therefore execute in definition order.
"""

import time

import numpy as np
import pytest

from hadamard_jsr import (GeneratorParams, gelfand_sequence,
                          gen_radius_lower, generate_instance,
                          joint_radius_upper, matrix_set,
                          radius_bracket_set, run_theorem, scalar_mitr_check,
                          symmetrization_sequence,
                          symmetrization_sequence_ab, chain_huang,
                          chain_zhan)
from hadamard_jsr.cli import run_command
from hadamard_jsr.instances import SplitMix64
from hadamard_jsr.oracle import oracle_gen_radius, oracle_spectral_radius

GOLDEN = (1.0 + np.sqrt(5.0)) / 2.0

# first set of every instance touched by criteria 1-5, for criterion 6
INSTANCES = []


def _report(num, name, ok, elapsed):
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] criterion {num} ({name}): {status} "
          f"({elapsed:.1f}s)", flush=True)


def _rand_matrix(rng, dim, density):
    m = np.zeros((dim, dim))
    for i in range(dim):
        for j in range(dim):
            if rng.next_unit() < density:
                m[i, j] = (rng.next_u64() + 1) / 2.0 ** 64
    return m


def test_criterion_1_single_matrix_chains():
    start = time.perf_counter()
    rng = SplitMix64(1001)
    bad = []
    for i in range(500):
        dim = 2 + int(rng.next_unit() * 5)  # 2..6
        density = 0.3 + 0.7 * rng.next_unit()
        count = 2 if i % 2 == 0 else 3
        mats = [_rand_matrix(rng, dim, density) for _ in range(count)]
        beta = rng.next_unit()
        rep = chain_zhan(mats[0], mats[1], beta)
        rep2 = chain_huang(mats)
        for r in (rep, rep2):
            if r.verdict != "verified" or any(m < -1e-9 for m in r.margins):
                bad.append((i, r.theorem_id, r.verdict))
        INSTANCES.append(matrix_set(mats))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30.0
    _report(1, "single-matrix chains", ok, elapsed)
    assert not bad, bad[:5]
    assert elapsed < 30.0


SET_CHAIN_IDS = ("powers", "refin", "kathyprop-mat", "finally", "kathyth1",
                 "equalities-joint", "kathyth2", "finally2", "geom-sym")


def test_criterion_2_set_chains():
    start = time.perf_counter()
    rng = SplitMix64(2002)
    bad = []
    for i in range(200):
        dim = 2 + i % 3                     # 2..4
        count = 2 + i % 2                   # 2..3 sets
        size = 1 + int(rng.next_unit() * 3)  # 1..3 matrices
        density = 0.5 + 0.5 * rng.next_unit()
        sets = generate_instance(
            GeneratorParams(dim, count, size, density, 1.0,
                            seed=rng.next_u64()))
        alpha = (1.0 / count, 1.0, 2.0)[i % 3]
        for tid in SET_CHAIN_IDS:
            rep = run_theorem(tid, sets, depth=6, n=1, alpha=alpha,
                              budget=20_000)
            if rep.verdict == "violated":
                bad.append((i, tid))
        INSTANCES.append(sets[0])
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 240.0
    _report(2, "set chains", ok, elapsed)
    assert not bad, bad[:5]
    assert elapsed < 240.0


def test_criterion_3_singleton_equalities():
    start = time.perf_counter()
    rng = SplitMix64(3003)
    worst = 0.0
    for i in range(200):
        dim = 2 + i % 4
        mats = [_rand_matrix(rng, dim, 1.0) for _ in range(3)]
        a, b, c = mats
        beta = rng.next_unit()
        w = np.array([rng.next_unit() + 0.1 for _ in range(3)])
        w /= w.sum()
        INSTANCES.append(matrix_set([a]))

        def rel(x, y):
            return abs(x - y) / max(1.0, abs(x), abs(y))

        # self-mean equality: rho(A) = rho(A^(a1) o ... o A^(am))
        mean = a ** w[0] * a ** w[1] * a ** w[2]
        worst = max(worst, rel(oracle_spectral_radius(a).value,
                               oracle_spectral_radius(mean).value))
        # pairwise-product equality chain through split powers
        r_ab = oracle_spectral_radius(a @ b).value
        split = lambda m: m ** 0.5 * m ** 0.5
        worst = max(worst, rel(
            r_ab, oracle_spectral_radius(split(a) @ split(b)).value))
        r_ba = oracle_spectral_radius(b @ a).value
        worst = max(worst, rel(r_ab, r_ab ** beta * r_ba ** (1 - beta)))
        # cyclic three-factor equality with split powers
        r_abc = oracle_spectral_radius(a @ b @ c).value
        cyc = [a @ b @ c, b @ c @ a, c @ a @ b]
        spl = lambda m: m ** beta * m ** (1 - beta)
        worst = max(worst, rel(
            r_abc, oracle_spectral_radius(spl(a) @ spl(b) @ spl(c)).value))
        prod = 1.0
        for wt, p in zip(w, cyc):
            prod *= oracle_spectral_radius(spl(p)).value ** wt
        worst = max(worst, rel(r_abc, prod))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8
    _report(3, "singleton equalities", ok, elapsed)
    assert worst <= 1e-8, worst


def test_criterion_4_golden_ratio_bracket():
    start = time.perf_counter()
    s = matrix_set([np.array([[1.0, 1.0], [0.0, 1.0]]),
                    np.array([[1.0, 0.0], [1.0, 1.0]])])
    INSTANCES.append(s)
    lows = [gen_radius_lower(s, d)[0] for d in (2, 3, 4)]
    bracket = radius_bracket_set(s, 12)
    elapsed = time.perf_counter() - start
    ok = (all(abs(lo - GOLDEN) <= 1e-6 for lo in lows)
          and bracket.width <= 0.2
          and bracket.lo - 1e-9 <= 1.6180339887 <= bracket.hi + 1e-9
          and elapsed < 10.0)
    _report(4, "golden-ratio bracket", ok, elapsed)
    assert ok, (lows, bracket, elapsed)


def test_criterion_5_symmetrization_monotonicity():
    start = time.perf_counter()
    rng = SplitMix64(5005)
    bad = []
    for i in range(100):
        dim = 2 + i % 2
        sets = generate_instance(
            GeneratorParams(dim, 1, 2, 0.6 + 0.4 * rng.next_unit(), 1.0,
                            seed=rng.next_u64()))
        psi = sets[0]
        INSTANCES.append(psi)
        upper = radius_bracket_set(psi, 6, word_budget=20_000).hi
        for alpha in (0.0, 0.3, 0.5, 1.0):
            seq = symmetrization_sequence(psi, alpha, 3, depth=6)
            los = [b.lo for _, b in seq.levels]
            if not all(x <= y + 1e-9 for x, y in zip(los, los[1:])):
                bad.append((i, alpha, "monotone", los))
            if los[-1] > upper + 1e-9:
                bad.append((i, alpha, "terminal", los[-1], upper))
        for a, b in ((1.0, 1.0), (0.7, 0.5)):
            seq = symmetrization_sequence_ab(psi, a, b, 3, depth=6)
            los = [x.lo for _, x in seq.levels]
            if not all(x <= y + 1e-9 for x, y in zip(los, los[1:])):
                bad.append((i, (a, b), "monotone", los))
            if los[-1] > upper ** (a + b) + 1e-9:
                bad.append((i, (a, b), "terminal"))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120.0
    _report(5, "symmetrization monotonicity", ok, elapsed)
    assert not bad, bad[:5]
    assert elapsed < 120.0


def test_criterion_6_estimator_soundness():
    start = time.perf_counter()
    assert INSTANCES, "criteria 1-5 must run first"
    bad = []
    for idx, s in enumerate(INSTANCES):
        depth = 3
        seq = gelfand_sequence(s, depth, word_budget=20_000)
        lo_env = seq.lower_envelope()
        hi_env = seq.upper_envelope()
        for d in range(depth):
            if lo_env[d] > hi_env[d] + 1e-9:
                bad.append((idx, d, lo_env[d], hi_env[d]))
        if len(s) ** depth <= 10 ** 6 and s.dim <= 16:
            o = oracle_gen_radius(s, depth)
            if not (lo_env[-1] <= o.value + 1e-8 * max(1.0, o.value)
                    and o.value <= hi_env[-1] + 1e-8 * max(1.0, o.value)):
                bad.append((idx, "oracle", o.value, lo_env[-1], hi_env[-1]))
    elapsed = time.perf_counter() - start
    ok = not bad
    _report(6, "estimator soundness", ok, elapsed)
    assert not bad, bad[:5]


def test_criterion_7_entrywise_laws():
    start = time.perf_counter()
    rng = np.random.default_rng(7007)
    n, draws = 4, 1000
    rel_tol = 1e-10
    ok = True
    # product of Hadamard means dominated by Hadamard mean of products
    a1, a2 = rng.random((draws, n, n)), rng.random((draws, n, n))
    b1, b2 = rng.random((draws, n, n)), rng.random((draws, n, n))
    alpha = 0.4
    lhs = np.matmul(a1 ** alpha * b1 ** (1 - alpha),
                    a2 ** alpha * b2 ** (1 - alpha))
    rhs = np.matmul(a1, a2) ** alpha * np.matmul(b1, b2) ** (1 - alpha)
    ok &= bool(np.all(lhs <= rhs + rel_tol * np.maximum(1.0, rhs)))
    # product of entrywise powers dominated by power of product, t >= 1
    t = 2.5
    lhs = np.matmul(a1 ** t, a2 ** t)
    rhs = np.matmul(a1, a2) ** t
    ok &= bool(np.all(lhs <= rhs + rel_tol * np.maximum(1.0, rhs)))
    # AM-GM: weighted geometric mean dominated by the arithmetic mean
    lhs = a1 ** alpha * b1 ** (1 - alpha)
    rhs = alpha * a1 + (1 - alpha) * b1
    ok &= bool(np.all(lhs <= rhs + rel_tol * np.maximum(1.0, rhs)))
    # scalar sum-of-geometric-means inequality on random grids
    for _ in range(draws):
        grid = rng.random((3, 2, 5))
        ok &= scalar_mitr_check(grid, [0.6, 0.7], tol=rel_tol)
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 20.0
    _report(7, "entrywise laws", ok, elapsed)
    assert ok


def test_criterion_8_determinism(tmp_path):
    start = time.perf_counter()
    a, b = tmp_path / "run1.txt", tmp_path / "run2.txt"
    code1 = run_command(["verify-all", "--seeds", "0..9", "--out", str(a)])
    code2 = run_command(["verify-all", "--seeds", "0..9", "--out", str(b)])
    identical = a.read_bytes() == b.read_bytes()
    elapsed = time.perf_counter() - start
    ok = identical and code1 == code2 == 0
    _report(8, "determinism", ok, elapsed)
    assert ok
