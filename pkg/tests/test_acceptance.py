"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import itertools
import math
import random
import time

import numpy as np
import sympy
from mpmath import mp

from conftest import ACCEPTANCE
from splitthue.analysis import (
    beta_vector,
    cramer_uv,
    fit_asymptotics,
    log_beta_two_ways,
    s_unit_form,
    siegel_residual,
    u_asymptotics,
)
from splitthue.certified_roots import lemma1_residual
from splitthue.errors import FitUnstable
from splitthue.eta_system import (
    build_for,
    det_Bk,
    discriminant,
    gershgorin_disks,
    in_disk_union,
    regulator_estimates,
)
from splitthue.family import SolutionRecord, evaluate, instantiate
from splitthue.sequences import family_structures, gamma_eps, growth_gap
from splitthue.solver import verify_corollary


def record(k, ok, text):
    ACCEPTANCE[k] = (bool(ok), text)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {text}")
    assert ok, text


def rel(observed, expected):
    return abs(observed / expected - 1)


def test_criterion_01_t1_solution_set(t1):
    t0 = time.perf_counter()
    rep = verify_corollary(t1, range(1, 9), 1000)
    exact = not rep.nontrivial_found and not any(rep.missing.values())
    ex = verify_corollary(t1, range(1, 4), 1000, strategy="exhaustive")
    agree = all([r.key for r in ex.per_n[n]] == [r.key for r in rep.per_n[n]] for n in range(1, 4))
    dt = time.perf_counter() - t0
    record(1, exact and agree and dt < 300,
           f"T1 n=1..8, |y|<=1000: trivial set only={exact}; exhaustive n=1..3 agrees={agree}; {dt:.1f}s")


def test_criterion_02_fibonacci_lucas(fl):
    t0 = time.perf_counter()
    rep = verify_corollary(fl, range(1, 7), 10**4)
    at = sorted(n for n, e in rep.extras.items() if e)
    dt = time.perf_counter() - t0
    record(2, at == [1, 3] and dt < 120, f"extras at n={at}; {dt:.1f}s")


def test_criterion_03_lemma1_residuals(t1):
    t0 = time.perf_counter()
    st = family_structures(t1)
    per_n = {n: lemma1_residual(t1, n, 512) for n in range(4, 15)}
    parts, ok = [], True
    for i in range(1, 5):
        fit = fit_asymptotics([(n, per_n[n][i - 1].residual) for n in per_n], "exp")
        want = float(gamma_eps(st, i))
        good = rel(1 / fit.r, want) <= 0.10
        ok &= good
        parts.append(f"i={i}: base {1 / fit.r:.1f} vs {want:g}")
    dt = time.perf_counter() - t0
    record(3, ok and dt < 60, "; ".join(parts) + f"; {dt:.1f}s")


def test_criterion_04_eta_grid(t1):
    t0 = time.perf_counter()
    p, d, ns = 256, 4, range(4, 21)
    systems = {n: build_for(t1, n, p)[2] for n in ns}
    tol = d * mp.mpf(2) ** (-p + 10)
    rows_ok = all(s.max_row_sum() <= tol for s in systems.values())
    parts, diag_ok = [], True
    for i in range(1, d + 1):
        fit = fit_asymptotics([(n, abs(systems[n].entry(i, i))) for n in ns], "exp")
        good = rel(fit.r, 1 / 75) <= 0.10
        diag_ok &= good
        parts.append(f"diag {i}: 1/{1 / fit.r:.1f}")
    top = fit_asymptotics([(n, abs(systems[n].entry(d - 1, d))) for n in ns], "exp")
    top_ok = rel(top.r, float(growth_gap(t1, d - 1, d, 1).predicted_base)) <= 0.10 and rel(top.r, 2) <= 0.10
    dt = time.perf_counter() - t0
    record(4, rows_ok and diag_ok and top_ok and dt < 60,
           f"row products ok={rows_ok}; {', '.join(parts)} (want 1/75); "
           f"entry ({d - 1},{d}) base {top.r:.3f} (want 2); {dt:.1f}s")


def test_criterion_05_det_Bk(t1):
    t0 = time.perf_counter()
    systems = {n: build_for(t1, n, 256)[2] for n in range(6, 31)}
    parts, ok = [], True
    for k in (1, 2, 3):
        fit = fit_asymptotics([(n, abs(det_Bk(s, k))) for n, s in systems.items()], "full")
        good = abs(fit.a - k) <= 0.25 and rel(fit.r, 1) <= 0.02
        ok &= good
        parts.append(f"k={k}: a={fit.a:.3f}, r={fit.r:.4f}")
    dt = time.perf_counter() - t0
    record(5, ok and dt < 60, "; ".join(parts) + f"; {dt:.1f}s")


def test_criterion_06_regulator_and_discriminant(t1):
    t0 = time.perf_counter()
    ests = []
    for n in range(6, 21):
        form, _, s = build_for(t1, n, 256)
        ests.append(regulator_estimates(s, form))
    x = sympy.Symbol("x")
    oracle_ok = True
    for n in (6, 13, 20):
        form = instantiate(t1, n)
        expr = sum(c * x**k for k, c in enumerate(form.coefficients))
        oracle_ok &= discriminant(form) == sympy.discriminant(expr, x)
    fr = fit_asymptotics([(e.n, e.R_G) for e in ests], "full")
    fd = fit_asymptotics([(e.n, e.log_disc) for e in ests], "full")
    ok = abs(fr.a - 3) <= 0.25 and abs(fd.a - 1) <= 0.2 and oracle_ok
    dt = time.perf_counter() - t0
    record(6, ok and dt < 120,
           f"R_G exponent {fr.a:.3f} (want 3); log|disc| exponent {fd.a:.3f} (want 1); "
           f"exact discriminants match oracle={oracle_ok}; {dt:.1f}s")


def test_criterion_07_cramer_structure(t1):
    t0 = time.perf_counter()
    p = 256
    tol = mp.mpf(2) ** (-p // 2)
    zero_ok = True
    for n in range(8, 31):
        s = build_for(t1, n, p)[2]
        zero_ok &= all(cramer_uv(s, j).structural_zero < tol for j in (1, 4))
    f1 = u_asymptotics(t1, range(8, 31), 1, p).fit
    f4 = u_asymptotics(t1, range(8, 31), 4, p).fit
    ok = zero_ok and rel(f1.r, 0.4) <= 0.05 and rel(f4.r, 0.6) <= 0.05
    dt = time.perf_counter() - t0
    record(7, ok and dt < 120,
           f"structural zeros ok={zero_ok}; u base j=1 {f1.r:.4f} (want 0.4), j=4 {f4.r:.4f} (want 0.6); {dt:.1f}s")


def test_criterion_08_siegel_s_unit_gershgorin(t1):
    t0 = time.perf_counter()
    p = 256
    tol = mp.mpf(2) ** (-p + 20)
    rng = random.Random(2024)
    st = family_structures(t1)
    cache = {}
    worst_s, worst_e = mp.mpf(0), mp.mpf(0)
    for _ in range(100):
        n = rng.randint(3, 14)
        if n not in cache:
            cache[n] = build_for(t1, n, p)
        form, roots, _ = cache[n]
        y = rng.choice([-1, 1]) * rng.randint(2, 10**6)
        x = rng.randint(-(10**12), 10**12)
        v = beta_vector(SolutionRecord(n, x, y, evaluate(form, x, y)), roots, p)
        for t in itertools.permutations(range(1, 5), 3):
            worst_s = max(worst_s, siegel_residual(roots, v, t))
        worst_e = max(worst_e, s_unit_form(roots, v, form, st).agreement)
    npr = np.random.default_rng(2024)
    contained = 0
    for _ in range(100):
        k = int(npr.integers(2, 8))
        A = npr.normal(size=(k, k)) * npr.uniform(0.1, 100)
        disks = gershgorin_disks(A.tolist())
        contained += all(in_disk_union(complex(z), disks) for z in np.linalg.eigvals(A))
    dt = time.perf_counter() - t0
    ok = worst_s < tol and worst_e < tol and contained == 100
    record(8, ok and dt < 60,
           f"max Siegel residual 2^{float(mp.log(worst_s, 2)) if worst_s else -math.inf:.0f}, "
           f"max S-unit disagreement 2^{float(mp.log(worst_e, 2)) if worst_e else -math.inf:.0f} "
           f"(tolerance 2^{-p + 20}); Gershgorin {contained}/100; {dt:.1f}s")


def test_criterion_09_b_over_I(t1):
    t0 = time.perf_counter()
    p = 256
    tol = mp.mpf(2) ** (-p // 2)
    worst = mp.mpf(0)
    types_ok = True
    for n in range(3, 11):
        form, roots, s = build_for(t1, n, p)
        d = form.d
        for i, g in enumerate(form.g_values, start=1):
            v = beta_vector(SolutionRecord(n, g, 1, evaluate(form, g, 1)), roots, p)
            types_ok &= v.type_j == i and v.product_ok
            want = [1 if k == i else 0 for k in range(1, d)] if i < d else [-1] * (d - 1)
            got = log_beta_two_ways(v, s).b_over_I
            worst = max([worst] + [abs(b - w) for b, w in zip(got, want)])
    dt = time.perf_counter() - t0
    record(9, worst < tol and types_ok and dt < 30,
           f"max component error {mp.nstr(worst, 3)} (tolerance 2^{-p // 2}); types ok={types_ok}; {dt:.1f}s")


def test_criterion_10_fitter(t1):
    t0 = time.perf_counter()
    f1 = fit_asymptotics([(n, 3**n) for n in range(5, 26)])
    ok1 = abs(f1.log_r - math.log(3)) <= 1e-6 and abs(f1.a) <= 1e-6
    f2 = fit_asymptotics([(n, n**3) for n in range(5, 26)])
    ok2 = abs(f2.a - 3) <= 1e-3 and abs(f2.log_r) <= 1e-6
    rng = np.random.default_rng(0)
    f3 = fit_asymptotics([(n, n**2 * 2.0**n * (1 + 0.01 * rng.standard_normal())) for n in range(5, 41)])
    ok3 = abs(f3.a - 2) <= 0.3 and rel(f3.log_r, math.log(2)) <= 0.02
    try:
        fit_asymptotics([(n, 2**n if n < 15 else 2**15 * 5 ** (n - 15)) for n in range(5, 26)])
        gate = False
    except FitUnstable:
        gate = True
    dt = time.perf_counter() - t0
    record(10, ok1 and ok2 and ok3 and gate and dt < 10,
           f"3^n ok={ok1}; n^3 ok={ok2} (a={f2.a:.5f}); n^2 2^n noisy ok={ok3} (a={f3.a:.3f}, "
           f"r={f3.r:.4f}); stability gate ok={gate}; {dt:.2f}s")
