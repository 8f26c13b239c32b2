"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with  pytest tests/test_acceptance.py -v -s  to see the per-criterion
lines; every tolerance is pinned here, nothing is deferred.
"""

import math
import time

import numpy as np
import pytest

from phisub import (
    BoundedMartingaleDifference,
    CenteredUniformCgf,
    GaussianCgf,
    IdenticalCopies,
    MEAN_SCALE,
    MZ_SCALE,
    NFunctionSpec,
    PIndex,
    Rademacher,
    RademacherCgf,
    SequenceSpec,
    SllnBoundParams,
    TailQuery,
    convergence_report,
    exceedance_frequency,
    generate_sequence,
    legendre_transform,
    partial_sum_tail_bound,
    phi_p_eval,
    series_sum_bound,
    slln_condition_fit,
    tail_bound,
    tau_norm,
)

P_SET = [1.25, 1.5, 2.0, 3.0, 5.0]
CHECKPOINTS = (1_000, 10_000, 100_000, 1_000_000)
N_SEEDS = 100


def _criterion(num, passed, detail):
    print(f"[criterion {num:2d}] {'PASS' if passed else 'FAIL'} - {detail}")
    assert passed, f"criterion {num}: {detail}"


def _abs_partial_sums(dist, n_seeds, checkpoints):
    """|S_n| at each checkpoint for seeds 0..n_seeds-1, one row per seed."""
    starts = np.array([0] + list(checkpoints[:-1]), dtype=np.int64)
    out = np.empty((n_seeds, len(checkpoints)))
    for seed in range(n_seeds):
        path = generate_sequence(SequenceSpec(dist, checkpoints[-1], seed))
        out[seed] = np.abs(np.cumsum(np.add.reduceat(path, starts)))
    return out


@pytest.fixture(scope="module")
def rademacher_abs_sums():
    return _abs_partial_sums(Rademacher(), N_SEEDS, CHECKPOINTS)


@pytest.fixture(scope="module")
def martingale_abs_sums():
    return _abs_partial_sums(BoundedMartingaleDifference(1.0), N_SEEDS, CHECKPOINTS)


@pytest.fixture(scope="module")
def rademacher_mc_report():
    t0 = time.monotonic()
    report = convergence_report(
        SequenceSpec(Rademacher(), 10_000, 0), s=1.0,
        n_grid=[100, 1_000, 10_000], eps_grid=[0.1, 0.3, 0.5],
        replications=10_000, seed_base=0, p=2.0, tau_single=1.0,
        normalizations=(MEAN_SCALE,))
    return report, time.monotonic() - t0


@pytest.fixture(scope="module")
def martingale_mc_report():
    t0 = time.monotonic()
    report = convergence_report(
        SequenceSpec(BoundedMartingaleDifference(1.0), 10_000, 0), s=1.0,
        n_grid=[100, 1_000, 10_000], eps_grid=[0.1, 0.3, 0.5],
        replications=10_000, seed_base=0, p=2.0, tau_single=1.0,
        normalizations=(MEAN_SCALE,))
    return report, time.monotonic() - t0


def test_criterion_01_conjugate_identity():
    t0 = time.monotonic()
    worst = 0.0
    ys = np.linspace(-10.0, 10.0, 101)
    for p in P_SET:
        spec = NFunctionSpec.builtin(p)
        q = PIndex(p).q
        for y in ys:
            err = abs(legendre_transform(spec, float(y)).value - phi_p_eval(q, float(y)))
            worst = max(worst, err)
    elapsed = time.monotonic() - t0
    _criterion(1, worst < 1e-6 and elapsed < 5.0,
               f"max |numeric conjugate - phi_q| = {worst:.3g} "
               f"(tol 1e-6), runtime {elapsed:.2f}s (limit 5s)")


def test_criterion_02_biconjugation():
    worst = 0.0
    xs = np.linspace(-5.0, 5.0, 101)
    for p in P_SET:
        base = NFunctionSpec.builtin(p)
        conj = NFunctionSpec.from_callable(
            lambda y, b=base: legendre_transform(b, y).value)
        for x in xs:
            err = abs(legendre_transform(conj, float(x)).value - phi_p_eval(p, float(x)))
            worst = max(worst, err)
    _criterion(2, worst < 1e-5,
               f"max |phi_p** - phi_p| on [-5,5] = {worst:.3g} (tol 1e-5)")


def test_criterion_03_exact_norms():
    parts = []
    ok = True
    for sigma in [0.1, 1.0, 3.0]:
        tau = tau_norm(GaussianCgf(sigma), 2).tau
        ok &= abs(tau - sigma) <= 1e-9
        parts.append(f"gauss({sigma})={tau:.10g}")
    tau_r = tau_norm(RademacherCgf(), 2).tau
    ok &= abs(tau_r - 1.0) <= 1e-3
    parts.append(f"rademacher={tau_r:.6f}")
    tau_u = tau_norm(CenteredUniformCgf(1.0), 2).tau
    ok &= abs(tau_u - 1.0 / math.sqrt(3.0)) <= 1e-3
    parts.append(f"uniform={tau_u:.6f}")
    _criterion(3, ok, "; ".join(parts))


def test_criterion_04_specialization_identity():
    worst = 0.0
    count = 0
    for p in [1.5, 2.0, 3.0, 5.0]:
        q = PIndex(p).q
        for c in [0.5, 1.0, 2.0]:
            for alpha in [0.3, 0.5, 0.8]:
                for eps in [0.5, 1.0]:
                    for n in [7, 33, 513, 4097]:
                        if n <= (c / eps) ** (1.0 / alpha):
                            continue
                        if (n ** (q * alpha)) * ((eps / c) ** q) / q > 200.0:
                            continue
                        params = SllnBoundParams(c=c, alpha=alpha, p=PIndex(p))
                        psb = partial_sum_tail_bound(params, TailQuery(eps, n)).value
                        generic = tail_bound(p, c * n ** (1.0 - alpha), n * eps)
                        worst = max(worst, abs(psb - generic) / generic)
                        count += 1
    _criterion(4, count >= 100 and worst < 1e-12,
               f"{count} valid-regime points, worst rel diff {worst:.3g} (tol 1e-12)")


def test_criterion_05_series_dominance():
    t0 = time.monotonic()
    param_sets = [
        (2.0, 1.0, 0.5, 1.0), (2.0, 1.0, 0.5, 0.2), (2.0, 1.0, 0.5, 3.0),
        (2.0, 0.5, 0.3, 0.5), (2.0, 2.0, 0.8, 1.0), (2.0, 1.0, 1.0, 0.5),
        (1.5, 1.0, 0.5, 1.0), (1.5, 0.5, 0.8, 0.7), (1.5, 2.0, 0.3, 1.5),
        (1.2, 1.0, 0.5, 1.0), (1.2, 1.0, 0.9, 0.4),
        (3.0, 1.0, 0.5, 1.0), (3.0, 2.0, 0.2, 1.0), (3.0, 0.5, 0.7, 0.3),
        (5.0, 1.0, 0.5, 1.0), (5.0, 1.0, 0.1, 2.0),
        (2.0, 3.0, 0.4, 0.8), (2.0, 1.0, 0.05, 3.0), (4.0, 1.0, 0.6, 0.9),
        (2.5, 1.5, 0.5, 0.6),
    ]
    assert len(param_sets) == 20
    ok = True
    worst_margin = math.inf
    for p, c, alpha, eps in param_sets:
        report = series_sum_bound(SllnBoundParams(c=c, alpha=alpha, p=PIndex(p)), eps)
        q = p / (p - 1.0)
        n = np.arange(1, 1_000_001, dtype=float)
        amp = 2.0 * math.exp(1.0 / q - 0.5)
        with np.errstate(over="ignore"):
            terms = np.minimum(1.0, amp * np.exp(-(n ** (q * alpha)) * (eps / c) ** q / q))
        terms[n <= (c / eps) ** (1.0 / alpha)] = 1.0
        brute = float(terms.sum())
        ok &= report.finite and report.upper_bound >= brute
        worst_margin = min(worst_margin, report.upper_bound - brute)
    # spot-check the canonical set's brute-force tail value
    tail = 2.0 * math.exp(-1.0) / (1.0 - math.exp(-0.5))
    ok &= abs(tail - 1.8699) < 1e-4
    elapsed = time.monotonic() - t0
    _criterion(5, ok and elapsed < 30.0,
               f"20 parameter sets, min(certified - brute) = {worst_margin:.3g} >= 0, "
               f"runtime {elapsed:.2f}s (limit 30s)")


def test_criterion_06_monte_carlo_dominance(rademacher_mc_report):
    report, elapsed = rademacher_mc_report
    valid = [r for r in report.exceedances if r.bound_valid]
    invalid = [r for r in report.exceedances if not r.bound_valid]
    ok = len(valid) >= 7 and not report.any_violation
    worst = max((r.frequency - r.bound) / max(r.std_error, 1e-12) for r in valid)
    # eps=0.1 at n=100 sits below the validity threshold (c/eps)^2 = 100
    ok &= any(r.n == 100 and r.epsilon == 0.1 for r in invalid)
    ok &= elapsed < 120.0
    _criterion(6, ok,
               f"{len(valid)} valid points, worst (freq-bound)/se = {worst:.2f} "
               f"(must be <= 3), runtime {elapsed:.1f}s (limit 120s)")


def test_criterion_07_slln_convergence(rademacher_abs_sums):
    ratios = rademacher_abs_sums / np.array(CHECKPOINTS, dtype=float)
    mean_curve = ratios.mean(axis=0)
    final_ok = mean_curve[-1] < 0.005
    decreasing_ok = bool(np.all(np.diff(mean_curve) < 0.0))
    per_seed_final = int(np.sum(ratios[:, -1] < 0.005))
    per_seed_monotone = int(np.sum(np.all(np.diff(ratios, axis=1) < 0.0, axis=1)))
    print(f"    diagnostic: per-seed monotone-decreasing trajectories: "
          f"{per_seed_monotone}/{N_SEEDS} (not gated; see mean curve)")
    _criterion(7, final_ok and decreasing_ok and per_seed_final >= 95,
               f"mean |S_n|/n at 1e6 = {mean_curve[-1]:.5f} (< 0.005), mean curve "
               f"decreasing over {list(CHECKPOINTS)}: {decreasing_ok}, per-seed "
               f"final < 0.005 in {per_seed_final}/100 seeds (need >= 95)")


def test_criterion_08_marcinkiewicz_zygmund(rademacher_abs_sums):
    s = 1.5
    scaled = rademacher_abs_sums / np.power(np.array(CHECKPOINTS, dtype=float), 1.0 / s)
    mean_final = float(scaled[:, -1].mean())
    report = convergence_report(
        SequenceSpec(Rademacher(), 1_000_000, 0), s=s,
        n_grid=list(CHECKPOINTS), eps_grid=[0.1, 0.3, 0.5],
        replications=N_SEEDS, seed_base=0, p=2.0, tau_single=1.0,
        normalizations=(MZ_SCALE,))
    violations = [r for r in report.exceedances if r.violated]
    _criterion(8, mean_final < 0.3 and not violations,
               f"mean |n^(-1/{s}) S_n| at 1e6 = {mean_final:.4f} (< 0.3), "
               f"MZ bound violations: {len(violations)} (need 0)")


def test_criterion_09_negative_control():
    spec = SequenceSpec(IdenticalCopies(Rademacher()), 1_000_000, 0)
    f_small, se_small = exceedance_frequency(spec, MEAN_SCALE, 0.5, 1_000, 200, 0)
    f_large, se_large = exceedance_frequency(spec, MEAN_SCALE, 0.5, 1_000_000, 200, 0)
    diff = abs(f_large - f_small)
    se = math.hypot(se_small, se_large)
    no_decay = diff <= 2.0 * se
    fit = slln_condition_fit([(10, 10.0), (100, 100.0), (1000, 1000.0),
                              (10000, 10000.0)])
    _criterion(9, no_decay and not fit.satisfied,
               f"exceedance at n=1e3: {f_small}, n=1e6: {f_large} "
               f"(|diff| = {diff} <= 2 se = {2 * se}); linear norm table fit: "
               f"alpha = {fit.alpha:.2g}, hypothesis rejected = {not fit.satisfied}")


def test_criterion_10_martingale_passes_6_and_7(martingale_mc_report,
                                                martingale_abs_sums):
    report, elapsed = martingale_mc_report
    valid = [r for r in report.exceedances if r.bound_valid]
    dominance_ok = len(valid) >= 7 and not report.any_violation

    ratios = martingale_abs_sums / np.array(CHECKPOINTS, dtype=float)
    mean_curve = ratios.mean(axis=0)
    per_seed_final = int(np.sum(ratios[:, -1] < 0.005))
    slln_ok = (mean_curve[-1] < 0.005
               and bool(np.all(np.diff(mean_curve) < 0.0))
               and per_seed_final >= 95)
    _criterion(10, dominance_ok and slln_ok and elapsed < 120.0,
               f"bound dominance over {len(valid)} valid points: {dominance_ok} "
               f"(runtime {elapsed:.1f}s); mean |S_n|/n at 1e6 = "
               f"{mean_curve[-1]:.2e} (< 0.005), decreasing, per-seed final ok in "
               f"{per_seed_final}/100")
