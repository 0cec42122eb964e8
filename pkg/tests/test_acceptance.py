"""Acceptance gate: eight criteria, one test and one pass/fail line each.

Every threshold here is checked against values computed independently in
this file (plain float arithmetic, math.comb, subprocess calls), not
against the package's own intermediate results, except where the
criterion is explicitly about internal consistency.
"""

import math
import random
import subprocess
import sys
import time

import pytest

from volgap.bounds import (
    GapParams,
    GapVariant,
    case1_correction_numerator,
    case2_vs_doubled_thm1_log_margin,
    final_inequality_log_margin,
    gap_excess,
    log_improvement_vs_cly,
)
from volgap.claims import run_claim_suite, suite_passed
from volgap.logdomain import LogScalar, log_add
from volgap.solver import bisect, f1, f1_prime, g_prime_sign_scan, gamma_n, h
from volgap.specials import HalfInteger, cly_constant, upper_incomplete_gamma_at_one
from volgap.spectral import heat_trace, sphere_level, trace_bound
from volgap.tables import build_gap_table, render_csv


def test_01_dimensional_constants_match_closed_forms():
    c3 = cly_constant(3)
    c4 = cly_constant(4)
    assert abs(c3 - 3.58) <= 0.01
    assert abs(c4 - 16.0) <= 1e-9 * 16.0
    print(f"criterion 1: C_3 = {c3:.12f} (within 0.01 of 3.58), "
          f"C_4 = {c4:.17g} (exact to 1e-9)")


def test_02_tuning_root_bracket_and_residual():
    lo, hi = h(1.42), h(1.44)
    assert lo > 0.0 > hi
    # independent direct evaluations of 4 + (1 + 2a - 2a^2) e^(2a)
    direct_lo = 4.0 + (1.0 + 2.84 - 2.0 * 1.42 **
                       2) * math.exp(2.84)
    direct_hi = 4.0 + (1.0 + 2.88 - 2.0 * 1.44 ** 2) * math.exp(2.88)
    assert lo == pytest.approx(direct_lo, abs=1e-12)
    assert hi == pytest.approx(direct_hi, abs=1e-12)
    assert abs(lo - 0.699) <= 0.01
    assert abs(hi - (-0.760)) <= 0.01
    r = bisect(h, 1.42, 1.44, tol=1e-12)
    assert 1.42 < r.value < 1.44
    assert abs(h(r.value)) <= 1e-9
    print(f"criterion 2: h(1.42) = {lo:+.6f}, h(1.44) = {hi:+.6f}, "
          f"root = {r.value:.12f}, |h(root)| = {abs(h(r.value)):.2e}")


def test_03_tuned_excess_beats_classical_by_165():
    # plain arithmetic, no package calls
    independent = 0.43 * (7.0 + 2.0 * math.exp(4.0)) / (
        5.29 + 1.43 * math.exp(2.86)
    )
    assert independent > 1.65
    params = GapParams(n=2, ell=1, alpha=1.43)
    packaged = gap_excess(params, GapVariant.THM1).ratio_vs_cly.to_float()
    assert packaged == pytest.approx(independent, abs=1e-4)
    print(f"criterion 3: excess ratio at (n=2, ell=1, alpha=1.43) = "
          f"{packaged:.10f} > 1.65, plain-arithmetic check {independent:.10f}")


def test_04_heat_trace_dominated_on_grid():
    points = 0
    worst = math.inf
    for n in range(2, 11):
        for j in range(37):
            t = 1.0 + 0.25 * j
            value = heat_trace(n, t).value
            bound = trace_bound(n, t)
            assert value <= bound, (n, t)
            worst = min(worst, bound - value)
            points += 1
    assert points == 333
    print(f"criterion 4: trace <= bound at all {points} grid points, "
          f"min slack = {worst:.3e}")


def test_05_optimal_tuning_stays_in_range():
    g2 = gamma_n(2)
    assert g2.value > 1.3
    assert abs(g2.residual) <= 1e-9
    for n in range(3, 31):
        r = gamma_n(n)
        # strict positivity lives in the excess coordinate: past n = 16
        # the excess is smaller than the ulp of 1 and 1 + u == 1
        assert r.root > 0.0
        assert r.value <= 1.3
        assert abs(r.residual) <= 1e-9
    print(f"criterion 5: gamma_2 = {g2.value:.12f} > 1.3, and "
          f"1 < gamma_n <= 1.3 with residual <= 1e-9 for n in [3, 30]")


def test_06_bound_orderings_hold_on_full_grid():
    started = time.monotonic()
    floor = math.log(1.65)
    checked = 0
    for n in range(2, 31):
        for ell in range(1, 31):
            improvement = log_improvement_vs_cly(n, ell, 1.43)
            assert improvement > floor, (n, ell)
            params = GapParams(n=n, ell=ell, alpha=1.43)
            assert case1_correction_numerator(params).sign == 1, (n, ell)
            assert case2_vs_doubled_thm1_log_margin(n, ell, 1.43) > 0.0, (n, ell)
            assert final_inequality_log_margin(n, ell, 1.43) > 0.0, (n, ell)
            checked += 1
    elapsed = time.monotonic() - started
    assert checked == 29 * 30
    assert elapsed < 5.0
    print(f"criterion 6: all four orderings hold at {checked} grid points "
          f"in {elapsed:.2f}s")


def test_07_property_suites():
    # gamma recurrence: G(s+1) = s G(s) + 1/e at half-integer steps
    for k in range(1, 21):
        lhs = upper_incomplete_gamma_at_one(HalfInteger(k + 2))
        rhs = (k / 2.0) * upper_incomplete_gamma_at_one(HalfInteger(k)) + math.exp(-1.0)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))

    # derivative against central finite differences
    rng = random.Random(20260815)
    step = 1e-7
    checked = 0
    while checked < 6:
        n = rng.randint(2, 6)
        ell = rng.randint(1, 5)
        alpha = rng.uniform(1.05, 2.5)
        if alpha * ell <= 1.0 + 1e-6:
            continue
        fd = (f1(alpha + step, n, ell).to_float()
              - f1(alpha - step, n, ell).to_float()) / (2.0 * step)
        assert f1_prime(alpha, n, ell).to_float() == pytest.approx(fd, rel=1e-6)
        checked += 1

    # monotonicity scan: g' < 0 throughout its domain
    betas = [0.05 * k for k in range(1, 61)]
    for n in (2, 3, 4):
        samples = g_prime_sign_scan(n, betas)
        assert all(s.sign == -1 for s in samples if s.in_domain)
        assert any(s.in_domain for s in samples)

    # eigenvalue multiplicities against the closed product form
    for n in range(2, 7):
        for k in range(0, 9):
            level = sphere_level(n, k)
            if k == 0:
                closed = 1
            else:
                closed = (2 * k + n - 1) * math.comb(k + n - 2, k - 1) * (
                    k + n - 1
                ) // ((k + n - 1) * k)
            assert level.multiplicity == math.comb(n + k, n) - math.comb(n + k - 2, n)
            assert level.multiplicity == closed

    # log-domain round trip and field laws
    rng = random.Random(20260816)
    for _ in range(200):
        x = math.ldexp(rng.uniform(1.0, 2.0), rng.randint(-600, 600))
        back = LogScalar.from_float(x).to_float()
        envelope = 2.0 * sys.float_info.epsilon * max(1.0, abs(math.log(x)))
        assert abs(back - x) <= envelope * x
    for _ in range(100):
        a = LogScalar.from_float(rng.uniform(-5.0, 5.0))
        b = LogScalar.from_float(rng.uniform(-5.0, 5.0))
        c = LogScalar.from_float(rng.uniform(-5.0, 5.0))
        left = (a * log_add(b, c)).to_float()
        right = log_add(a * b, a * c).to_float()
        assert left == pytest.approx(right, rel=1e-14)
        if not b.is_zero:
            assert ((a * b) / b).to_float() == pytest.approx(a.to_float(), rel=1e-14)

    # determinism: identical inputs, identical bytes
    table = build_gap_table([2, 3], [1, 2])
    assert render_csv(table) == render_csv(build_gap_table([2, 3], [1, 2]))
    first = run_claim_suite()
    second = run_claim_suite()
    assert first == second
    assert suite_passed(first)

    print("criterion 7: recurrence, derivative, monotonicity, multiplicity, "
          "log-domain, and determinism properties all hold")


def test_08_verifier_exit_codes():
    base = [sys.executable, "-m", "volgap.cli", "verify",
            "--n-range", "2:6", "--l-range", "1:3"]
    clean = subprocess.run(base, capture_output=True, text=True)
    assert clean.returncode == 0, clean.stdout + clean.stderr
    assert "19/19 claims passed" in clean.stdout

    hurt = subprocess.run(base + ["--cn-scale", "1.001"],
                          capture_output=True, text=True)
    assert hurt.returncode != 0
    assert "FAIL" in hurt.stdout
    assert "C4_EXACT" in hurt.stdout  # the verdict names what broke
    print(f"criterion 8: clean verify exits 0; perturbed C_n exits "
          f"{hurt.returncode} and names the failing claim")
