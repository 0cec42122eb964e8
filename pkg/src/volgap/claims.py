"""Verification suite for the numerical claims behind the gap bounds.

Every claim that the package's results rest on is expressed here as a
pure function returning a ClaimVerdict, so the whole chain of
assertions can be re-checked at any grid size from the CLI or from
tests.  A verdict records the checked statement (the anchor), PASS or
FAIL, the witness numbers that decide it, and the tolerance used when
the statement is quantitative rather than a strict inequality.

Claims never abort the suite: an evaluator that raises is reported as
ERROR with the exception text, and the remaining claims still run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import bounds, solver, spectral
from .bounds import DEFAULT_ALPHA, GapParams, GapVariant
from .specials import cly_constant, cly_constant_log, nc_product

_C3_REFERENCE = 3.58258102141221


@dataclass(frozen=True)
class SuiteConfig:
    """Grid and tolerance choices for the verification suite.

    cn_scale is a fault-injection hook: it multiplies the computed
    dimensional constant inside the two constant-value claims, so a
    deliberately perturbed run demonstrably fails.  Leave it at 1.0
    for real verification.
    """

    n_min: int = 2
    n_max: int = 30
    ell_min: int = 1
    ell_max: int = 30
    alpha: float = DEFAULT_ALPHA
    tol: float = 1e-12
    cn_scale: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.n_min, int) or self.n_min < 2:
            raise ValueError(f"n_min must be an int at least 2, got {self.n_min!r}")
        if not isinstance(self.n_max, int) or self.n_max < self.n_min:
            raise ValueError(f"n_max must be an int at least n_min, got {self.n_max!r}")
        if not isinstance(self.ell_min, int) or self.ell_min < 1:
            raise ValueError(f"ell_min must be an int at least 1, got {self.ell_min!r}")
        if not isinstance(self.ell_max, int) or self.ell_max < self.ell_min:
            raise ValueError(f"ell_max must be an int at least ell_min, got {self.ell_max!r}")
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha!r}")
        if self.alpha * self.ell_min <= 1.0:
            raise ValueError(
                f"alpha * ell_min must exceed 1 for the tuned bounds, got {self.alpha * self.ell_min!r}"
            )
        if not (0.0 < self.tol < 1.0):
            raise ValueError(f"tol must lie in (0, 1), got {self.tol!r}")
        if not (self.cn_scale > 0.0 and math.isfinite(self.cn_scale)):
            raise ValueError(f"cn_scale must be positive and finite, got {self.cn_scale!r}")


@dataclass(frozen=True)
class ClaimVerdict:
    claim_id: str
    anchor: str
    status: str  # PASS, FAIL or ERROR
    witnesses: dict = field(default_factory=dict)
    tolerance: float | None = None
    grid_note: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


def _verdict(claim_id, anchor, ok, witnesses, tolerance=None, grid_note=None):
    return ClaimVerdict(
        claim_id=claim_id, anchor=anchor,
        status="PASS" if ok else "FAIL",
        witnesses=witnesses, tolerance=tolerance, grid_note=grid_note,
    )


def _n_grid(config: SuiteConfig):
    """Dimensions n in the grid for which every exponent the suite forms
    still fits in a double.

    The deepest exponent is the case (i) correction, roughly
    -alpha (n+4) (n C_n); it overflows a few dimensions before n C_n
    itself does.  Returns (ns, note); note is None unless capped.
    """
    ns = []
    for n in range(config.n_min, config.n_max + 1):
        try:
            ncn = nc_product(n)
        except OverflowError:
            return ns, f"n capped at {n - 1}: n C_n exceeds float range beyond"
        shrink = (n + 4.0) * (n + 2.0 * config.ell_max) ** (2.0 / n) * 4.0 ** (1.0 / n)
        if math.isinf(config.alpha * ncn * (shrink - 1.0)):
            return ns, (
                f"n capped at {n - 1}: the case-correction exponent"
                " exceeds float range beyond"
            )
        ns.append(n)
    return ns, None


# ---------------------------------------------------------------- claims


def _claim_lem3_trace_bound(config: SuiteConfig) -> ClaimVerdict:
    anchor = (
        "sum_k m_k e^(-lambda_k t) <= 1 + (n+1) e^(-n t) + (C_n / t) e^(-n t)"
        " for the round n-sphere whenever t >= 1"
    )
    worst = math.inf
    worst_at = (0, 0.0)
    points = 0
    for n in range(2, 11):
        for j in range(37):  # t = 1, 1.25, ..., 10
            t = 1.0 + 0.25 * j
            trace = spectral.heat_trace(n, t).value
            margin = spectral.trace_bound(n, t) - trace
            points += 1
            if margin < worst:
                worst = margin
                worst_at = (n, t)
    return _verdict(
        "LEM3_TRACE_BOUND", anchor, worst >= 0.0,
        {
            "min_margin": worst,
            "at_n": float(worst_at[0]),
            "at_t": worst_at[1],
            "points": float(points),
        },
        grid_note="n in [2, 10], t in {1, 1.25, ..., 10}",
    )


def _claim_c3_approx(config: SuiteConfig) -> ClaimVerdict:
    anchor = "C_3 = 3^(3/2) e Gamma(3/2, 1) / 2 = 3.58258102141221 to 1e-12"
    computed = cly_constant(3) * config.cn_scale
    diff = abs(computed - _C3_REFERENCE)
    return _verdict(
        "C3_APPROX", anchor, diff <= 1e-12,
        {"computed": computed, "reference": _C3_REFERENCE, "abs_diff": diff},
        tolerance=1e-12,
    )


def _claim_c4_exact(config: SuiteConfig) -> ClaimVerdict:
    anchor = "C_4 = 4^2 e Gamma(2, 1) / 2 = 16 exactly, even in floating point"
    computed = cly_constant(4) * config.cn_scale
    return _verdict(
        "C4_EXACT", anchor, computed == 16.0,
        {"computed": computed, "reference": 16.0},
        tolerance=0.0,
    )


def _claim_cn_monotone(config: SuiteConfig) -> ClaimVerdict:
    anchor = "C_(n+1) > C_n for every n >= 2 (checked in log form)"
    prev = cly_constant_log(config.n_min).log_mag
    ok = True
    first_bad = -1.0
    for n in range(config.n_min + 1, config.n_max + 1):
        cur = cly_constant_log(n).log_mag
        if not (cur > prev):
            ok = False
            first_bad = float(n)
            break
        prev = cur
    return _verdict(
        "CN_MONOTONE", anchor, ok,
        {
            "log_c_first": cly_constant_log(config.n_min).log_mag,
            "log_c_last": cly_constant_log(config.n_max).log_mag,
            "first_violation_n": first_bad,
        },
        grid_note=f"n in [{config.n_min}, {config.n_max}]",
    )


def _claim_h_sign_142(config: SuiteConfig) -> ClaimVerdict:
    anchor = "h(a) = 4 + (1 + 2a - 2a^2) e^(2a) is positive at a = 1.42"
    value = solver.h(1.42)
    return _verdict("H_SIGN_142", anchor, value > 0.0, {"h_142": value})


def _claim_h_sign_144(config: SuiteConfig) -> ClaimVerdict:
    anchor = "h(a) = 4 + (1 + 2a - 2a^2) e^(2a) is negative at a = 1.44"
    value = solver.h(1.44)
    return _verdict("H_SIGN_144", anchor, value < 0.0, {"h_144": value})


def _claim_alpha_star_bracket(config: SuiteConfig) -> ClaimVerdict:
    anchor = (
        "the maximiser gamma_n of (a - 1)/B_(n,a) lies strictly between 1 and 1.43"
        " for every n, with defining-equation residual at most 1e-9"
    )
    ns, note = _n_grid(config)
    ok = True
    worst_res = 0.0
    gamma_2 = math.nan
    min_excess = math.inf
    max_excess = -math.inf
    for n in ns:
        r = solver.gamma_n(n, config.tol)
        if n == 2:
            gamma_2 = r.value
        worst_res = max(worst_res, abs(r.residual))
        min_excess = min(min_excess, r.root)
        max_excess = max(max_excess, r.root)
        inside = 0.0 < r.root < 0.43 and r.bracket_lo <= r.root <= r.bracket_hi
        if not inside or abs(r.residual) > 1e-9:
            ok = False
    grid = f"n in [{ns[0]}, {ns[-1]}], ell = 1" if ns else "empty grid"
    return _verdict(
        "ALPHA_STAR_BRACKET", anchor, ok and bool(ns),
        {
            "gamma_2": gamma_2,
            "max_abs_residual": worst_res,
            "min_excess": min_excess,
            "max_excess": max_excess,
        },
        tolerance=1e-9,
        grid_note=grid if note is None else f"{grid}; {note}",
    )


def _claim_ratio_165(config: SuiteConfig) -> ClaimVerdict:
    anchor = (
        "at n = 2, ell = 1 the tuned excess with alpha = 1.43 exceeds the"
        " classical excess by a factor greater than 1.65"
    )
    ratio = math.exp(bounds.log_improvement_vs_cly(2, 1, config.alpha))
    return _verdict(
        "RATIO_165", anchor, ratio > 1.65,
        {"ratio": ratio, "alpha": config.alpha},
    )


def _claim_gamma2_gt_13(config: SuiteConfig) -> ClaimVerdict:
    anchor = "gamma_2 > 1.3"
    r = solver.gamma_n(2, config.tol)
    return _verdict("GAMMA2_GT_13", anchor, r.root > 0.3, {"gamma_2": r.value})


def _claim_gamman_le_13(config: SuiteConfig) -> ClaimVerdict:
    anchor = "gamma_n < 1.3 for every n >= 3"
    ns, note = _n_grid(config)
    ns = [n for n in ns if n >= 3]
    ok = True
    largest = math.nan
    for n in ns:
        r = solver.gamma_n(n, config.tol)
        if math.isnan(largest) or r.root > largest:
            largest = r.root
        if not (r.root < 0.3):
            ok = False
    grid = f"n in [3, {ns[-1]}]" if ns else "vacuous: no n >= 3 in grid"
    return _verdict(
        "GAMMAN_LE_13", anchor, ok,
        {"max_gamma_from_3": 1.0 + largest if ns else largest},
        grid_note=grid + (f"; {note}" if note else ""),
    )


def _claim_tilde_gamma3_lt_11(config: SuiteConfig) -> ClaimVerdict:
    anchor = "the positive root of 3 C_3 x^2 - 3 C_3 x - 1 lies in (1, 1.1)"
    value = solver.aux_root_tilde_gamma3()
    return _verdict(
        "TILDE_GAMMA3_LT_11", anchor, 1.0 < value < 1.1, {"root": value},
    )


def _claim_phi3_gt_2(config: SuiteConfig) -> ClaimVerdict:
    anchor = "phi_3(1.3) = 3 C_3 (1.3)(0.3) - 1 exceeds 2"
    value = solver.phi3_threshold()
    return _verdict("PHI3_GT_2", anchor, value > 2.0, {"phi3_at_1_3": value})


def _claim_psi_decreasing(config: SuiteConfig) -> ClaimVerdict:
    anchor = "(n + 2) e^(-20 n) strictly decreases for n in [4, 200]"
    check = solver.psi_decreasing_check(4, 200)
    return _verdict(
        "PSI_DECREASING", anchor, check.decreasing,
        {
            "log10_at_n4": check.log10_at_start,
            "first_violation_n": float(check.first_violation) if check.first_violation else -1.0,
        },
        grid_note="n in [4, 200]",
    )


def _claim_rhs_gt_20(config: SuiteConfig) -> ClaimVerdict:
    anchor = "4 C_4 (1.3)(0.3) - 1 = 23.96 exceeds 20"
    value = 4.0 * cly_constant(4) * 1.3 * 0.3 - 1.0
    return _verdict("RHS_GT_20", anchor, value > 20.0, {"value": value})


def _claim_leml_gprime_neg(config: SuiteConfig) -> ClaimVerdict:
    anchor = (
        "g(b) = (n + 1 + (1+B) e^B)/(b^2 n C_n e^B - 1) has negative derivative"
        " throughout its domain b^2 n C_n e^B > 1, with B = b n C_n"
    )
    ns, note = _n_grid(config)
    betas = [0.05 * k for k in range(1, 61)]
    ok = True
    in_domain = 0
    bad_beta = math.nan
    bad_n = -1.0
    for n in ns:
        for sample in solver.g_prime_sign_scan(n, betas):
            if not sample.in_domain:
                continue
            in_domain += 1
            if sample.sign != -1:
                ok = False
                bad_beta, bad_n = sample.beta, float(n)
    grid = f"n in [{ns[0]}, {ns[-1]}], beta in {{0.05, ..., 3.0}}" if ns else "empty grid"
    return _verdict(
        "LEML_GPRIME_NEG", anchor, ok and in_domain > 0,
        {
            "in_domain_points": float(in_domain),
            "first_bad_beta": bad_beta,
            "first_bad_n": bad_n,
        },
        grid_note=grid if note is None else f"{grid}; {note}",
    )


def _claim_final_ineq(config: SuiteConfig) -> ClaimVerdict:
    anchor = (
        "alpha n (n + 3) C_n + log(ell) - log(n + ell + 3) stays positive"
        " on the whole parameter grid"
    )
    ns, note = _n_grid(config)
    worst = math.inf
    at = (-1.0, -1.0)
    for n in ns:
        for ell in range(config.ell_min, config.ell_max + 1):
            margin = bounds.final_inequality_log_margin(n, ell, config.alpha)
            if margin < worst:
                worst = margin
                at = (float(n), float(ell))
    grid = _grid_note(config, ns)
    return _verdict(
        "FINAL_INEQ", anchor, worst > 0.0 and bool(ns),
        {"min_log_margin": worst, "at_n": at[0], "at_ell": at[1]},
        grid_note=grid if note is None else f"{grid}; {note}",
    )


def _claim_gap_order_thm1_cly(config: SuiteConfig) -> ClaimVerdict:
    anchor = (
        "the tuned excess exceeds 1.65 times the classical excess at every"
        " grid point (compared in log form; the margin grows with n)"
    )
    ns, note = _n_grid(config)
    floor = math.log(1.65)
    worst = math.inf
    at = (-1.0, -1.0)
    for n in ns:
        for ell in range(config.ell_min, config.ell_max + 1):
            margin = bounds.log_improvement_vs_cly(n, ell, config.alpha) - floor
            if margin < worst:
                worst = margin
                at = (float(n), float(ell))
    grid = _grid_note(config, ns)
    return _verdict(
        "GAP_ORDER_THM1_CLY", anchor, worst > 0.0 and bool(ns),
        {
            "min_log_margin_over_165": worst,
            "at_n": at[0],
            "at_ell": at[1],
            "ratio_at_min": math.exp(worst + floor),
        },
        grid_note=grid if note is None else f"{grid}; {note}",
    )


def _claim_gap_order_thm2_thm1(config: SuiteConfig) -> ClaimVerdict:
    anchor = (
        "case (i) strictly improves on the tuned bound (its correction term is"
        " positive) and case (ii) strictly exceeds twice the tuned excess"
    )
    ns, note = _n_grid(config)
    ok = bool(ns)
    worst_case2 = math.inf
    bad = (-1.0, -1.0)
    for n in ns:
        for ell in range(config.ell_min, config.ell_max + 1):
            params = GapParams(n=n, ell=ell, alpha=config.alpha)
            if bounds.case1_correction_numerator(params).sign != 1:
                ok = False
                bad = (float(n), float(ell))
            margin = bounds.case2_vs_doubled_thm1_log_margin(n, ell, config.alpha)
            worst_case2 = min(worst_case2, margin)
            if not (margin > 0.0):
                ok = False
                bad = (float(n), float(ell))
    grid = _grid_note(config, ns)
    return _verdict(
        "GAP_ORDER_THM2_THM1", anchor, ok,
        {
            "min_case2_log_margin": worst_case2,
            "first_bad_n": bad[0],
            "first_bad_ell": bad[1],
        },
        grid_note=grid if note is None else f"{grid}; {note}",
    )


def _claim_thm6_consistency(config: SuiteConfig) -> ClaimVerdict:
    anchor = (
        "the minimal-volume excess computed from the multiplicity route at"
        " k = n + ell + 1, t = alpha n C_n reproduces the tuned excess"
    )
    ns, note = _n_grid(config)
    ok = bool(ns)
    worst = 0.0
    at = (-1.0, -1.0)
    for n in ns:
        t = config.alpha * nc_product(n)
        for ell in range(config.ell_min, config.ell_max + 1):
            params = GapParams(n=n, ell=ell, alpha=config.alpha)
            direct = bounds.gap_excess(params, GapVariant.THM1).excess
            routed = bounds.min_volume_excess_from_multiplicity(n, n + ell + 1, t)
            if direct.sign != 1 or routed.sign != 1:
                ok = False
                at = (float(n), float(ell))
                continue
            rel = abs(direct.log_mag - routed.log_mag) / max(1.0, abs(direct.log_mag))
            if rel > worst:
                worst = rel
                at = (float(n), float(ell))
    if worst > config.tol:
        ok = False
    grid = _grid_note(config, ns)
    return _verdict(
        "THM6_CONSISTENCY", anchor, ok,
        {"max_rel_log_diff": worst, "at_n": at[0], "at_ell": at[1]},
        tolerance=config.tol,
        grid_note=grid if note is None else f"{grid}; {note}",
    )


def _grid_note(config: SuiteConfig, ns) -> str:
    if not ns:
        return "empty grid"
    return (
        f"n in [{ns[0]}, {ns[-1]}], ell in [{config.ell_min}, {config.ell_max}],"
        f" alpha = {config.alpha:g}"
    )


_CLAIMS = {
    "ALPHA_STAR_BRACKET": _claim_alpha_star_bracket,
    "C3_APPROX": _claim_c3_approx,
    "C4_EXACT": _claim_c4_exact,
    "CN_MONOTONE": _claim_cn_monotone,
    "FINAL_INEQ": _claim_final_ineq,
    "GAMMA2_GT_13": _claim_gamma2_gt_13,
    "GAMMAN_LE_13": _claim_gamman_le_13,
    "GAP_ORDER_THM1_CLY": _claim_gap_order_thm1_cly,
    "GAP_ORDER_THM2_THM1": _claim_gap_order_thm2_thm1,
    "H_SIGN_142": _claim_h_sign_142,
    "H_SIGN_144": _claim_h_sign_144,
    "LEM3_TRACE_BOUND": _claim_lem3_trace_bound,
    "LEML_GPRIME_NEG": _claim_leml_gprime_neg,
    "PHI3_GT_2": _claim_phi3_gt_2,
    "PSI_DECREASING": _claim_psi_decreasing,
    "RATIO_165": _claim_ratio_165,
    "RHS_GT_20": _claim_rhs_gt_20,
    "THM6_CONSISTENCY": _claim_thm6_consistency,
    "TILDE_GAMMA3_LT_11": _claim_tilde_gamma3_lt_11,
}


def claim_ids() -> list[str]:
    return sorted(_CLAIMS)


def run_claim(claim_id: str, config: SuiteConfig | None = None) -> ClaimVerdict:
    if claim_id not in _CLAIMS:
        raise KeyError(f"unknown claim id {claim_id!r}; known: {', '.join(claim_ids())}")
    config = config or SuiteConfig()
    fn = _CLAIMS[claim_id]
    try:
        return fn(config)
    except Exception as exc:  # verdicts must outlive any single failure
        return ClaimVerdict(
            claim_id=claim_id,
            anchor="evaluation failed before the statement could be checked",
            status="ERROR",
            witnesses={},
            grid_note=f"{type(exc).__name__}: {exc}",
        )


def run_claim_suite(config: SuiteConfig | None = None) -> list[ClaimVerdict]:
    config = config or SuiteConfig()
    return [run_claim(claim_id, config) for claim_id in claim_ids()]


def suite_passed(verdicts) -> bool:
    return all(v.status == "PASS" for v in verdicts)
