"""Volume-gap lower bounds for closed minimal submanifolds of S^(n+p).

Each bound says vol(M) >= (1 + excess) vol(S^n) for an n-dimensional
closed minimal submanifold that is not totally geodesic, where the
excess depends on the dimension n, an integer level ell >= 1, and a
tuning parameter alpha.  Four variants are computed:

  CLY         excess (2 ell - 1) / B_n,
              B_n = 2n + 3 + 2 e^(2 n C_n)  (the classical estimate)
  THM1        excess (alpha ell - 1) / B_(n,alpha),
              B_(n,alpha) = alpha n + alpha + 1 + alpha e^(alpha n C_n)
  THM2_CASE1  excess (alpha ell - 1 + alpha (n+ell+2) e^E) / B_(n,alpha)
  THM2_CASE2  excess (2 alpha ell - 1) / B_(n,alpha)

with the eigenvalue correction exponent

  E = alpha n C_n (1 - (n+4) (n+2 ell)^(2/n) 4^(1/n)).

The denominators contain e^(alpha n C_n) and are therefore LogScalars
throughout; so are excesses and ratios between variants, since the
improvement factor over CLY grows like e^(0.57 n C_n) and leaves the
double range already at n = 6.

A caution on orderings: the CASE1 excess exceeds the THM1 excess by
alpha (n+ell+2) e^E / B, a quantity around e^-137 at n = 2 and far
smaller beyond.  At double precision the two excesses are equal, so
the strict ordering must be checked on the closed-form difference,
which case1_correction_term provides exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .logdomain import LogScalar, log_add, log_div, log_exp
from .specials import nc_product

DEFAULT_ALPHA = 1.43


class GapVariant(str, Enum):
    CLY = "CLY"
    THM1 = "THM1"
    THM2_CASE1 = "THM2_CASE1"
    THM2_CASE2 = "THM2_CASE2"


@dataclass(frozen=True)
class GapParams:
    n: int
    ell: int
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise TypeError("n must be an int")
        if not isinstance(self.ell, int) or isinstance(self.ell, bool):
            raise TypeError("ell must be an int")
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if self.ell < 1:
            raise ValueError(f"ell must be at least 1, got {self.ell}")
        if not (self.alpha > 0.0) or math.isinf(self.alpha) or math.isnan(self.alpha):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha!r}")
        # every tuned variant needs a positive numerator
        if self.alpha * self.ell <= 1.0:
            raise ValueError(
                f"alpha*ell must exceed 1 for a positive gap, got {self.alpha}*{self.ell}"
            )


@dataclass(frozen=True)
class GapBound:
    params: GapParams
    variant: GapVariant
    denominator: LogScalar
    excess: LogScalar
    ratio_vs_cly: LogScalar


def b_alpha(n: int, alpha: float) -> LogScalar:
    """B_(n,alpha) = alpha n + alpha + 1 + alpha e^(alpha n C_n)."""
    if not (alpha > 0.0) or math.isinf(alpha) or math.isnan(alpha):
        raise ValueError(f"alpha must be positive and finite, got {alpha!r}")
    affine = LogScalar.from_float(alpha * n + alpha + 1.0)
    spike = LogScalar(1, math.log(alpha) + alpha * nc_product(n))
    return log_add(affine, spike)


def b_cly(n: int) -> LogScalar:
    """B_n = 2n + 3 + 2 e^(2 n C_n); literally b_alpha at alpha = 2."""
    return b_alpha(n, 2.0)


def correction_exponent(n: int, ell: int, alpha: float = DEFAULT_ALPHA) -> float:
    """E = alpha n C_n (1 - (n+4) (n+2 ell)^(2/n) 4^(1/n)).

    Always hugely negative on admissible inputs: the growth factor in
    the parenthesis exceeds 1 by a wide margin, so e^E decays much
    faster than any other quantity in the bounds.
    """
    if ell < 1:
        raise ValueError(f"ell must be at least 1, got {ell}")
    anc = alpha * nc_product(n)
    growth = (n + 4) * math.pow(n + 2 * ell, 2.0 / n) * math.pow(4.0, 1.0 / n)
    return anc * (1.0 - growth)


def _numerator(params: GapParams, variant: GapVariant) -> LogScalar:
    n, ell, alpha = params.n, params.ell, params.alpha
    if variant is GapVariant.CLY:
        return LogScalar.from_float(2.0 * ell - 1.0)
    if variant is GapVariant.THM1:
        return LogScalar.from_float(alpha * ell - 1.0)
    if variant is GapVariant.THM2_CASE1:
        base = LogScalar.from_float(alpha * ell - 1.0)
        return log_add(base, case1_correction_numerator(params))
    if variant is GapVariant.THM2_CASE2:
        return LogScalar.from_float(2.0 * alpha * ell - 1.0)
    raise ValueError(f"unknown variant {variant!r}")


def case1_correction_numerator(params: GapParams) -> LogScalar:
    """alpha (n+ell+2) e^E, the exact numerator bump of THM2_CASE1."""
    n, ell, alpha = params.n, params.ell, params.alpha
    e_corr = correction_exponent(n, ell, alpha)
    return LogScalar(1, math.log(alpha * (n + ell + 2)) + e_corr)


def gap_excess(params: GapParams, variant: GapVariant) -> GapBound:
    """Excess of the requested variant, plus its ratio to the CLY excess.

    The CLY variant ignores params.alpha and uses alpha = 2, which is
    the classical tuning; its ratio_vs_cly is exactly one.
    """
    variant = GapVariant(variant)
    denominator = b_cly(params.n) if variant is GapVariant.CLY else b_alpha(params.n, params.alpha)
    excess = log_div(_numerator(params, variant), denominator)
    cly_excess = log_div(
        LogScalar.from_float(2.0 * params.ell - 1.0), b_cly(params.n)
    )
    return GapBound(
        params=params,
        variant=variant,
        denominator=denominator,
        excess=excess,
        ratio_vs_cly=log_div(excess, cly_excess),
    )


def case1_correction_term(params: GapParams) -> LogScalar:
    """Exact positive difference excess(THM2_CASE1) - excess(THM1).

    The difference is alpha (n+ell+2) e^E / B_(n,alpha).  It is far
    below the resolution of the excess values themselves, so strict
    dominance of CASE1 over THM1 is only visible through this closed
    form, never through subtracting the two excesses.
    """
    return log_div(case1_correction_numerator(params), b_alpha(params.n, params.alpha))


def log_improvement_vs_cly(n: int, ell: int, alpha: float = DEFAULT_ALPHA) -> float:
    """log of excess(THM1)/excess(CLY); positive means improvement."""
    params = GapParams(n=n, ell=ell, alpha=alpha)
    return gap_excess(params, GapVariant.THM1).ratio_vs_cly.log_mag


def case2_vs_doubled_thm1_log_margin(n: int, ell: int, alpha: float = DEFAULT_ALPHA) -> float:
    """log[(2 alpha ell - 1) / (2 (alpha ell - 1))], sharing one denominator.

    Positive iff excess(THM2_CASE2) > 2 excess(THM1).
    """
    if alpha * ell <= 1.0:
        raise ValueError("alpha*ell must exceed 1")
    return math.log(2.0 * alpha * ell - 1.0) - math.log(2.0 * (alpha * ell - 1.0))


def final_inequality_log_margin(n: int, ell: int, alpha: float = DEFAULT_ALPHA) -> float:
    """Margin of e^(-alpha n (n+3) C_n) < ell / (n+ell+3), in log form.

    Returns log(rhs) - log(lhs) = alpha n (n+3) C_n + log ell - log(n+ell+3);
    the inequality holds iff this is positive.
    """
    anc = alpha * nc_product(n)
    return anc * (n + 3) + math.log(ell) - math.log(n + ell + 3.0)


def correction_below_ell_log_margin(n: int, ell: int, alpha: float = DEFAULT_ALPHA) -> float:
    """Margin of (n+ell+2) e^E < ell in log form; positive iff it holds.

    This is the consequence that makes the CASE1 excess at most the
    CASE2 excess.
    """
    e_corr = correction_exponent(n, ell, alpha)
    return math.log(ell) - math.log(n + ell + 2.0) - e_corr


def min_volume_ratio_from_multiplicity(n: int, k: int, t: float) -> LogScalar:
    """(k + e^t) / (e^t + n + 1 + n C_n / t).

    Lower bound for vol(M)/vol(S^n) when the first k Laplace
    eigenvalues of M do not exceed n.  k = 0 is allowed as a degenerate
    sanity case and gives a value below one.
    """
    excess = min_volume_excess_from_multiplicity(n, k, t)
    return log_add(LogScalar.from_float(1.0), excess)


def min_volume_excess_from_multiplicity(n: int, k: int, t: float) -> LogScalar:
    """The same ratio minus one, kept exact in log form.

    Algebraically (k - n - 1 - n C_n / t) / (e^t + n + 1 + n C_n / t);
    at t = alpha n C_n and k = n + ell + 1 this collapses to the THM1
    excess (alpha ell - 1) / B_(n,alpha).  Returning the excess rather
    than the ratio keeps that identity checkable at dimensions where
    1 + excess rounds to 1.
    """
    if not isinstance(k, int) or isinstance(k, bool):
        raise TypeError("k must be an int")
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if not (t > 0.0) or math.isinf(t) or math.isnan(t):
        raise ValueError(f"t must be positive and finite, got {t!r}")
    shift = n + 1.0 + nc_product(n) / t
    numerator = LogScalar.from_float(k - shift)
    denominator = log_add(log_exp(t), LogScalar.from_float(shift))
    return log_div(numerator, denominator)


def cheng_yang_bound(n: int, k: int, lambda1: float | None = None) -> float:
    """Upper bound (n+4) k^(2/n) lambda_1 for the k-th Laplace eigenvalue.

    The simple polynomial form of the eigenvalue growth estimate, with
    the dimension factor fixed at n + 4.  lambda1 defaults to n, the
    largest value admissible here, giving the worst-case bound.
    """
    if not isinstance(k, int) or isinstance(k, bool):
        raise TypeError("k must be an int")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if lambda1 is None:
        lambda1 = float(n)
    if not (0.0 < lambda1 <= n):
        raise ValueError(f"lambda1 must lie in (0, n], got {lambda1!r}")
    return (n + 4) * math.pow(k, 2.0 / n) * lambda1


@dataclass(frozen=True)
class Thm2Improvement:
    """Ratios of the two eigenvalue-corrected excesses to the THM1 excess.

    The CASE1 ratio is 1 + alpha (n+ell+2) e^E / (alpha ell - 1); the
    tiny part is stored on its own because adding it to one is a no-op
    at double precision.
    """

    case1_excess_over_one: LogScalar
    case2_ratio: float

    @property
    def case1_ratio(self) -> float:
        return 1.0 + self.case1_excess_over_one.to_float()


def improvement_ratio_thm2(n: int, ell: int, alpha: float = DEFAULT_ALPHA) -> Thm2Improvement:
    params = GapParams(n=n, ell=ell, alpha=alpha)
    bump = log_div(
        case1_correction_numerator(params),
        LogScalar.from_float(alpha * ell - 1.0),
    )
    case2 = (2.0 * alpha * ell - 1.0) / (alpha * ell - 1.0)
    return Thm2Improvement(case1_excess_over_one=bump, case2_ratio=case2)
