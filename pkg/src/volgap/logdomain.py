"""Signed arithmetic on numbers stored as natural-log magnitudes.

The bound denominators handled by this package contain factors like
e^(2 n C_n), which is about e^128 already at n = 4 and far beyond any
IEEE double soon after.  Every quantity that can blow up is therefore
carried as a LogScalar: a sign in {-1, 0, +1} together with log|x|.
Comparisons and sums are done on the log magnitudes directly, so no
intermediate ever leaves the representable range as long as log|x|
itself fits in a double.

Base-10 logs appear only when results are rendered for people; all
internal arithmetic is natural-log.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_LN10 = math.log(10.0)
_LN_HALF = math.log(0.5)


@dataclass(frozen=True)
class LogScalar:
    """A real number x represented as (sign, log|x|).

    sign is -1, 0 or +1.  For sign 0 the magnitude slot is fixed at
    -inf so that zero has a single representation.  log_mag may be any
    finite float otherwise; +inf and NaN are rejected.
    """

    sign: int
    log_mag: float

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if math.isnan(self.log_mag) or self.log_mag == math.inf:
            raise ValueError(f"log magnitude must be finite or -inf, got {self.log_mag!r}")
        if self.log_mag == -math.inf and self.sign != 0:
            object.__setattr__(self, "sign", 0)
        if self.sign == 0:
            object.__setattr__(self, "log_mag", -math.inf)

    @classmethod
    def from_float(cls, x: float) -> "LogScalar":
        if math.isnan(x) or math.isinf(x):
            raise ValueError(f"cannot represent {x!r} as a LogScalar")
        if x == 0.0:
            return ZERO
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_log(cls, log_mag: float, sign: int = 1) -> "LogScalar":
        return cls(sign, log_mag)

    def to_float(self) -> float:
        """Collapse back to a double.

        Saturates to +-inf above the float range and flushes to 0.0
        underneath it; information loss at the ends is inherent.
        """
        if self.sign == 0:
            return 0.0
        try:
            mag = math.exp(self.log_mag)
        except OverflowError:
            mag = math.inf
        return mag if self.sign > 0 else -mag

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    @property
    def log10_mag(self) -> float:
        return self.log_mag / _LN10

    def signed_log10(self) -> float:
        """sign * log10|x|, the form used when witnesses are reported."""
        if self.sign == 0:
            return 0.0
        return self.sign * self.log10_mag

    # ordinary total order on the represented reals
    def _cmp(self, other: "LogScalar") -> int:
        if self.sign != other.sign:
            return -1 if self.sign < other.sign else 1
        if self.sign == 0:
            return 0
        if self.log_mag == other.log_mag:
            return 0
        bigger_mag = self.log_mag > other.log_mag
        if self.sign > 0:
            return 1 if bigger_mag else -1
        return -1 if bigger_mag else 1

    def __lt__(self, other: "LogScalar") -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: "LogScalar") -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: "LogScalar") -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: "LogScalar") -> bool:
        return self._cmp(other) >= 0

    def __neg__(self) -> "LogScalar":
        return LogScalar(-self.sign, self.log_mag)

    def __abs__(self) -> "LogScalar":
        return LogScalar(abs(self.sign), self.log_mag)

    def __add__(self, other: "LogScalar") -> "LogScalar":
        return log_add(self, other)

    def __sub__(self, other: "LogScalar") -> "LogScalar":
        return log_add(self, -other)

    def __mul__(self, other: "LogScalar") -> "LogScalar":
        return log_mul(self, other)

    def __truediv__(self, other: "LogScalar") -> "LogScalar":
        return log_div(self, other)


ZERO = LogScalar(0, -math.inf)
ONE = LogScalar(1, 0.0)


def _sum_mags(big: float, small: float) -> float:
    # log(e^big + e^small) with big >= small
    d = small - big
    if d < -745.0:  # e^d underflows; the small term is invisible
        return big
    return big + math.log1p(math.exp(d))


def _diff_mags(big: float, small: float) -> float:
    # log(e^big - e^small) with big > small; returns -inf on total
    # cancellation at the float level
    d = small - big
    if d < -745.0:
        return big
    if d > _LN_HALF:
        # e^d close to 1: log(-expm1(d)) keeps the cancellation sharp
        return big + math.log(-math.expm1(d))
    return big + math.log1p(-math.exp(d))


def log_add(a: LogScalar, b: LogScalar) -> LogScalar:
    """a + b."""
    if a.sign == 0:
        return b
    if b.sign == 0:
        return a
    if a.sign == b.sign:
        big, small = (a.log_mag, b.log_mag) if a.log_mag >= b.log_mag else (b.log_mag, a.log_mag)
        return LogScalar(a.sign, _sum_mags(big, small))
    if a.log_mag == b.log_mag:
        return ZERO
    if a.log_mag > b.log_mag:
        return LogScalar(a.sign, _diff_mags(a.log_mag, b.log_mag))
    return LogScalar(b.sign, _diff_mags(b.log_mag, a.log_mag))


def log_mul(a: LogScalar, b: LogScalar) -> LogScalar:
    """a * b."""
    sign = a.sign * b.sign
    if sign == 0:
        return ZERO
    return LogScalar(sign, a.log_mag + b.log_mag)


def log_div(a: LogScalar, b: LogScalar) -> LogScalar:
    """a / b.  Division by zero raises ZeroDivisionError."""
    if b.sign == 0:
        raise ZeroDivisionError("LogScalar division by zero")
    if a.sign == 0:
        return ZERO
    return LogScalar(a.sign * b.sign, a.log_mag - b.log_mag)


def log_exp(x: float) -> LogScalar:
    """e^x as a LogScalar, valid for any finite x however large."""
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"exponent must be finite, got {x!r}")
    return LogScalar(1, x)


def log_sum(terms) -> LogScalar:
    """Fold log_add over an iterable of LogScalars."""
    acc = ZERO
    for t in terms:
        acc = log_add(acc, t)
    return acc
