"""Tabulation of the gap bounds over parameter grids.

Output is deterministic byte for byte: no timestamps, no environment
leakage, fixed column order, fixed float formatting (12 significant
digits).  Ratios between bounds routinely exceed float range, so they
are carried as LogScalar and rendered as mantissa/exponent literals
(still valid JSON numbers) rather than passed through float().
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .bounds import DEFAULT_ALPHA, GapParams, GapVariant, gap_excess
from .logdomain import LogScalar
from .solver import optimal_alpha

CSV_HEADER = "n,ell,alpha,variant,log10_B,log10_excess,ratio_vs_cly"

_VARIANT_ORDER = (
    GapVariant.CLY,
    GapVariant.THM1,
    GapVariant.THM2_CASE1,
    GapVariant.THM2_CASE2,
)


@dataclass(frozen=True)
class GapTableRow:
    n: int
    ell: int
    alpha: float  # 2 on classical rows, the tuning actually used otherwise
    variant: str
    log10_denominator: float
    log10_excess: float
    ratio_vs_cly: LogScalar


def _sig(x: float) -> str:
    return f"{x:.12g}"


def format_from_log10(log10_value: float, sign: int = 1) -> str:
    """Render a positive quantity given as log10 to 12 significant digits.

    Values inside comfortable float range go through float formatting;
    anything larger becomes an explicit mantissa/exponent literal, so
    1e400-scale ratios survive serialisation.
    """
    if sign == 0:
        return "0"
    prefix = "-" if sign < 0 else ""
    if math.isinf(log10_value):
        raise ValueError("cannot format an infinite magnitude")
    if abs(log10_value) < 300.0:
        return prefix + _sig(10.0 ** log10_value)
    exponent = math.floor(log10_value)
    mantissa = 10.0 ** (log10_value - exponent)
    if mantissa >= 10.0:  # rounding spilled over a decade
        mantissa /= 10.0
        exponent += 1
    return f"{prefix}{mantissa:.11f}e+{exponent}" if exponent >= 0 else f"{prefix}{mantissa:.11f}e{exponent}"


def format_ratio(ratio: LogScalar) -> str:
    if ratio.is_zero:
        return "0"
    return format_from_log10(ratio.log10_mag, ratio.sign)


def _resolve_alpha(n: int, ell: int, alpha) -> float:
    if alpha == "auto":
        return optimal_alpha(n, ell).value
    return float(alpha)


def build_gap_table(n_values, ell_values, alpha=DEFAULT_ALPHA, variants=None) -> list[GapTableRow]:
    """Rows for every (n, ell, variant) combination, in grid order.

    alpha may be a positive float applied everywhere or the string
    "auto", which tunes alpha per (n, ell) by maximising the excess.
    Classical rows always use the fixed tuning 2 and report it.
    """
    ns = [int(n) for n in n_values]
    ells = [int(ell) for ell in ell_values]
    if not ns or not ells:
        raise ValueError("need at least one n and one ell")
    chosen = tuple(variants) if variants else _VARIANT_ORDER
    rows = []
    for n in ns:
        for ell in ells:
            alpha_used = _resolve_alpha(n, ell, alpha)
            for variant in chosen:
                variant = GapVariant(variant)
                if variant is GapVariant.CLY:
                    params = GapParams(n=n, ell=ell, alpha=2.0)
                else:
                    params = GapParams(n=n, ell=ell, alpha=alpha_used)
                bound = gap_excess(params, variant)
                rows.append(GapTableRow(
                    n=n,
                    ell=ell,
                    alpha=params.alpha,
                    variant=variant.value,
                    log10_denominator=bound.denominator.log10_mag,
                    log10_excess=bound.excess.log10_mag,
                    ratio_vs_cly=bound.ratio_vs_cly,
                ))
    return rows


def render_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for row in rows:
        writer.writerow([
            row.n,
            row.ell,
            _sig(row.alpha),
            row.variant,
            _sig(row.log10_denominator),
            _sig(row.log10_excess),
            format_ratio(row.ratio_vs_cly),
        ])
    return buf.getvalue()


def render_json(rows, meta: dict | None = None) -> str:
    # emitted by hand: ratio literals like 1.23456789012e+4000 must land
    # in the stream as bare numbers, which json.dumps cannot produce
    out = []
    for row in rows:
        out.append(
            "{"
            f'"n": {row.n}, "ell": {row.ell}, "alpha": {_sig(row.alpha)}, '
            f'"variant": "{row.variant}", '
            f'"log10_B": {_sig(row.log10_denominator)}, '
            f'"log10_excess": {_sig(row.log10_excess)}, '
            f'"ratio_vs_cly": {format_ratio(row.ratio_vs_cly)}'
            "}"
        )
    body = ",\n    ".join(out)
    meta_part = ""
    if meta:
        pairs = ", ".join(f'"{k}": "{meta[k]}"' for k in sorted(meta))
        meta_part = f',\n  "meta": {{{pairs}}}'
    return f'{{\n  "rows": [\n    {body}\n  ]{meta_part}\n}}\n'


def render_pretty(rows) -> str:
    """Aligned text table; the excess column doubles as a lower bound

      volume ratio >= 1 + 10^(log10_excess)

    which is the readable form once the excess drops below float eps.
    """
    header = ["n", "ell", "alpha", "variant", "log10_B", "log10_excess", "ratio_vs_cly"]
    cells = [header]
    for row in rows:
        cells.append([
            str(row.n),
            str(row.ell),
            _sig(row.alpha),
            row.variant,
            _sig(row.log10_denominator),
            _sig(row.log10_excess),
            format_ratio(row.ratio_vs_cly),
        ])
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    lines.append("")
    lines.append("volume ratio >= 1 + 10^(log10_excess) for each row")
    return "\n".join(lines) + "\n"
