"""Text renderings of polynomials, verdicts and genericity reports."""

from __future__ import annotations

import csv
import io

import numpy as np

from .cycle_geom import monomials
from .genericity import COMPLEX_ONLY_AT, GenericityReport, Verdict


def fmt_real(x: float) -> str:
    """17 significant digits with a bare exponent: ``1.0000000000000000e0``."""
    mantissa, exp = f"{float(x) + 0.0:.16e}".split("e")
    return f"{mantissa}e{int(exp)}"


def fmt_direction(x, digits: int = 12) -> str:
    parts = []
    for v in np.asarray(x, dtype=float):
        v = 0.0 if abs(v) < 10.0 ** -digits else float(v)
        parts.append(f"{v + 0.0:.{digits}g}")
    return "(" + ",".join(parts) + ")"


def monomial_name(pqr) -> str:
    factors = []
    for var, e in zip("abc", pqr):
        if e == 1:
            factors.append(var)
        elif e > 1:
            factors.append(f"{var}^{e}")
    return "*".join(factors) or "1"


def polynomial_lines(poly, indent: str = "  ") -> list:
    return [f"{indent}{monomial_name(e)}: {fmt_real(poly.coeffs[e])}" for e in monomials(poly.n)]


def verdict_label(v: Verdict) -> str:
    if v.classification == COMPLEX_ONLY_AT:
        return f"{COMPLEX_ONLY_AT} [" + ", ".join(fmt_direction(d) for d in v.directions) + "]"
    return v.classification


def analyze_report(v: Verdict, kind: str = "") -> str:
    lines = [
        f"cycle: {v.cycle_id}",
        f"kind: {kind}",
        f"complex_dimension: {v.polynomial.n}",
        f"riemannian_area: {fmt_real(v.area)}",
        "polynomial:",
        *polynomial_lines(v.polynomial),
        f"constant: {str(v.constant).lower()}",
    ]
    if v.constant:
        lines.append(f"constant_value: {fmt_real(v.maxima.max_value)}")
        lines.append("maxima: none (constant on the sphere)")
    else:
        lines.append(f"max_value: {fmt_real(v.maxima.max_value)}")
        lines.append(f"degenerate_locus: {str(v.maxima.degenerate_locus_flag).lower()}")
        lines.append(f"maxima: {len(v.maxima.points)}")
        for pt, gap, res in zip(v.maxima.points, v.gaps, v.maxima_residuals):
            lines.append(
                f"  {fmt_direction(pt.direction)} value={fmt_real(pt.value)} kind={pt.kind}"
                f" wirtinger_gap={fmt_real(gap)} tangent_residual={fmt_real(res)}"
            )
    lines.append(
        "tangent_residuals: "
        + " ".join(f"{k}={fmt_real(r)}" for k, r in sorted(v.axis_residuals.items()))
    )
    lines.append(f"verdict: {verdict_label(v)}")
    return "\n".join(lines) + "\n"


def genericity_report(rep: GenericityReport) -> str:
    lines = [f"suite: {', '.join(rep.suite)}"]
    for cid in rep.suite:
        lines.append(f"verdict {cid}: {verdict_label(rep.verdicts[cid])}")
    if rep.nongeneric_points:
        lines.append(f"non-generic set ({len(rep.nongeneric_points)} directions, suite-relative):")
        for pt in rep.nongeneric_points:
            flag = " degenerate-locus" if pt.degenerate else ""
            lines.append(f"  {fmt_direction(pt.direction)} witness={pt.witness} value={fmt_real(pt.value)}{flag}")
    else:
        lines.append("non-generic set: empty (suite-relative)")
    lines.append("note: genericity is decided only against the cycles listed in this suite")
    return "\n".join(lines) + "\n"


def scan_csv(points, values) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "a", "b", "c", "V"])
    for i, (x, v) in enumerate(zip(points, values)):
        writer.writerow([i, *(fmt_real(c) for c in x), fmt_real(v)])
    return buf.getvalue()
