"""Trianalyticity verdicts for single cycles and the non-generic set of a suite.

A cycle that is complex for some induced structure is trianalytic exactly
when its area polynomial is constant on the sphere; otherwise it is complex
only at global maxima of that polynomial, where the Wirtinger inequality
becomes an equality. Collecting those maxima over a suite of cycles gives the
(suite-relative) set of non-generic complex structures.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cycle_geom import is_complex_analytic, riemannian_area, wirtinger_gap
from .errors import InconsistencyError, InvalidArgumentError
from .hk_core import QuaternionicFrame
from .sphere_grid import angular_distance
from .sphere_opt import MaximaSet, global_maxima
from .trisym_poly import TrisymPolynomial, compute_polynomial, is_constant, sphere_stats

__all__ = [
    "TRIANALYTIC",
    "COMPLEX_ONLY_AT",
    "NOT_COMPLEX_ANYWHERE",
    "Tolerances",
    "Verdict",
    "NongenericPoint",
    "GenericityReport",
    "StructureClass",
    "trianalyticity_verdict",
    "nongeneric_set",
    "classify_structure",
]

TRIANALYTIC = "Trianalytic"
COMPLEX_ONLY_AT = "ComplexOnlyAt"
NOT_COMPLEX_ANYWHERE = "NotComplexAnywhere"

AXES = {"I": (1.0, 0.0, 0.0), "J": (0.0, 1.0, 0.0), "K": (0.0, 0.0, 1.0)}


@dataclass(frozen=True)
class Tolerances:
    constancy: float = 1e-8
    tangent: float = 1e-8
    # Wirtinger equality, relative to the Riemannian area
    gap: float = 1e-9
    value: float = 1e-9
    angular: float = 1e-6
    # tangent residual that no Wirtinger equality can coexist with
    contradiction: float = 1e-3

    @classmethod
    def from_mapping(cls, data) -> "Tolerances":
        data = dict(data or {})
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise InvalidArgumentError(f"unknown tolerance keys: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in data.items()})


@dataclass
class Verdict:
    cycle_id: str
    classification: str
    directions: list
    polynomial: TrisymPolynomial
    area: float
    constant: bool
    maxima: MaximaSet
    gaps: list = field(default_factory=list)
    maxima_residuals: list = field(default_factory=list)
    axis_residuals: dict = field(default_factory=dict)

    @property
    def is_trianalytic(self) -> bool:
        return self.classification == TRIANALYTIC


@dataclass(frozen=True)
class NongenericPoint:
    direction: np.ndarray
    witness: str
    value: float
    degenerate: bool = False


@dataclass
class GenericityReport:
    nongeneric_points: list
    suite: list
    tolerances: Tolerances
    verdicts: dict = field(default_factory=dict)


@dataclass(frozen=True)
class StructureClass:
    generic: bool
    witness: str | None = None
    distance: float = float("inf")
    suite_relative: bool = True


def trianalyticity_verdict(cycle, frame: QuaternionicFrame, tols: Tolerances | None = None, cycle_id=None) -> Verdict:
    tols = tols or Tolerances()
    cid = cycle_id if cycle_id is not None else getattr(cycle, "name", "")
    poly = compute_polynomial(cycle, frame, cid)
    area = riemannian_area(cycle, frame)
    constant = is_constant(poly, tols.constancy)
    axis = {k: is_complex_analytic(cycle, frame, d, tols.tangent) for k, d in AXES.items()}
    axis_residuals = {k: t.residual for k, t in axis.items()}

    if constant:
        maxima = MaximaSet(points=[], max_value=sphere_stats(poly).mean, constant=True)
        passing = [k for k, t in axis.items() if t.is_complex]
        if axis["I"].is_complex:
            if not (axis["J"].is_complex and axis["K"].is_complex):
                raise InconsistencyError(f"{cid}: constant polynomial and I-complex but not trianalytic")
            return Verdict(cid, TRIANALYTIC, [], poly, area, True, maxima, axis_residuals=axis_residuals)
        if passing:
            raise InconsistencyError(f"{cid}: constant polynomial, complex for {passing} but not for I")
        return Verdict(cid, NOT_COMPLEX_ANYWHERE, [], poly, area, True, maxima, axis_residuals=axis_residuals)

    maxima = global_maxima(poly, tols.value)
    gaps, residuals, complex_dirs = [], [], []
    for pt in maxima.points:
        gap = wirtinger_gap(cycle, frame, pt.direction)
        tangent = is_complex_analytic(cycle, frame, pt.direction, tols.tangent)
        equality = gap < tols.gap * area
        if tangent.is_complex and not equality:
            raise InconsistencyError(f"{cid}: complex at {pt.direction} but Wirtinger gap is {gap:.3e}")
        if equality and tangent.residual > tols.contradiction:
            raise InconsistencyError(
                f"{cid}: Wirtinger equality at {pt.direction} with tangent residual {tangent.residual:.3e}"
            )
        gaps.append(gap)
        residuals.append(tangent.residual)
        if tangent.is_complex:
            complex_dirs.append(pt.direction)

    label = COMPLEX_ONLY_AT if complex_dirs else NOT_COMPLEX_ANYWHERE
    return Verdict(cid, label, complex_dirs, poly, area, False, maxima, gaps, residuals, axis_residuals)


def nongeneric_set(cycles, frame: QuaternionicFrame, tols: Tolerances | None = None) -> GenericityReport:
    """Global maxima of every non-constant polynomial in the suite.

    ``cycles`` maps cycle id to cycle. Cycles are processed in sorted id
    order; a direction shared by several cycles is listed once, with the
    first witness.
    """
    tols = tols or Tolerances()
    cycles = dict(cycles)
    if not cycles:
        raise InvalidArgumentError("the cycle suite is empty")
    ids = sorted(cycles)
    verdicts = {cid: trianalyticity_verdict(cycles[cid], frame, tols, cid) for cid in ids}
    points = []
    for cid in ids:
        v = verdicts[cid]
        if v.constant:
            continue
        for pt in v.maxima.points:
            if any(angular_distance(pt.direction, q.direction) <= tols.angular for q in points):
                continue
            points.append(NongenericPoint(pt.direction, cid, pt.value, v.maxima.degenerate_locus_flag))
    return GenericityReport(nongeneric_points=points, suite=ids, tolerances=tols, verdicts=verdicts)


def classify_structure(direction, report: GenericityReport, angular_tol: float | None = None) -> StructureClass:
    tol = report.tolerances.angular if angular_tol is None else angular_tol
    best, witness = float("inf"), None
    for pt in report.nongeneric_points:
        d = angular_distance(direction, pt.direction)
        if d < best:
            best, witness = d, pt.witness
    if best <= tol:
        return StructureClass(False, witness, best)
    return StructureClass(True, None, best)
