"""Invariant suite run by ``trisym verify``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cycle_geom import (
    LinearCycle,
    is_complex_analytic,
    pfaffian,
    riemannian_area,
    symplectic_area,
)
from .hk_core import induced_structure, kahler_form_direction, verify_frame
from .sphere_grid import fibonacci_sphere
from .trisym_poly import compute_polynomial, evaluate

FRAME_TOL = 1e-10
PFAFFIAN_REL = 1e-9
WIRTINGER_SLACK = 1e-9
RECONSTRUCTION_TOL = 1e-9
SEED = 20240607


@dataclass
class InvariantResult:
    name: str
    passed: bool
    worst: float
    tol: float


def _frame_checks(frame):
    rep = verify_frame(frame, FRAME_TOL)
    yield InvariantResult("frame relations", rep.passed, rep.worst, FRAME_TOL)

    rng = np.random.default_rng(SEED)
    eye = np.eye(frame.dim)
    worst = 0.0
    for _ in range(100):
        x = rng.standard_normal(3)
        L = induced_structure(frame, x / np.linalg.norm(x)).matrix
        worst = max(worst, float(np.max(np.abs(L @ L + eye))))
    yield InvariantResult("induced structures square to -1", worst < FRAME_TOL, worst, FRAME_TOL)


def _pfaffian_checks(scenario):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    mats = []
    for size in range(2, 11, 2):
        for _ in range(10):
            a = rng.standard_normal((size, size))
            mats.append(a - a.T)
    W = kahler_form_direction(scenario.frame, (1.0, 0.0, 0.0))
    for cyc in scenario.cycles.values():
        if isinstance(cyc, LinearCycle):
            mats.append(cyc.vectors @ W @ cyc.vectors.T)
    for a in mats:
        pf, det = pfaffian(a), np.linalg.det(a)
        worst = max(worst, abs(pf * pf - det) / max(abs(det), 1e-300) if det != 0 else abs(pf))
    yield InvariantResult("pfaffian squared equals determinant", worst < PFAFFIAN_REL, worst, PFAFFIAN_REL)

    worst = 0.0
    for cyc in scenario.cycles.values():
        if isinstance(cyc, LinearCycle):
            s = symplectic_area(cyc, scenario.frame, (1.0, 0.0, 0.0))
            t = symplectic_area(cyc.swapped(), scenario.frame, (1.0, 0.0, 0.0))
            worst = max(worst, abs(s + t))
    yield InvariantResult("generator swap negates symplectic area", worst == 0.0, worst, 0.0)


def _cycle_checks(scenario, tols):
    frame = scenario.frame
    dirs = fibonacci_sphere(256)
    w_worst = r_worst = x_worst = 0.0
    w_ok = r_ok = x_ok = True
    for cyc in scenario.cycles.values():
        area = riemannian_area(cyc, frame)
        poly = compute_polynomial(cyc, frame)
        direct = np.array([symplectic_area(cyc, frame, d) for d in dirs])
        excess = float(np.max(direct - area))
        w_worst = max(w_worst, excess)
        w_ok &= excess <= WIRTINGER_SLACK * max(1.0, area)

        err = float(np.max(np.abs(evaluate(poly, dirs) - direct)))
        r_worst = max(r_worst, err)
        r_ok &= err < RECONSTRUCTION_TOL * (1.0 + area)

        # tangent test against Wirtinger equality at I, J, K; a complex cycle
        # may carry the opposite orientation, so equality is checked at +-L
        for d in np.eye(3):
            t = is_complex_analytic(cyc, frame, d, tols.tangent)
            gap = min(area - symplectic_area(cyc, frame, s * d) for s in (1.0, -1.0))
            equal = gap < tols.gap * area
            if t.is_complex != equal:
                x_ok = False
            x_worst = max(x_worst, t.residual if t.is_complex else gap / area if equal else 0.0)
    yield InvariantResult("Wirtinger inequality on suite", w_ok, w_worst, WIRTINGER_SLACK)
    yield InvariantResult("polynomial reconstruction", r_ok, r_worst, RECONSTRUCTION_TOL)
    yield InvariantResult("tangent test agrees with Wirtinger equality", x_ok, x_worst, tols.tangent)


def run_invariants(scenario) -> list:
    results = list(_frame_checks(scenario.frame))
    if not results[0].passed:
        return results
    results += list(_pfaffian_checks(scenario))
    results += list(_cycle_checks(scenario, scenario.tolerances))
    return results
