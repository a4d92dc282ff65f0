"""Critical points and global maxima of a homogeneous polynomial on S^2.

Multistart Riemannian Newton on the Lagrange system ``grad p(x) = lam x``,
``|x| = 1``. Starts sit on a Fibonacci grid; converged points are merged by
angle and classified by the Hessian projected to the tangent plane.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstantPolynomialError, InvalidArgumentError, NumericalFailure
from .sphere_grid import fibonacci_sphere
from .trisym_poly import TrisymPolynomial, evaluate, is_constant, sphere_stats

__all__ = ["CriticalPoint", "MaximaSet", "critical_points", "global_maxima"]

MAXIMUM, MINIMUM, SADDLE, DEGENERATE = "maximum", "minimum", "saddle", "degenerate"

DEFAULT_STARTS = 256
DEFAULT_ITERS = 40
DEFAULT_DEDUPE = 1e-6
DENSE_GRID = 4096
LOCUS_COUNT = 8
_CONVERGED = 1e-12
_ACCEPT = 1e-9
_EIG_ZERO = 1e-8
_MAX_STEP = 0.5


@dataclass(frozen=True)
class CriticalPoint:
    direction: np.ndarray
    value: float
    kind: str
    multiplier: float
    residual: float = 0.0


@dataclass
class MaximaSet:
    points: list
    max_value: float
    degenerate_locus_flag: bool = False
    constant: bool = False
    grid_max: float = float("nan")

    @property
    def directions(self) -> list:
        return [p.direction for p in self.points]


def _tangent_basis(X):
    # pick the coordinate axis least aligned with x, then Gram-Schmidt
    helper = np.zeros_like(X)
    helper[np.arange(len(X)), np.argmin(np.abs(X), axis=1)] = 1.0
    t1 = helper - np.sum(helper * X, axis=1, keepdims=True) * X
    t1 /= np.linalg.norm(t1, axis=1, keepdims=True)
    t2 = np.cross(X, t1)
    return np.stack([t1, t2], axis=2)  # (N, 3, 2)


def _lagrange(poly, X):
    grad = poly.gradient(X)
    lam = np.sum(grad * X, axis=1)
    res = grad - lam[:, None] * X
    return grad, lam, res


def _projected_hessian(poly, X, lam):
    T = _tangent_basis(X)
    H = poly.hessian(X) - lam[:, None, None] * np.eye(3)
    return T, np.swapaxes(T, 1, 2) @ H @ T


def _newton(poly, X, iters):
    X = X / np.linalg.norm(X, axis=1, keepdims=True)
    for _ in range(iters):
        _, lam, res = _lagrange(poly, X)
        rnorm = np.linalg.norm(res, axis=1)
        active = rnorm > _CONVERGED * (1.0 + np.abs(lam))
        if not active.any():
            break
        Xa = X[active]
        T, Ht = _projected_hessian(poly, Xa, lam[active])
        rt = np.einsum("nia,ni->na", T, res[active])
        # pseudo-inverse handles flat directions along a degenerate locus
        step_t = -np.einsum("nab,nb->na", np.linalg.pinv(Ht), rt)
        step = np.einsum("nia,na->ni", T, step_t)
        length = np.linalg.norm(step, axis=1, keepdims=True)
        step = np.where(length > _MAX_STEP, step * (_MAX_STEP / np.maximum(length, 1e-300)), step)
        Xa = Xa + step
        X[active] = Xa / np.linalg.norm(Xa, axis=1, keepdims=True)
    return X


def _angles(x, Y):
    # same arctan2 form as angular_distance, against many points at once
    return np.arctan2(np.linalg.norm(np.cross(Y, x), axis=1), Y @ x)


def _classify(eigs, scale):
    if np.any(np.abs(eigs) <= _EIG_ZERO * scale):
        return DEGENERATE
    if np.all(eigs < 0):
        return MAXIMUM
    if np.all(eigs > 0):
        return MINIMUM
    return SADDLE


def _check_poly(poly: TrisymPolynomial, tol=1e-8):
    if poly.n < 1:
        raise InvalidArgumentError("polynomial degree must be at least 1")
    if is_constant(poly, tol):
        raise ConstantPolynomialError(sphere_stats(poly).mean)


def critical_points(
    poly: TrisymPolynomial,
    starts: int = DEFAULT_STARTS,
    newton_iters: int = DEFAULT_ITERS,
    dedupe_angle: float = DEFAULT_DEDUPE,
) -> list:
    """All critical points reached from ``starts`` Fibonacci seeds.

    Sorted by value (descending), then lexicographically by direction.
    """
    _check_poly(poly)
    X = _newton(poly, fibonacci_sphere(starts), newton_iters)
    grad, lam, res = _lagrange(poly, X)
    rnorm = np.linalg.norm(res, axis=1)
    ok = rnorm < _ACCEPT * (1.0 + np.abs(lam))
    if not ok.any():
        raise NumericalFailure(f"no Newton start converged (best residual {rnorm.min():.3e})")
    X, lam, rnorm = X[ok], lam[ok], rnorm[ok]

    # keep the smaller residual on ties; stable sort keeps start order otherwise
    order = np.argsort(rnorm, kind="stable")
    kept = []
    for i in order:
        if kept and np.min(_angles(X[i], X[kept])) <= dedupe_angle:
            continue
        kept.append(i)

    kept_X = X[kept]
    kept_lam = lam[kept]
    _, Ht = _projected_hessian(poly, kept_X, kept_lam)
    eigs = np.linalg.eigvalsh(Ht)
    values = evaluate(poly, kept_X)
    points = [
        CriticalPoint(
            direction=kept_X[k].copy(),
            value=float(values[k]),
            kind=_classify(eigs[k], 1.0 + abs(kept_lam[k])),
            multiplier=float(kept_lam[k]),
            residual=float(rnorm[kept[k]]),
        )
        for k in range(len(kept))
    ]
    points.sort(key=lambda p: (-p.value, tuple(p.direction)))
    return points


def global_maxima(
    poly: TrisymPolynomial,
    value_tol: float = 1e-9,
    starts: int = DEFAULT_STARTS,
    newton_iters: int = DEFAULT_ITERS,
    dedupe_angle: float = DEFAULT_DEDUPE,
) -> MaximaSet:
    """Global maxima on the sphere, cross-checked against a dense grid.

    A constant polynomial gives an empty set with ``constant=True``.
    """
    try:
        crit = critical_points(poly, starts, newton_iters, dedupe_angle)
    except ConstantPolynomialError as sig:
        return MaximaSet(points=[], max_value=float(sig.value), constant=True)

    top = max(p.value for p in crit)
    cut = top - value_tol * (1.0 + abs(top))
    points = [p for p in crit if p.kind in (MAXIMUM, DEGENERATE) and p.value >= cut]
    if not points:
        raise NumericalFailure("largest critical value is not attained at a maximum")
    max_value = max(p.value for p in points)

    grid_max = float(np.max(evaluate(poly, fibonacci_sphere(DENSE_GRID))))
    if grid_max > max_value + value_tol * (1.0 + abs(max_value)):
        raise NumericalFailure(
            f"dense grid value {grid_max!r} exceeds located maximum {max_value!r}; a maximum was missed"
        )
    return MaximaSet(
        points=points,
        max_value=max_value,
        degenerate_locus_flag=len(points) >= LOCUS_COUNT,
        grid_max=grid_max,
    )
