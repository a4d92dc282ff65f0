"""Flat quaternionic frames on R^{4m} and the complex structures they induce.

A frame is a constant metric ``g`` together with three constant endomorphisms
``I, J, K`` satisfying the quaternion relations. Every unit vector ``(a, b, c)``
gives a complex structure ``L = aI + bJ + cK`` and a Kahler form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "QuaternionicFrame",
    "InducedStructure",
    "FrameReport",
    "standard_frame",
    "verify_frame",
    "induced_structure",
    "kahler_form",
    "kahler_form_direction",
    "rotate_frame",
    "scale_metric",
]

_UNIT_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class QuaternionicFrame:
    """Metric plus quaternion triple on R^{dim}, dim = 4m.

    Only shapes are checked on construction; use :func:`verify_frame` for the
    algebraic relations so that broken frames can still be inspected.
    """

    g: np.ndarray
    I: np.ndarray
    J: np.ndarray
    K: np.ndarray

    def __post_init__(self):
        mats = {}
        for name in ("g", "I", "J", "K"):
            a = np.array(getattr(self, name), dtype=float)
            if a.ndim != 2 or a.shape[0] != a.shape[1]:
                raise InvalidArgumentError(f"{name} must be a square matrix, got shape {a.shape}")
            a.setflags(write=False)
            mats[name] = a
        dims = {a.shape[0] for a in mats.values()}
        if len(dims) != 1:
            raise InvalidArgumentError(f"inconsistent matrix sizes {sorted(dims)}")
        (dim,) = dims
        if dim == 0 or dim % 4:
            raise InvalidArgumentError(f"dimension must be a positive multiple of 4, got {dim}")
        for name, a in mats.items():
            object.__setattr__(self, name, a)

    @property
    def dim(self) -> int:
        return self.g.shape[0]

    @property
    def m(self) -> int:
        return self.dim // 4

    def triple(self):
        return self.I, self.J, self.K


@dataclass(frozen=True, eq=False)
class InducedStructure:
    direction: np.ndarray
    matrix: np.ndarray


@dataclass
class FrameReport:
    passed: bool
    tol: float
    residuals: dict = field(default_factory=dict)

    @property
    def worst(self) -> float:
        return max(self.residuals.values())


def _quaternion_blocks():
    i = np.zeros((4, 4))
    j = np.zeros((4, 4))
    k = np.zeros((4, 4))
    # column c holds the image of e_c
    i[1, 0], i[0, 1], i[3, 2], i[2, 3] = 1, -1, 1, -1
    j[2, 0], j[0, 2], j[3, 1], j[1, 3] = 1, -1, -1, 1
    k[3, 0], k[0, 3], k[2, 1], k[1, 2] = 1, -1, 1, -1
    return i, j, k


def standard_frame(m: int) -> QuaternionicFrame:
    """Identity metric with ``m`` copies of left quaternion multiplication."""
    if int(m) != m or m < 1:
        raise InvalidArgumentError(f"m must be a positive integer, got {m!r}")
    m = int(m)
    eye = np.eye(m)
    i, j, k = _quaternion_blocks()
    return QuaternionicFrame(g=np.eye(4 * m), I=np.kron(eye, i), J=np.kron(eye, j), K=np.kron(eye, k))


def verify_frame(frame: QuaternionicFrame, tol: float = 1e-12) -> FrameReport:
    g, I, J, K = frame.g, frame.I, frame.J, frame.K
    eye = np.eye(frame.dim)

    def res(a):
        return float(np.max(np.abs(a)))

    residuals = {
        "I^2+Id": res(I @ I + eye),
        "J^2+Id": res(J @ J + eye),
        "K^2+Id": res(K @ K + eye),
        "IJ-K": res(I @ J - K),
        "I^T g I-g": res(I.T @ g @ I - g),
        "J^T g J-g": res(J.T @ g @ J - g),
        "K^T g K-g": res(K.T @ g @ K - g),
        "g-g^T": res(g - g.T),
    }
    passed = all(v < tol for v in residuals.values())
    if passed:
        # positive-definiteness is a yes/no property, not a residual
        passed = bool(np.linalg.eigvalsh(0.5 * (g + g.T))[0] > 0)
    return FrameReport(passed=passed, tol=tol, residuals=residuals)


def _as_direction(direction) -> np.ndarray:
    x = np.asarray(direction, dtype=float).reshape(-1)
    if x.shape != (3,):
        raise InvalidArgumentError(f"direction must be a 3-vector, got shape {x.shape}")
    return x


def _unit(direction) -> np.ndarray:
    x = _as_direction(direction)
    r = float(np.linalg.norm(x))
    if r == 0.0 or not np.isfinite(r):
        raise InvalidArgumentError("direction must be a non-zero finite vector")
    return x / r


def induced_structure(frame: QuaternionicFrame, direction) -> InducedStructure:
    """Complex structure ``aI + bJ + cK`` for a unit direction.

    Inputs within 1e-9 of the unit sphere are renormalized; anything further
    off is rejected.
    """
    x = _as_direction(direction)
    r = float(np.linalg.norm(x))
    if r == 0.0:
        raise InvalidArgumentError("direction must be non-zero")
    if abs(r - 1.0) > _UNIT_SLACK:
        raise InvalidArgumentError(f"direction has norm {r!r}, expected 1")
    x = x / r
    L = x[0] * frame.I + x[1] * frame.J + x[2] * frame.K
    x.setflags(write=False)
    L.setflags(write=False)
    return InducedStructure(direction=x, matrix=L)


def kahler_form(frame: QuaternionicFrame, L) -> np.ndarray:
    """Matrix ``W`` with ``W[u, v] = g(L e_u, e_v)``.

    ``L`` may be an :class:`InducedStructure` or a bare matrix. With this sign
    a complex line oriented as ``(v, Lv)`` has positive area.
    """
    mat = L.matrix if isinstance(L, InducedStructure) else np.asarray(L, dtype=float)
    return mat.T @ frame.g


def kahler_form_direction(frame: QuaternionicFrame, direction) -> np.ndarray:
    """Kahler form of ``aI + bJ + cK`` for an arbitrary (non-unit) 3-vector."""
    a, b, c = _as_direction(direction)
    return a * kahler_form(frame, frame.I) + b * kahler_form(frame, frame.J) + c * kahler_form(frame, frame.K)


def rotate_frame(frame: QuaternionicFrame, R) -> QuaternionicFrame:
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3):
        raise InvalidArgumentError(f"rotation must be 3x3, got {R.shape}")
    if np.max(np.abs(R.T @ R - np.eye(3))) > 1e-9 or abs(np.linalg.det(R) - 1.0) > 1e-9:
        raise InvalidArgumentError("rotation must be orthogonal with determinant +1")
    I, J, K = frame.triple()
    rows = [R[r, 0] * I + R[r, 1] * J + R[r, 2] * K for r in range(3)]
    return QuaternionicFrame(g=frame.g, I=rows[0], J=rows[1], K=rows[2])


def scale_metric(frame: QuaternionicFrame, lam: float) -> QuaternionicFrame:
    if not lam > 0:
        raise InvalidArgumentError("metric scale must be positive")
    return QuaternionicFrame(g=lam * frame.g, I=frame.I, J=frame.J, K=frame.K)
