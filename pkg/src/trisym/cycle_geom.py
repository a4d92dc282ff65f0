"""Compact 2n-cycles in flat tori: Riemannian and symplectic areas.

Linear subtori integrate exactly, since every Kahler form is constant: the
integral of ``omega^n`` over the unit parameter cube is ``n! * Pf(Omega)``
with ``Omega`` the Gram-like matrix of ``omega`` on the generators.
Parametrized cycles use the periodic trapezoidal rule on a tensor grid.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import DegenerateCycleError, InconsistencyError, InvalidArgumentError, NumericalFailure
from .hk_core import QuaternionicFrame, induced_structure, kahler_form_direction

__all__ = [
    "LinearCycle",
    "ParametrizedCycle",
    "CycleHomClass",
    "ComplexTest",
    "pfaffian",
    "riemannian_area",
    "symplectic_area",
    "symplectic_integral",
    "calibrate_normalization",
    "reference_complex_cycle",
    "wirtinger_gap",
    "is_complex_analytic",
    "is_trianalytic_pointwise",
    "mixed_integrals",
    "monomials",
]

log = logging.getLogger(__name__)

GRAM_FLOOR = 1e-12
SKEW_TOL = 1e-10
INTERP_COND_LIMIT = 1e8


# ---------------------------------------------------------------------------
# cycles


@dataclass(frozen=True, eq=False)
class LinearCycle:
    """Subtorus spanned by ``2n`` generators; orientation is the listed order."""

    vectors: np.ndarray
    name: str = ""
    # generators in lexicographic order and the sign of that reordering, so
    # that permuting the input permutes nothing numerically
    canonical: np.ndarray = field(init=False, repr=False)
    orientation: int = field(init=False, repr=False)

    def __post_init__(self):
        v = np.array(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[0] < 2 or v.shape[0] % 2:
            raise InvalidArgumentError("a linear cycle needs an even number (>= 2) of generators")
        if v.shape[0] > v.shape[1]:
            raise DegenerateCycleError(f"{v.shape[0]} generators cannot be independent in R^{v.shape[1]}")
        if np.linalg.det(v @ v.T) <= GRAM_FLOOR:
            raise DegenerateCycleError("generators are linearly dependent")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)
        perm = np.lexsort(v.T[::-1])
        object.__setattr__(self, "canonical", v[perm])
        object.__setattr__(self, "orientation", _permutation_sign(perm))

    @property
    def n(self) -> int:
        return self.vectors.shape[0] // 2

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def swapped(self, i: int = 0, j: int = 1) -> "LinearCycle":
        v = self.vectors.copy()
        v[[i, j]] = v[[j, i]]
        return LinearCycle(v, self.name)

    def tangent_frames(self):
        return self.canonical.T[None, :, :], np.ones(1)


def _permutation_sign(perm) -> int:
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


@dataclass(frozen=True, eq=False)
class ParametrizedCycle:
    """Smooth map from the parameter torus ``[0, 1)^{2n}`` into ``R^dim``.

    ``position`` and ``jacobian`` are vectorized: they take an array of
    parameter points of shape ``(N, 2n)`` and return ``(N, dim)`` and
    ``(N, dim, 2n)`` respectively. The map need only close up modulo a
    translation, so its Jacobian must be periodic.
    """

    n: int
    dim: int
    position: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray]
    grid: tuple = (16, 16)
    name: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArgumentError("n must be positive")
        grid = tuple(int(k) for k in self.grid)
        if len(grid) == 1:
            grid = grid * (2 * self.n)
        if len(grid) != 2 * self.n or min(grid) < 1:
            raise InvalidArgumentError(f"grid needs {2 * self.n} positive counts, got {self.grid}")
        object.__setattr__(self, "grid", grid)

    def with_grid(self, grid) -> "ParametrizedCycle":
        return ParametrizedCycle(self.n, self.dim, self.position, self.jacobian, grid, self.name)

    def nodes(self) -> np.ndarray:
        axes = [np.arange(k) / k for k in self.grid]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    def check_seam(self, samples: int = 8, tol: float = 1e-9) -> float:
        """Largest Jacobian mismatch across the seams ``u_i = 0`` / ``u_i = 1``."""
        rng = np.random.default_rng(0)
        worst = 0.0
        for axis in range(2 * self.n):
            u = rng.random((samples, 2 * self.n))
            u[:, axis] = 0.0
            u1 = u.copy()
            u1[:, axis] = 1.0
            worst = max(worst, float(np.max(np.abs(self.jacobian(u1) - self.jacobian(u)))))
            shift = self.position(u1) - self.position(u)
            worst = max(worst, float(np.max(np.abs(shift - shift[0]))))
        if worst > tol:
            raise InvalidArgumentError(f"map is not periodic at the seam (mismatch {worst:.3e})")
        return worst

    def tangent_frames(self):
        u = self.nodes()
        jac = np.asarray(self.jacobian(u), dtype=float)
        if jac.shape != (u.shape[0], self.dim, 2 * self.n):
            raise InvalidArgumentError(f"jacobian returned shape {jac.shape}")
        return jac, np.full(u.shape[0], 1.0 / u.shape[0])


@dataclass
class CycleHomClass:
    """Mixed integrals of ``omega_I^p omega_J^q omega_K^r`` with ``p+q+r = n``."""

    n: int
    table: dict
    residual: float = 0.0
    condition: float = 1.0

    def __getitem__(self, pqr):
        return self.table[tuple(pqr)]

    def __len__(self):
        return len(self.table)


class ComplexTest(NamedTuple):
    is_complex: bool
    residual: float


# ---------------------------------------------------------------------------
# Pfaffian


def pfaffian(A) -> float:
    """Pfaffian of an antisymmetric matrix.

    Skew-symmetric Gaussian elimination (Parlett-Reid) with partial
    pivoting; O(n^3).
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidArgumentError("pfaffian needs a square matrix")
    size = A.shape[0]
    if size % 2:
        raise InvalidArgumentError("pfaffian of an odd-dimensional matrix")
    if size == 0:
        return 1.0
    if np.max(np.abs(A + A.T)) >= SKEW_TOL:
        raise InvalidArgumentError("matrix is not antisymmetric")

    result = 1.0
    for k in range(0, size - 1, 2):
        piv = k + 1 + int(np.argmax(np.abs(A[k + 1 :, k])))
        if piv != k + 1:
            A[[k + 1, piv], :] = A[[piv, k + 1], :]
            A[:, [k + 1, piv]] = A[:, [piv, k + 1]]
            result = -result
        if A[k + 1, k] == 0.0:
            return 0.0
        result *= A[k, k + 1]
        if k + 2 < size:
            tau = A[k, k + 2 :] / A[k, k + 1]
            col = A[k + 2 :, k + 1]
            A[k + 2 :, k + 2 :] += np.outer(tau, col) - np.outer(col, tau)
    return float(result)


def _pfaffian_stack(omegas: np.ndarray) -> np.ndarray:
    size = omegas.shape[-1]
    if size == 2:
        return omegas[:, 0, 1]
    if size == 4:
        o = omegas
        return o[:, 0, 1] * o[:, 2, 3] - o[:, 0, 2] * o[:, 1, 3] + o[:, 0, 3] * o[:, 1, 2]
    return np.array([pfaffian(o) for o in omegas])


# ---------------------------------------------------------------------------
# areas


def _check_dims(cycle, frame: QuaternionicFrame):
    if cycle.dim != frame.dim:
        raise InvalidArgumentError(f"cycle lives in R^{cycle.dim} but frame in R^{frame.dim}")


def _gram_stack(cycle, frame):
    _check_dims(cycle, frame)
    frames, weights = cycle.tangent_frames()
    gram = np.einsum("nai,ab,nbj->nij", frames, frame.g, frames)
    dets = np.linalg.det(gram)
    if np.min(dets) <= GRAM_FLOOR:
        raise DegenerateCycleError(f"tangent Gram determinant {np.min(dets):.3e} below {GRAM_FLOOR}")
    return frames, weights, gram, dets


def riemannian_area(cycle, frame: QuaternionicFrame) -> float:
    _, weights, _, dets = _gram_stack(cycle, frame)
    return float(weights @ np.sqrt(dets))


def symplectic_integral(cycle, frame: QuaternionicFrame, direction) -> float:
    """Unnormalized ``integral over Z of omega_x^n`` for any real 3-vector ``x``."""
    frames, weights, _, _ = _gram_stack(cycle, frame)
    W = kahler_form_direction(frame, direction)
    omegas = np.einsum("nai,ab,nbj->nij", frames, W, frames)
    sign = getattr(cycle, "orientation", 1)
    return float(sign * math.factorial(cycle.n) * (weights @ _pfaffian_stack(omegas)))


def reference_complex_cycle(frame: QuaternionicFrame, n: int) -> LinearCycle:
    """An I-complex linear cycle ``span{v1, I v1, ..., vn, I vn}``.

    Seeds are basis vectors taken from distinct quaternionic blocks first
    (e0, e4, e8, ...), then the remaining basis vectors in order, skipping
    any already in the span.
    """
    if n < 1 or 2 * n > frame.dim:
        raise InvalidArgumentError(f"no complex {n}-cycle fits in R^{frame.dim}")
    dim = frame.dim
    order = list(range(0, dim, 4)) + [k for k in range(dim) if k % 4]
    vecs = []
    for k in order:
        if len(vecs) == 2 * n:
            break
        e = np.zeros(dim)
        e[k] = 1.0
        trial = np.array(vecs + [e])
        if np.linalg.matrix_rank(trial, tol=1e-9) == len(vecs) + 1:
            vecs += [e, frame.I @ e]
    return LinearCycle(np.array(vecs), name=f"reference-{n}")


def calibrate_normalization(frame: QuaternionicFrame, n: int) -> float:
    """Constant ``c_n`` making ``c_n * int omega_I^n`` equal area on I-complex cycles."""
    ref = reference_complex_cycle(frame, n)
    c_n = riemannian_area(ref, frame) / symplectic_integral(ref, frame, (1.0, 0.0, 0.0))
    log.debug("c_%d = %r (1/n! = %r, 1/(n! 2^n) = %r)", n, c_n, 1 / math.factorial(n), 1 / (math.factorial(n) * 2**n))
    return c_n


def symplectic_area(cycle, frame: QuaternionicFrame, direction) -> float:
    """Normalized symplectic area; homogeneous of degree n in ``direction``."""
    return calibrate_normalization(frame, cycle.n) * symplectic_integral(cycle, frame, direction)


def wirtinger_gap(cycle, frame: QuaternionicFrame, direction) -> float:
    x = induced_structure(frame, direction).direction
    area = riemannian_area(cycle, frame)
    gap = area - symplectic_area(cycle, frame, x)
    if gap < -1e-9 * max(1.0, area):
        raise InconsistencyError(f"Wirtinger inequality violated by {-gap:.3e}")
    return gap


def is_complex_analytic(cycle, frame: QuaternionicFrame, direction, tol: float = 1e-8) -> ComplexTest:
    """Is the tangent space invariant under ``L``? Residual is ``||(1-P) L P||_2``."""
    L = induced_structure(frame, direction).matrix
    frames, _, gram, _ = _gram_stack(cycle, frame)
    # g-orthogonal projector T (T^T g T)^{-1} T^T g, one per node
    proj = frames @ np.linalg.solve(gram, np.swapaxes(frames, 1, 2) @ frame.g)
    eye = np.eye(frame.dim)
    leak = (eye - proj) @ L @ proj
    residual = float(np.max(np.linalg.norm(leak, ord=2, axis=(1, 2))))
    return ComplexTest(residual < tol, residual)


def is_trianalytic_pointwise(cycle, frame: QuaternionicFrame, tol: float = 1e-8) -> bool:
    # I- and J-invariance give K = IJ and every aI + bJ + cK
    return (
        is_complex_analytic(cycle, frame, (1.0, 0.0, 0.0), tol).is_complex
        and is_complex_analytic(cycle, frame, (0.0, 1.0, 0.0), tol).is_complex
    )


# ---------------------------------------------------------------------------
# mixed integrals


def monomials(n: int) -> list:
    """Exponent triples ``(p, q, r)`` with ``p+q+r = n``, lexicographically descending."""
    return sorted(
        ((p, q, n - p - q) for p in range(n + 1) for q in range(n + 1 - p)),
        reverse=True,
    )


def multinomial(n: int, pqr: Sequence[int]) -> int:
    p, q, r = pqr
    return math.factorial(n) // (math.factorial(p) * math.factorial(q) * math.factorial(r))


def interpolation_directions(n: int) -> np.ndarray:
    """Normalized principal-lattice points ``(p, q, r) / |(p, q, r)|``, ``p+q+r = n``.

    Unisolvent for homogeneous degree-n polynomials (it is the classical
    triangle lattice seen through homogeneity) and well conditioned for small
    n; the three axes are included, so axis-aligned data is recovered exactly.
    """
    pts = np.array(monomials(n), dtype=float)
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def mixed_integrals(cycle, frame: QuaternionicFrame) -> CycleHomClass:
    """Recover the mixed-integral table by interpolating ``int omega_x^n``.

    ``int (a wI + b wJ + c wK)^n`` is a homogeneous polynomial in
    ``(a, b, c)`` whose coefficients are multinomials times the mixed
    integrals, so sampling one direction per monomial and solving the
    linear system recovers them.
    """
    n = cycle.n
    monos = monomials(n)
    dirs = interpolation_directions(n)
    exps = np.array(monos)
    design = np.prod(dirs[:, None, :] ** exps[None, :, :], axis=2)
    design = design * np.array([multinomial(n, e) for e in monos], dtype=float)
    cond = float(np.linalg.cond(design))
    if not cond <= INTERP_COND_LIMIT:
        raise NumericalFailure(f"interpolation matrix ill-conditioned (cond {cond:.3e}) at n={n}")
    values = np.array([symplectic_integral(cycle, frame, d) for d in dirs])
    sol, *_ = np.linalg.lstsq(design, values, rcond=None)
    residual = float(np.max(np.abs(design @ sol - values)))
    table = {e: float(s) for e, s in zip(monos, sol)}
    return CycleHomClass(n=n, table=table, residual=residual, condition=cond)
