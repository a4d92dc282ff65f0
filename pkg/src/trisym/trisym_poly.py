"""The symplectic area as an explicit homogeneous polynomial in (a, b, c)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cycle_geom import calibrate_normalization, mixed_integrals, monomials, multinomial
from .errors import InvalidArgumentError
from .sphere_grid import exact_degree, product_gauss_rule

__all__ = [
    "TrisymPolynomial",
    "SphereStats",
    "compute_polynomial",
    "evaluate",
    "sphere_stats",
    "is_constant",
]


@dataclass(frozen=True, eq=False)
class TrisymPolynomial:
    n: int
    coeffs: dict
    provenance: str = ""

    def __post_init__(self):
        expected = set(monomials(self.n))
        if set(self.coeffs) != expected:
            raise InvalidArgumentError(f"degree-{self.n} polynomial needs exactly {len(expected)} coefficients")

    @classmethod
    def from_dict(cls, n, partial, provenance=""):
        """Fill unspecified monomials with zero."""
        coeffs = {e: 0.0 for e in monomials(n)}
        for e, v in partial.items():
            coeffs[tuple(e)] = float(v)
        return cls(n, coeffs, provenance)

    @property
    def exponents(self) -> np.ndarray:
        return np.array(monomials(self.n), dtype=int)

    @property
    def values(self) -> np.ndarray:
        return np.array([self.coeffs[e] for e in monomials(self.n)])

    def __call__(self, x):
        return evaluate(self, x)

    def compose(self, R) -> "TrisymPolynomial":
        """Coefficients of ``x -> p(R^T x)``, found by exact interpolation."""
        R = np.asarray(R, dtype=float)
        nodes, _ = product_gauss_rule(self.n + 2)
        exps = self.exponents
        design = np.prod(nodes[:, None, :] ** exps[None, :, :], axis=2)
        target = evaluate(self, nodes @ R)
        sol, *_ = np.linalg.lstsq(design, target, rcond=None)
        return TrisymPolynomial(self.n, dict(zip(monomials(self.n), map(float, sol))), self.provenance)

    def gradient(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.zeros_like(X)
        for (p, q, r), c in self.coeffs.items():
            if c == 0.0:
                continue
            for j, e in enumerate((p, q, r)):
                if e == 0:
                    continue
                ex = [p, q, r]
                ex[j] -= 1
                out[:, j] += c * e * _monomial(X, ex)
        return out

    def hessian(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.zeros((len(X), 3, 3))
        for (p, q, r), c in self.coeffs.items():
            if c == 0.0:
                continue
            for j in range(3):
                for k in range(j, 3):
                    ex = [p, q, r]
                    f = ex[j]
                    ex[j] -= 1
                    f *= ex[k]
                    ex[k] -= 1
                    if f == 0:
                        continue
                    term = c * f * _monomial(X, ex)
                    out[:, j, k] += term
                    if k != j:
                        out[:, k, j] += term
        return out


def _monomial(X, ex):
    return X[:, 0] ** ex[0] * X[:, 1] ** ex[1] * X[:, 2] ** ex[2]


@dataclass(frozen=True)
class SphereStats:
    mean: float
    max_deviation: float
    l2_deviation: float


def compute_polynomial(cycle, frame, name: str | None = None) -> TrisymPolynomial:
    n = cycle.n
    table = mixed_integrals(cycle, frame)
    c_n = calibrate_normalization(frame, n)
    coeffs = {e: c_n * multinomial(n, e) * table[e] for e in monomials(n)}
    return TrisymPolynomial(n, coeffs, name if name is not None else getattr(cycle, "name", ""))


def evaluate(poly: TrisymPolynomial, x):
    """Value at one 3-vector or a stack of shape ``(N, 3)``."""
    X = np.asarray(x, dtype=float)
    single = X.ndim == 1
    X = np.atleast_2d(X)
    total = np.zeros(len(X))
    for e in monomials(poly.n):
        c = poly.coeffs[e]
        if c != 0.0:
            total += c * _monomial(X, e)
    return float(total[0]) if single else total


def sphere_stats(poly: TrisymPolynomial, rule_size: int | None = None) -> SphereStats:
    """Mean and deviations of ``poly`` over S^2 with a rule exact to degree 2n.

    ``rule_size`` is the number of Gauss-Legendre nodes in the polar
    direction; it must be at least ``n + 1``.
    """
    if rule_size is None:
        rule_size = poly.n + 2
    if exact_degree(rule_size) < 2 * poly.n:
        raise InvalidArgumentError(f"rule of size {rule_size} is not exact for degree {2 * poly.n}")
    nodes, weights = product_gauss_rule(rule_size)
    vals = evaluate(poly, nodes)
    mean = float(weights @ vals)
    dev = vals - mean
    return SphereStats(
        mean=mean,
        max_deviation=float(np.max(np.abs(dev))),
        l2_deviation=math.sqrt(max(0.0, float(weights @ (dev * dev)))),
    )


def is_constant(poly: TrisymPolynomial, tol: float = 1e-8, rule_size: int | None = None) -> bool:
    st = sphere_stats(poly, rule_size)
    if poly.n % 2:
        # odd and homogeneous: constant on the sphere only if identically zero
        return max(abs(st.mean), st.max_deviation, st.l2_deviation) < tol
    bound = tol * max(1.0, abs(st.mean))
    return st.l2_deviation < bound and st.max_deviation < bound
