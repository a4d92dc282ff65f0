"""Point sets and quadrature rules on the unit sphere S^2."""

import math

import numpy as np

from .errors import InvalidArgumentError

# 1/phi, the golden ratio conjugate
GOLDEN_CONJUGATE = (math.sqrt(5.0) - 1.0) / 2.0


def fibonacci_sphere(n_points: int) -> np.ndarray:
    """Quasi-uniform nodes, shape ``(n_points, 3)``.

    Node ``i`` has height ``z = 1 - (2i+1)/N`` and azimuth
    ``2*pi*i*GOLDEN_CONJUGATE``. The layout is fixed because the scan CSV
    format depends on it.
    """
    if n_points < 1:
        raise InvalidArgumentError("need at least one node")
    i = np.arange(n_points, dtype=float)
    z = 1.0 - (2.0 * i + 1.0) / n_points
    phi = 2.0 * math.pi * i * GOLDEN_CONJUGATE
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.column_stack((rho * np.cos(phi), rho * np.sin(phi), z))


def product_gauss_rule(n_polar: int):
    """Gauss-Legendre in ``z`` times the uniform rule in azimuth.

    Returns ``(nodes, weights)`` with weights summing to 1, so that
    ``weights @ f(nodes)`` is the mean of ``f`` over the sphere. Exact for
    polynomials of total degree ``<= 2*n_polar - 1``.
    """
    if n_polar < 1:
        raise InvalidArgumentError("n_polar must be positive")
    z, wz = np.polynomial.legendre.leggauss(n_polar)
    n_az = 2 * n_polar
    phi = 2.0 * math.pi * np.arange(n_az) / n_az
    rho = np.sqrt(1.0 - z * z)
    nodes = np.stack(
        [
            np.outer(rho, np.cos(phi)).ravel(),
            np.outer(rho, np.sin(phi)).ravel(),
            np.repeat(z, n_az),
        ],
        axis=1,
    )
    weights = np.repeat(wz / 2.0, n_az) / n_az
    return nodes, weights


def exact_degree(n_polar: int) -> int:
    return 2 * n_polar - 1


def angular_distance(x, y) -> float:
    """Angle between two non-zero 3-vectors, robust near 0 and pi."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return float(np.arctan2(np.linalg.norm(np.cross(x, y)), np.dot(x, y)))


def random_rotation(rng) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
