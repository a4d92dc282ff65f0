import math

import numpy as np
import pytest
from scipy.special import ellipe

from trisym.cycle_geom import (
    LinearCycle,
    is_complex_analytic,
    riemannian_area,
    symplectic_area,
)
from trisym.errors import InvalidArgumentError
from trisym.hk_core import standard_frame
from trisym.presets import build_preset, flat_embed, wavy_torus
from trisym.trisym_poly import compute_polynomial


def wavy_area_exact(epsilon, frequency):
    """Area of the wavy torus as a product of two complete elliptic integrals.

    With beta = 2 pi k eps the tangents are orthogonal with squared lengths
    1 + beta^2 cos^2 and 1 + beta^2 sin^2, and each factor averages to
    (2/pi) sqrt(1 + beta^2) E(beta^2 / (1 + beta^2)).
    """
    beta2 = (2 * math.pi * frequency * epsilon) ** 2
    factor = (2 / math.pi) * math.sqrt(1 + beta2) * ellipe(beta2 / (1 + beta2))
    return factor * factor


def test_flat_embed_matches_linear():
    f = standard_frame(2)
    rng = np.random.default_rng(4)
    for n in (1, 2):
        vecs = rng.integers(-2, 3, size=(2 * n, 8)).astype(float)
        while abs(np.linalg.det(vecs @ vecs.T)) < 1e-3:
            vecs = rng.integers(-2, 3, size=(2 * n, 8)).astype(float)
        lin = LinearCycle(vecs)
        par = flat_embed(vecs, grid=16)
        assert riemannian_area(par, f) == pytest.approx(riemannian_area(lin, f), abs=1e-10)
        for _ in range(5):
            x = rng.standard_normal(3)
            assert symplectic_area(par, f, x) == pytest.approx(symplectic_area(lin, f, x), abs=1e-10)


def test_flat_embed_seam():
    assert flat_embed(np.eye(4)[:2]).check_seam() == 0.0


def test_wavy_torus_area_converges():
    f = standard_frame(1)
    exact = wavy_area_exact(0.01, 4)
    errs = [abs(riemannian_area(wavy_torus(epsilon=0.01, grid=g), f) - exact) for g in (8, 16, 32)]
    assert errs[1] < errs[0] / 2 and errs[2] < errs[1] / 2
    assert errs[2] < 1e-8


def test_wavy_torus_symplectic_is_topological():
    # the ripple changes the integrand but not the class: int omega_I = 1
    f = standard_frame(1)
    w = wavy_torus(epsilon=0.01, grid=8)
    assert symplectic_area(w, f, (1, 0, 0)) == pytest.approx(1.0, abs=1e-14)
    assert symplectic_area(w, f, (0, 1, 0)) == pytest.approx(0.0, abs=1e-14)
    assert not is_complex_analytic(w, f, (1, 0, 0)).is_complex


def test_wavy_torus_polynomial():
    p = compute_polynomial(wavy_torus(m=2, epsilon=0.05), standard_frame(2))
    assert p.coeffs[(1, 0, 0)] == pytest.approx(1.0, abs=1e-12)
    assert p.coeffs[(0, 1, 0)] == pytest.approx(0.0, abs=1e-12)


def test_seam_check_catches_nonperiodic_map():
    bad = wavy_torus()

    def jac(u):
        j = bad.jacobian(u)
        j[:, 2, 0] += u[:, 0]
        return j

    from trisym.cycle_geom import ParametrizedCycle

    broken = ParametrizedCycle(1, 4, bad.position, jac, (8,))
    with pytest.raises(InvalidArgumentError):
        broken.check_seam()


def test_build_preset_dispatch():
    assert build_preset("wavy-torus", 2, {"epsilon": 0.02}).dim == 8
    with pytest.raises(InvalidArgumentError):
        build_preset("moebius", 1, {})
    with pytest.raises(InvalidArgumentError):
        build_preset("flat-embed", 1, {})
