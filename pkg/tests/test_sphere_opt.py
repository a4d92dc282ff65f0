import math

import numpy as np
import pytest

from trisym.errors import ConstantPolynomialError
from trisym.sphere_grid import angular_distance, fibonacci_sphere, random_rotation
from trisym.sphere_opt import DEGENERATE, MAXIMUM, MINIMUM, SADDLE, critical_points, global_maxima
from trisym.trisym_poly import TrisymPolynomial, evaluate

P_A = TrisymPolynomial.from_dict(1, {(1, 0, 0): 1})
P_AB = TrisymPolynomial.from_dict(1, {(1, 0, 0): 1, (0, 1, 0): 1})
P_SPHERE = TrisymPolynomial.from_dict(2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})
P_EQUATOR = TrisymPolynomial.from_dict(2, {(0, 2, 0): 1, (0, 0, 2): 1})


def _check_lagrange(poly, pts):
    for cp in pts:
        g = poly.gradient(cp.direction)[0]
        assert np.linalg.norm(g - cp.multiplier * cp.direction) < 1e-9 * (1 + abs(cp.multiplier))
        assert abs(np.linalg.norm(cp.direction) - 1) < 1e-12


def test_linear_critical_points():
    pts = critical_points(P_A)
    assert len(pts) == 2
    top, bottom = pts
    assert np.allclose(top.direction, [1, 0, 0], atol=1e-12) and top.kind == MAXIMUM
    assert top.value == pytest.approx(1.0)
    assert np.allclose(bottom.direction, [-1, 0, 0], atol=1e-12) and bottom.kind == MINIMUM
    _check_lagrange(P_A, pts)


def test_diagonal_critical_points():
    pts = critical_points(P_AB)
    assert len(pts) == 2
    assert np.allclose(pts[0].direction, np.array([1, 1, 0]) / math.sqrt(2), atol=1e-12)
    assert pts[0].value == pytest.approx(math.sqrt(2))
    assert np.allclose(pts[1].direction, -np.array([1, 1, 0]) / math.sqrt(2), atol=1e-12)


def test_constant_signal():
    with pytest.raises(ConstantPolynomialError):
        critical_points(P_SPHERE)
    m = global_maxima(P_SPHERE)
    assert m.constant and m.points == [] and m.max_value == pytest.approx(1.0)


def test_equator_locus():
    m = global_maxima(P_EQUATOR)
    assert m.degenerate_locus_flag
    assert m.max_value == pytest.approx(1.0, abs=1e-12)
    for p in m.points:
        assert abs(p.direction[0]) < 1e-9
        assert p.kind == DEGENERATE


def test_saddles_and_kinds():
    # a^2 - b^2: maxima at +-a, minima at +-b, saddles at +-c
    p = TrisymPolynomial.from_dict(2, {(2, 0, 0): 1, (0, 2, 0): -1})
    kinds = {}
    for cp in critical_points(p):
        axis = int(np.argmax(np.abs(cp.direction)))
        kinds.setdefault(axis, set()).add(cp.kind)
    assert kinds == {0: {MAXIMUM}, 1: {MINIMUM}, 2: {SADDLE}}


def _random_poly(rng, n):
    return TrisymPolynomial.from_dict(
        n, {e: rng.standard_normal() for e in TrisymPolynomial.from_dict(n, {}).coeffs}
    )


@pytest.mark.parametrize("n", [2, 3, 4])
def test_random_polys_invariants(n):
    rng = np.random.default_rng(n)
    for _ in range(5):
        p = _random_poly(rng, n)
        pts = critical_points(p)
        _check_lagrange(p, pts)
        # antipodal symmetry
        for cp in pts:
            partner = [q for q in pts if angular_distance(q.direction, -cp.direction) < 1e-6]
            assert len(partner) == 1
            assert partner[0].value == pytest.approx((-1) ** n * cp.value, abs=1e-10)
        m = global_maxima(p)
        grid = evaluate(p, fibonacci_sphere(4096))
        assert grid.max() <= m.max_value + 1e-9


def test_rotation_equivariance_of_maxima():
    rng = np.random.default_rng(99)
    for _ in range(5):
        p = _random_poly(rng, 3)
        R = random_rotation(rng)
        m = global_maxima(p)
        mr = global_maxima(p.compose(R))
        assert len(m.points) == len(mr.points)
        for pt in m.points:
            target = R @ pt.direction
            assert min(angular_distance(target, q.direction) for q in mr.points) < 1e-6


def test_sorted_output_is_deterministic():
    rng = np.random.default_rng(5)
    p = _random_poly(rng, 4)
    a = critical_points(p)
    b = critical_points(p)
    assert [(x.value, tuple(x.direction)) for x in a] == [(x.value, tuple(x.direction)) for x in b]
    assert all(a[i].value >= a[i + 1].value for i in range(len(a) - 1))
