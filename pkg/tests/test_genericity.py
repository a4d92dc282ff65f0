import math

import numpy as np
import pytest

from trisym.cycle_geom import LinearCycle, riemannian_area, wirtinger_gap
from trisym.errors import InvalidArgumentError
from trisym.genericity import (
    COMPLEX_ONLY_AT,
    NOT_COMPLEX_ANYWHERE,
    TRIANALYTIC,
    GenericityReport,
    Tolerances,
    classify_structure,
    nongeneric_set,
    trianalyticity_verdict,
)
from trisym.hk_core import scale_metric, standard_frame
from trisym.presets import wavy_torus
from trisym.sphere_grid import angular_distance

E4, E8 = np.eye(4), np.eye(8)


def three_lines():
    return {
        "Z1": LinearCycle([E4[0], E4[1]]),
        "Z2": LinearCycle([E4[0], E4[2]]),
        "Z3": LinearCycle([E4[0], E4[3]]),
    }


def test_canonical_verdicts(canonical):
    z1, f1 = canonical["Z1"]
    v = trianalyticity_verdict(z1, f1, cycle_id="Z1")
    assert v.classification == COMPLEX_ONLY_AT
    assert len(v.directions) == 1 and angular_distance(v.directions[0], (1, 0, 0)) < 1e-9

    q, f2 = canonical["Q"]
    v = trianalyticity_verdict(q, f2)
    assert v.classification == TRIANALYTIC and v.constant

    p, _ = canonical["P"]
    v = trianalyticity_verdict(p, f2)
    assert v.classification == NOT_COMPLEX_ANYWHERE
    assert all(c == 0.0 for c in v.polynomial.coeffs.values())
    assert min(v.axis_residuals.values()) > 0.5


def test_wavy_torus_is_nowhere_complex():
    f = standard_frame(1)
    v = trianalyticity_verdict(wavy_torus(), f)
    assert v.classification == NOT_COMPLEX_ANYWHERE
    assert all(g > 1e-3 for g in v.gaps)


def test_reversed_orientation_maximum_moves_to_minus_I(t4):
    v = trianalyticity_verdict(LinearCycle([E4[1], E4[0]]), t4)
    assert v.classification == COMPLEX_ONLY_AT
    assert angular_distance(v.directions[0], (-1, 0, 0)) < 1e-9


def test_maximum_at_complex_structure():
    rng = np.random.default_rng(17)
    f = standard_frame(2)
    from trisym.hk_core import induced_structure

    for _ in range(10):
        x = rng.standard_normal(3)
        L = induced_structure(f, x / np.linalg.norm(x))
        v1, v2 = rng.standard_normal((2, 8))
        c = LinearCycle([v1, L.matrix @ v1, v2, L.matrix @ v2])
        v = trianalyticity_verdict(c, f)
        assert v.classification == COMPLEX_ONLY_AT
        # n even: the conjugate structure -L is an equal maximum
        assert len(v.directions) == 2
        assert min(angular_distance(d, L.direction) for d in v.directions) < 1e-6
        assert min(angular_distance(d, -L.direction) for d in v.directions) < 1e-6
        assert v.maxima.max_value == pytest.approx(riemannian_area(c, f), abs=1e-9)


def test_verdicts_stable_under_metric_scaling(canonical):
    for cyc, f in canonical.values():
        a = trianalyticity_verdict(cyc, f)
        b = trianalyticity_verdict(cyc, scale_metric(f, 4.0))
        assert a.classification == b.classification
        assert b.area == pytest.approx(4.0**cyc.n * a.area, rel=1e-12)


def test_odd_dimension_never_trianalytic():
    rng = np.random.default_rng(23)
    f = standard_frame(2)
    for _ in range(10):
        v = trianalyticity_verdict(LinearCycle(rng.standard_normal((2, 8))), f)
        assert v.classification != TRIANALYTIC


def test_three_line_report(t4):
    rep = nongeneric_set(three_lines(), t4)
    assert rep.suite == ["Z1", "Z2", "Z3"]
    dirs = [pt.direction for pt in rep.nongeneric_points]
    assert len(dirs) == 3
    for target, witness in [((1, 0, 0), "Z1"), ((0, 1, 0), "Z2"), ((0, 0, 1), "Z3")]:
        cls = classify_structure(target, rep)
        assert not cls.generic and cls.witness == witness
    assert classify_structure(np.ones(3) / math.sqrt(3), rep).generic


def test_trianalytic_suite_is_generic_everywhere(canonical):
    q, f = canonical["Q"]
    rep = nongeneric_set({"Q": q}, f)
    assert rep.nongeneric_points == []
    assert classify_structure((1, 0, 0), rep).generic


def test_mixed_suite_lists_only_line(t8):
    rep = nongeneric_set({"Z1": LinearCycle([E8[0], E8[1]]), "Q": LinearCycle(E8[:4])}, t8)
    assert len(rep.nongeneric_points) == 1
    assert angular_distance(rep.nongeneric_points[0].direction, (1, 0, 0)) < 1e-9
    assert not classify_structure((0, 1, 0), nongeneric_set({"Z1": LinearCycle([E8[0], E8[1]])}, t8)).witness


def test_duplicate_directions_listed_once(t4):
    rep = nongeneric_set({"A": LinearCycle([E4[0], E4[1]]), "B": LinearCycle([2 * E4[0], E4[1]])}, t4)
    assert len(rep.nongeneric_points) == 1 and rep.nongeneric_points[0].witness == "A"


def test_empty_report_and_empty_suite(t4):
    empty = GenericityReport([], [], Tolerances())
    assert classify_structure((0, 0, 1), empty).generic
    with pytest.raises(InvalidArgumentError):
        nongeneric_set({}, t4)


def test_generic_directions_give_positive_gaps(t4):
    rng = np.random.default_rng(31)
    cycles = three_lines()
    rep = nongeneric_set(cycles, t4)
    for _ in range(20):
        x = rng.standard_normal(3)
        x /= np.linalg.norm(x)
        if classify_structure(x, rep).generic:
            for c in cycles.values():
                assert wirtinger_gap(c, t4, x) > 1e-9


def test_tolerances_from_mapping():
    t = Tolerances.from_mapping({"tangent": "1e-7"})
    assert t.tangent == 1e-7
    with pytest.raises(InvalidArgumentError):
        Tolerances.from_mapping({"bogus": 1})
