import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from funcspace.core import (Domain, GridFunction, ProfileFunction,
                            RadialFunction, StepFunction, ball_volume,
                            distribution_function, lp_norm, sphere_area)
from funcspace.errors import FuncspaceError


def test_domain_measures():
    assert Domain.torus().total_measure == pytest.approx(2 * math.pi)
    assert Domain.interval().total_measure == 1.0
    assert Domain.square().total_measure == 1.0
    assert math.isinf(Domain.radial(3).total_measure)
    assert math.isinf(Domain.half_line().total_measure)


def test_ball_and_sphere():
    assert ball_volume(1) == pytest.approx(2.0)
    assert ball_volume(2) == pytest.approx(math.pi)
    assert ball_volume(3) == pytest.approx(4.0 * math.pi / 3.0)
    assert sphere_area(2) == pytest.approx(2 * math.pi)
    assert sphere_area(3) == pytest.approx(4 * math.pi)


def test_distribution_indicator():
    f = StepFunction([0.3], [1.0])
    assert distribution_function(f, 0.5) == pytest.approx(0.3)
    assert distribution_function(f, 1.0) == 0.0


def test_distribution_radial_cone():
    cone = RadialFunction(1, lambda r: np.maximum(1 - np.asarray(r, float), 0),
                          monotone=True, support_radius=1.0)
    # the level set {g > 1/2} is (-1/2, 1/2), measure 1
    assert distribution_function(cone, 0.5) == pytest.approx(1.0, abs=1e-10)


def test_distribution_monotone_in_lambda():
    f = StepFunction([0.2, 0.7, 1.4], [3.0, 1.0, 0.2])
    lams = np.linspace(0, 4, 33)
    vals = [distribution_function(f, l) for l in lams]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_lp_norm_examples():
    assert lp_norm(StepFunction([1.0], [1.0]), 2) == pytest.approx(1.0)
    assert lp_norm(StepFunction([1.0 / 9.0], [3.0]), 2) == pytest.approx(1.0)
    gauss2 = RadialFunction(2, lambda r: np.exp(-np.asarray(r, float) ** 2),
                            monotone=True, decay_scale=1.0)
    assert lp_norm(gauss2, 1) == pytest.approx(math.pi, rel=1e-5)


def test_lp_rejects_small_p():
    with pytest.raises(FuncspaceError):
        lp_norm(StepFunction([1.0], [1.0]), 0.5)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-50.0, max_value=50.0,
                 allow_nan=False, allow_infinity=False),
       st.integers(min_value=1, max_value=6),
       st.floats(min_value=1.0, max_value=8.0))
def test_lp_homogeneity(c, n, p):
    edges = np.cumsum(np.linspace(0.1, 0.4, n))
    values = np.linspace(0.2, 2.0, n)
    f = StepFunction(edges, values)
    g = StepFunction(edges, np.abs(c) * values)
    assert lp_norm(g, p) == pytest.approx(abs(c) * lp_norm(f, p), rel=1e-12)


def test_grid_lp_resolution_convergence():
    # doubling the resolution moves the norm of a smooth function < 1%
    def build(n):
        x = (np.arange(n) + 0.5) / n
        return GridFunction(Domain.interval(), np.sin(2 * math.pi * x) + 1.2)
    v1 = lp_norm(build(2 ** 16), 2)
    v2 = lp_norm(build(2 ** 17), 2)
    assert abs(v1 - v2) / v2 < 0.01


def test_huge_exponent_lp_logspace():
    f = StepFunction([0.5, 1.0], [2.0, 1.0])
    p = 8192.0
    # exact: (0.5 * 2^p + 0.5)^{1/p} = 2 * (0.5 + tiny)^{1/p}
    expected = 2.0 * 0.5 ** (1.0 / p)
    assert lp_norm(f, p) == pytest.approx(expected, rel=1e-10)


def test_profile_function_distribution():
    ramp = ProfileFunction(lambda u: np.asarray(u, float), 1.0,
                           pieces=((0.0, 1.0, True),), sup_value=1.0)
    assert distribution_function(ramp, 0.25) == pytest.approx(0.75, abs=1e-9)


def test_step_validation():
    with pytest.raises(FuncspaceError):
        StepFunction([1.0, 0.5], [1.0, 1.0])
    with pytest.raises(FuncspaceError):
        StepFunction([1.0], [-1.0])
    with pytest.raises(FuncspaceError):
        StepFunction([0.5, 1.0], [1.0, 2.0], monotone=True)
