import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classicality.fock import Thermal, build_state
from classicality.gaussian import GaussianParams, gaussian_F
from classicality.measures import classicality_numeric, fidelity_fn
from classicality.optimize import NonFiniteObjective, OptimConfig, golden_section_max, maximize_1d, maximize_2d


def test_quadratic_1d():
    best = maximize_1d(lambda x: -((x - 0.3) ** 2), (0.0, 1.0))
    assert best.x == pytest.approx(0.3, abs=1e-8)
    assert best.value == pytest.approx(0.0, abs=1e-16)


def test_gaussian_F_argmax():
    params = GaussianParams.from_mu_T(0.5, 2.0)
    best = maximize_1d(lambda e: gaussian_F(params, e), (0.0, 0.999))
    assert best.x == pytest.approx(1 / 3, abs=1e-8)


def test_fock_profile_argmax():
    best = maximize_1d(lambda e: fidelity_fn(3, e, 0.0), (0.0, 0.99))
    assert best.x == pytest.approx(math.sqrt(0.75), abs=1e-6)


@pytest.mark.parametrize("bounds,expected", [((0.0, 1.0), 1.0), ((-2.0, 5.0), -2.0)])
def test_boundary_maximum_is_exact(bounds, expected):
    best = maximize_1d(lambda x: -abs(x - expected) - 0.1 * (x - expected) ** 2, bounds)
    assert best.x == expected


@settings(max_examples=40)
@given(st.floats(-5, 5), st.floats(0.5, 4.0), st.floats(0.1, 10))
def test_unimodal_accuracy(c, width, scale):
    lo, hi = c - width, c + 0.7 * width
    peak = c - 0.2 * width
    best = maximize_1d(lambda x: 1.0 - scale * (x - peak) ** 2, (lo, hi))
    assert lo <= best.x <= hi
    assert abs(best.x - peak) < 1e-8 * (hi - lo)


def test_quadratic_2d():
    best = maximize_2d(lambda x, y: -(x * x) - y * y, ((-1, 1), (-1, 1)))
    assert (best.x, best.y) == pytest.approx((0.0, 0.0), abs=1e-8)
    assert len(best.local_maxima) == 1


def test_two_bumps_reported():
    def f(x, y):
        return math.exp(-((x - 0.2) ** 2 + (y - 0.7) ** 2) / 0.01) + 0.6 * math.exp(-((x - 0.8) ** 2 + (y - 0.2) ** 2) / 0.01)

    best = maximize_2d(f, ((0, 1), (0, 1)))
    assert (best.x, best.y) == pytest.approx((0.2, 0.7), abs=1e-6)
    assert len(best.local_maxima) == 2
    second = best.local_maxima[1]
    assert (second.x, second.y) == pytest.approx((0.8, 0.2), abs=1e-6)
    assert second.value < best.value


def test_fock3_surface_global_peak():
    best = maximize_2d(lambda e, r: fidelity_fn(3, e, r), ((0.0, 0.99), (0.0, 16.0)))
    assert best.x == pytest.approx(math.sqrt(0.75), abs=1e-6)
    assert best.y == pytest.approx(0.0, abs=1e-8)
    assert best.value == pytest.approx(math.sqrt(27 / 256), abs=1e-12)


def test_thermal_self_fidelity_peak():
    res = classicality_numeric(build_state(Thermal(0.4)))
    assert res.argmax_eta == pytest.approx(0.4, abs=1e-6)
    assert res.argmax_alpha_sq == pytest.approx(0.0, abs=1e-6)
    assert res.value == pytest.approx(1.0, abs=1e-6)


def test_refinement_never_worse_than_grid():
    # Sharp spike between grid points: refinement must not lose the best sample.
    def f(x):
        return 1.0 if abs(x - 0.5) < 1e-3 else -abs(x - 0.9)

    cfg = OptimConfig(grid_points_per_axis=9)
    best = maximize_1d(f, (0.0, 1.0), cfg)
    assert best.value >= 1.0


def test_non_finite_objective():
    with pytest.raises(NonFiniteObjective) as info:
        maximize_1d(lambda x: math.nan if x > 0.5 else x, (0.0, 1.0))
    assert info.value.point > 0.5
    with pytest.raises(NonFiniteObjective) as info:
        maximize_2d(lambda x, y: math.inf, ((0, 1), (0, 1)))
    assert info.value.point == (0.0, 0.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(grid_points_per_axis=4),
        dict(refine_tol=0.0),
        dict(max_refine_iters=0),
        dict(bounds=((1.0, 1.0),)),
        dict(bounds=((0.0, math.inf),)),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        OptimConfig(**kwargs)


def test_degenerate_bounds_rejected():
    with pytest.raises(ValueError):
        maximize_1d(lambda x: x, (1.0, 0.0))


def test_golden_section_returns_bracket_width():
    x, fx, width = golden_section_max(lambda t: -((t - 0.25) ** 2), 0.0, 1.0, 1e-9)
    assert width <= 1e-9
    assert x == pytest.approx(0.25, abs=1e-9)


def test_bit_identical_reruns():
    def f(e, r):
        return fidelity_fn(2, e, r)

    a = maximize_2d(f, ((0.0, 0.99), (0.0, 12.0)))
    b = maximize_2d(f, ((0.0, 0.99), (0.0, 12.0)))
    assert a == b
