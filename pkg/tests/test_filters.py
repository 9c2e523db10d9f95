import math

import numpy as np
import pytest

from depthstroke.errors import ValidationError
from depthstroke.filters import (
    FisheyeMode,
    FisheyeParams,
    HysteresisParams,
    LowPassParams,
    SigmoidParams,
    WindowParams,
    fisheye,
    hysteresis,
    low_pass,
    median_filter,
    moving_average,
    sigmoid_gate,
)

# the three tuned fisheye settings used by the default chains
FISHEYE_SETTINGS = [
    FisheyeParams(levels=12, outer_radius=600, inner_radius=120, scale=1 / 7,
                  displacement=0.65),
    FisheyeParams(levels=10, outer_radius=600, inner_radius=120, scale=1 / 6,
                  displacement=0.0),
    FisheyeParams(levels=10, outer_radius=600, inner_radius=120, scale=1 / 5,
                  displacement=0.0),
]

SIGMOID_SETTINGS = [
    SigmoidParams(contrast=2.5, threshold=0.85),
    SigmoidParams(contrast=1.0, threshold=0.3),
]


def random_profiles(seed, count=20, max_len=200):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield rng.uniform(0, 1, int(rng.integers(1, max_len)))


class TestParams:
    def test_alpha_bounds(self):
        with pytest.raises(ValidationError):
            LowPassParams(alpha=0.0)
        with pytest.raises(ValidationError):
            LowPassParams(alpha=1.5)

    def test_band_bounds(self):
        with pytest.raises(ValidationError):
            HysteresisParams(band=-0.1)
        with pytest.raises(ValidationError):
            HysteresisParams(band=1.0)

    def test_window_must_be_odd(self):
        with pytest.raises(ValidationError):
            WindowParams(width=4)
        with pytest.raises(ValidationError):
            WindowParams(width=0)

    def test_fisheye_radii(self):
        with pytest.raises(ValidationError):
            FisheyeParams(outer_radius=100, inner_radius=120)

    def test_discrete_needs_levels(self):
        with pytest.raises(ValidationError):
            FisheyeParams(levels=1, mode=FisheyeMode.DISCRETE)


class TestLowPass:
    def test_identity_at_alpha_one(self):
        x = np.array([0.1, 0.9, 0.4])
        assert low_pass(x, LowPassParams(alpha=1.0)).tolist() == x.tolist()

    def test_constant_fixed_point(self):
        out = low_pass([0.3] * 10, LowPassParams(alpha=0.2))
        assert np.allclose(out, 0.3, atol=1e-12)

    def test_recurrence(self):
        out = low_pass([0.0, 1.0, 1.0], LowPassParams(alpha=0.5))
        assert np.allclose(out, [0.0, 0.5, 0.75], atol=1e-15)

    def test_first_sample_passes_through(self):
        out = low_pass([0.7, 0.1], LowPassParams(alpha=0.075))
        assert out[0] == 0.7


class TestHysteresis:
    def test_zero_band_identity(self):
        x = np.array([0.2, 0.8, 0.1])
        assert hysteresis(x, HysteresisParams(band=0.0)).tolist() == x.tolist()

    def test_holds_inside_band(self):
        out = hysteresis([0.5, 0.55, 0.52, 0.5], HysteresisParams(band=0.1))
        assert out.tolist() == [0.5, 0.5, 0.5, 0.5]

    def test_trails_outside_band(self):
        out = hysteresis([0.5, 0.8], HysteresisParams(band=0.1))
        assert np.allclose(out, [0.5, 0.7], atol=1e-15)

    def test_trails_downward(self):
        out = hysteresis([0.8, 0.4], HysteresisParams(band=0.1))
        assert np.allclose(out, [0.8, 0.5], atol=1e-15)


class TestMedian:
    def test_width_one_identity(self):
        x = np.array([0.4, 0.2, 0.9])
        assert median_filter(x, WindowParams(1)).tolist() == x.tolist()

    def test_removes_single_spike(self):
        out = median_filter([0.1, 0.1, 0.9, 0.1, 0.1], WindowParams(3))
        assert out.tolist() == [0.1] * 5

    def test_truncated_boundary_windows(self):
        # boundary windows of two values take the mean of the pair
        out = median_filter([0.1, 0.4, 0.2, 0.5], WindowParams(3))
        assert np.allclose(out, [0.25, 0.2, 0.4, 0.35], atol=1e-15)


class TestMovingAverage:
    def test_width_one_identity(self):
        x = np.array([0.4, 0.2, 0.9])
        assert moving_average(x, WindowParams(1)).tolist() == x.tolist()

    def test_constant_preserved(self):
        out = moving_average([0.6] * 8, WindowParams(3))
        assert np.allclose(out, 0.6, atol=1e-12)

    def test_window_means(self):
        out = moving_average([0.0, 0.3, 0.0], WindowParams(3))
        assert np.allclose(out, [0.15, 0.1, 0.15], atol=1e-15)


class TestFisheye:
    @pytest.mark.parametrize("params", FISHEYE_SETTINGS)
    def test_fixed_point_at_focus(self, params):
        out = fisheye(np.array([params.displacement]), params)
        assert out[0] == pytest.approx(params.displacement, abs=1e-12)

    def test_closed_form_at_full_pressure(self):
        params = FisheyeParams(levels=10, outer_radius=600, inner_radius=120,
                               scale=1 / 6, displacement=0.0)
        out = fisheye(np.array([1.0]), params)
        expected = 1 / 6 + (5 / 6) * math.exp(-25.0)
        assert out[0] == pytest.approx(expected, abs=1e-12)
        assert out[0] == pytest.approx(0.1667, abs=1e-4)

    @pytest.mark.parametrize("params", FISHEYE_SETTINGS)
    def test_contraction_toward_focus(self, params):
        grid = np.linspace(0, 1, 1000)
        out = fisheye(grid, params)
        assert np.all(np.abs(out - params.displacement)
                      <= np.abs(grid - params.displacement) + 1e-12)

    def test_discrete_quantization_ties_down(self):
        params = FisheyeParams(levels=12, outer_radius=600, inner_radius=120,
                               scale=1.0, displacement=0.5, mode=FisheyeMode.DISCRETE)
        # scale 1 and focus 0.5 makes the continuous stage an identity at 0.5,
        # leaving the pure quantization: 0.5*11 = 5.5 is a tie, broken down
        out = fisheye(np.array([0.5]), params)
        assert out[0] == pytest.approx(5 / 11, abs=1e-12)

    def test_discrete_values_on_grid(self):
        params = FisheyeParams(levels=12, outer_radius=600, inner_radius=120,
                               scale=1 / 7, displacement=0.65, mode=FisheyeMode.DISCRETE)
        out = fisheye(np.linspace(0, 1, 500), params)
        steps = out * 11
        assert np.allclose(steps, np.round(steps), atol=1e-9)


class TestSigmoid:
    @pytest.mark.parametrize("params", SIGMOID_SETTINGS)
    def test_midpoint_at_threshold(self, params):
        out = sigmoid_gate(np.array([params.threshold]), params)
        assert out[0] == pytest.approx(0.5, abs=1e-12)

    def test_high_pressure_value(self):
        out = sigmoid_gate(np.array([1.0]), SigmoidParams(contrast=2.5, threshold=0.85))
        assert out[0] == pytest.approx(1 / (1 + math.exp(-4.5)), abs=1e-12)
        assert out[0] == pytest.approx(0.98901, abs=1e-5)

    def test_low_range_flattened(self):
        out = sigmoid_gate(np.array([0.0]), SigmoidParams(contrast=2.5, threshold=0.85))
        assert 0.0 < out[0] < 1e-11
        assert out[0] == pytest.approx(math.exp(-25.5), rel=1e-6)

    @pytest.mark.parametrize("params", SIGMOID_SETTINGS)
    def test_strictly_monotone(self, params):
        grid = np.linspace(0, 1, 1000)
        out = sigmoid_gate(grid, params)
        assert np.all(np.diff(out) > 0)

    def test_outputs_strictly_inside_unit_interval(self):
        out = sigmoid_gate(np.linspace(0, 1, 100), SigmoidParams(contrast=2.5, threshold=0.85))
        assert np.all(out > 0) and np.all(out < 1)


class TestSharedProperties:
    def test_range_bounded_filters(self):
        cases = [
            lambda x: low_pass(x, LowPassParams(alpha=0.3)),
            lambda x: hysteresis(x, HysteresisParams(band=0.07)),
            lambda x: median_filter(x, WindowParams(5)),
            lambda x: moving_average(x, WindowParams(9)),
        ]
        for profile in random_profiles(11):
            for func in cases:
                out = func(profile)
                assert out.min() >= profile.min() - 1e-12
                assert out.max() <= profile.max() + 1e-12

    def test_length_preserving_and_deterministic(self):
        params_cases = [
            lambda x: low_pass(x, LowPassParams(alpha=0.1)),
            lambda x: hysteresis(x, HysteresisParams(band=0.05)),
            lambda x: median_filter(x, WindowParams(5)),
            lambda x: moving_average(x, WindowParams(9)),
            lambda x: fisheye(x, FISHEYE_SETTINGS[0]),
            lambda x: sigmoid_gate(x, SIGMOID_SETTINGS[0]),
        ]
        for profile in random_profiles(12, count=10):
            for func in params_cases:
                a = func(profile)
                b = func(profile)
                assert a.size == profile.size
                assert (a == b).all()

    def test_inputs_not_mutated(self):
        profile = np.array([0.2, 0.9, 0.4, 0.6])
        snapshot = profile.copy()
        low_pass(profile, LowPassParams(alpha=0.5))
        hysteresis(profile, HysteresisParams(band=0.1))
        median_filter(profile, WindowParams(3))
        moving_average(profile, WindowParams(3))
        fisheye(profile, FISHEYE_SETTINGS[0])
        sigmoid_gate(profile, SIGMOID_SETTINGS[0])
        assert (profile == snapshot).all()
