from math import pi

import numpy as np
import pytest

from qmemory.config import TAU_OPT
from qmemory.controllers.sweep_controller import landmark_crossing, locate_crossings, sweep_w_family
from qmemory.controllers.threshold_controller import find_werner_threshold, werner_conditional_entropy
from qmemory.errors import ParamOutOfRange
from qmemory.schemas.claim_schema import SweepPoint


def synthetic(values, xs):
    return [
        SweepPoint(theta_over_pi=x, s_a_given_b=v, d_b_given_a=0.0, d_c_given_a=0.0, ddb=0.0, ddc=0.0)
        for x, v in zip(xs, values)
    ]


class TestSweep:
    @pytest.fixture(scope="class")
    def coarse(self):
        return sweep_w_family(pi / 4, 16)

    def test_grid(self, coarse):
        xs = [p.theta_over_pi for p in coarse]
        assert len(coarse) == 16
        assert xs[0] == 0.0 and xs[-1] == 1.0
        assert all(b > a for a, b in zip(xs, xs[1:]))

    def test_product_endpoint(self, coarse):
        assert abs(coarse[0].d_b_given_a) <= TAU_OPT
        assert abs(coarse[0].d_c_given_a) <= TAU_OPT
        assert abs(coarse[0].s_a_given_b) <= 1e-9

    def test_discord_difference_is_conditional_entropy(self, coarse):
        for p in coarse:
            assert abs(p.s_a_given_b - (p.d_c_given_a - p.d_b_given_a)) <= TAU_OPT, p

    def test_too_few_points(self):
        with pytest.raises(ParamOutOfRange):
            sweep_w_family(pi / 4, 8)

    @pytest.mark.slow
    def test_landmark(self):
        points = sweep_w_family(pi / 4, 512)
        landmark = landmark_crossing(points)
        assert landmark is not None
        assert landmark.lower <= landmark.estimate <= landmark.upper
        assert abs(landmark.estimate - 0.182) <= 0.005

        xs = np.array([p.theta_over_pi for p in points])
        s = np.array([p.s_a_given_b for p in points])
        rising = xs <= 0.177
        falling = xs >= 0.823
        assert np.all(np.diff(s[rising]) >= -1e-12)
        assert np.all(np.diff(s[falling]) <= 1e-12)


class TestCrossings:
    def test_single_peak(self):
        xs = np.linspace(0, 1, 41)
        brackets = locate_crossings(synthetic(-(xs - 0.3) ** 2, xs))
        assert len(brackets) == 1
        assert brackets[0].direction == "+-"
        assert brackets[0].lower <= 0.3 <= brackets[0].upper
        assert brackets[0].estimate == pytest.approx(0.3, abs=0.025)

    def test_landmark_skips_valleys(self):
        xs = np.linspace(0, 1, 101)
        brackets = locate_crossings(synthetic(np.cos(2 * pi * xs), xs))
        assert brackets[0].direction == "-+"
        assert landmark_crossing(synthetic(np.cos(2 * pi * xs), xs)) is None

    def test_short_input(self):
        assert locate_crossings(synthetic([0.0, 1.0], [0.0, 1.0])) == []


class TestWernerThreshold:
    def test_sign_change(self):
        assert werner_conditional_entropy(0.5) > 0
        assert werner_conditional_entropy(1.0) == pytest.approx(-1.0)

    def test_default(self):
        result = find_werner_threshold()
        assert abs(result.r_star - 0.7476) <= 5e-4
        assert result.iterations > 0

    def test_tight_tolerance(self):
        result = find_werner_threshold(tol=1e-8)
        assert result.residual <= 1e-7
        assert abs(werner_conditional_entropy(result.r_star)) <= 1e-7

    def test_rejects_bad_tolerance(self):
        with pytest.raises(ParamOutOfRange):
            find_werner_threshold(tol=0.0)
