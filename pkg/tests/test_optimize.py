import math

import numpy as np
import pytest

from tactsqueeze import optimize
from tactsqueeze.errors import DomainError, NonFiniteObjectiveError


class TestMaximizeScalar:
    def test_quadratic(self):
        out = optimize.maximize_scalar(lambda x: -(x - 0.3) ** 2, 0.0, 1.0, 1e-10)
        assert abs(out.argmax - 0.3) < 1e-9
        assert not out.at_boundary

    def test_constant_reports_left_boundary(self):
        out = optimize.maximize_scalar(lambda x: 1.0, 0.0, 1.0, 1e-10)
        assert out.at_boundary
        assert abs(out.argmax - 0.0) < 1e-9

    def test_monotone_reports_right_boundary(self):
        out = optimize.maximize_scalar(lambda x: x, 0.0, 1.0, 1e-10)
        assert out.at_boundary
        assert out.argmax == pytest.approx(1.0, abs=1e-9)

    def test_value_beats_endpoints(self):
        out = optimize.maximize_scalar(lambda x: math.sin(x), 0.0, 3.0, 1e-10)
        assert out.value >= math.sin(0.0) - 1e-12
        assert out.value >= math.sin(3.0) - 1e-12

    def test_nonfinite_objective_carries_abscissa(self):
        with pytest.raises(NonFiniteObjectiveError) as err:
            optimize.maximize_scalar(lambda x: math.inf if x > 0.5 else x,
                                     0.0, 1.0, 1e-6)
        assert err.value.abscissa is not None


class TestOptimalTheta:
    @pytest.mark.parametrize("alpha", [0.2, 0.5, 0.99, 1.0])
    def test_boundary_below_threshold(self, alpha):
        out = optimize.optimal_theta(alpha, 1.0)
        assert out.at_boundary
        assert out.argmax == 0.0

    def test_reference_point_against_brute_force(self):
        alpha = 10.0
        out = optimize.optimal_theta(alpha, 1.0)
        # independent oracle: dense grid on the gain function
        grid = np.arange(0.0, 3.0, 1e-5)
        gains = grid * (alpha * np.exp(-grid) - 1.0)
        brute = grid[np.argmax(gains)]
        assert abs(out.argmax - brute) < 2e-5
        assert out.argmax == pytest.approx(0.7815, abs=1e-4)

    def test_strong_limit_near_unity(self):
        out = optimize.optimal_theta(1000.0, 1.0)
        assert abs(out.argmax - 1.0) <= 0.01

    def test_stationarity_residual(self):
        for alpha in (1.5, 5.0, 50.0):
            out = optimize.optimal_theta(alpha, 1.0)
            theta = out.argmax
            assert abs(alpha * math.exp(-theta) * (1 - theta) - 1) <= 1e-8

    def test_gain_positive_above_threshold(self):
        for alpha in (1.01, 2.0, 10.0):
            out = optimize.optimal_theta(alpha, 1.0)
            assert out.value > 0.0
            assert not out.at_boundary

    def test_infinite_alpha_rejected(self):
        with pytest.raises(DomainError):
            optimize.optimal_theta(None, 1.0)
        with pytest.raises(DomainError):
            optimize.optimal_theta(math.inf, 1.0)


class TestOptimalU:
    def test_boundary_at_balanced_alpha(self):
        out = optimize.optimal_u(math.e)
        assert out.at_boundary
        assert out.argmax == 0.0

    @pytest.mark.parametrize("alpha", [5.0, 10.0, 50.0, 200.0])
    def test_matches_closed_form(self, alpha):
        a = alpha * math.exp(-1)
        out = optimize.optimal_u(alpha)
        assert abs(out.argmax - (a - 1) / a) <= 1e-6

    def test_reference_values(self):
        assert optimize.optimal_u(10.0).argmax == pytest.approx(0.728189, abs=2e-5)
        assert optimize.optimal_u(50.0).argmax == pytest.approx(0.945634, abs=2e-6)

    def test_determinism(self):
        a = optimize.optimal_u(37.5)
        b = optimize.optimal_u(37.5)
        assert a == b


class TestOptimalSplitFull:
    def test_no_squeezing_below_threshold(self):
        gamma, n, p = 0.2, 100, 1.0
        j = 4 * gamma * 0.5 / (n * p)  # alpha = 0.5
        out = optimize.optimal_split_full(j, n, p, gamma, tau_budget=20.0)
        t_sq, _ = out.argmax
        assert t_sq == pytest.approx(0.0, abs=1e-6)

    def test_strong_squeezing_window_near_unity(self):
        gamma, n, p = 0.25, 200, 0.9
        j = 4 * gamma * 50.0 / (n * p)  # alpha = 50
        out = optimize.optimal_split_full(j, n, p, gamma, tau_budget=4.0)
        assert 0.8 <= out.diagnostics["four_gamma_window"] <= 1.2

    def test_rate_rescaling_halves_optimum(self):
        n, p, alpha = 150, 1.0, 20.0
        gamma = 0.2
        j = 4 * gamma * alpha / (n * p)
        out1 = optimize.optimal_split_full(j, n, p, gamma, tau_budget=8.0)
        out2 = optimize.optimal_split_full(2 * j, n, p, 2 * gamma, tau_budget=4.0)
        t1, s1 = out1.argmax
        t2, s2 = out2.argmax
        assert t2 == pytest.approx(t1 / 2, rel=1e-4)
        assert s2 == pytest.approx(s1 / 2, rel=1e-4)
        u1 = 4 * gamma * t1
        u2 = 4 * (2 * gamma) * t2
        assert u2 == pytest.approx(u1, rel=1e-4)

    def test_determinism(self):
        args = (0.05, 100, 0.9, 0.25, 4.0)
        assert optimize.optimal_split_full(*args) == optimize.optimal_split_full(*args)
