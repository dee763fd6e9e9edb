"""Fixed-step integration and output-error metrics."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

import quadrom as q
from quadrom.errors import UnstableSimulation


class TestIntegrate:
    def test_linear_decay(self):
        sys_ = q.QuadraticSystem([[1.0]], [[-1.0]], None, [0.0], [1.0])
        y = q.integrate(sys_, lambda t: 0.0, [1.0], (0.0, 1.0), 1e-3)
        assert abs(y.values[-1] - math.exp(-1.0)) < 1e-6

    def test_logistic_quadratic_decay(self):
        # x' = -x + 0.5 x^2, x(0) = 1  =>  x(t) = 1 / (0.5 + 0.5 e^t)
        sys_ = q.QuadraticSystem([[1.0]], [[-1.0]], [[0.5]], [0.0], [1.0])
        y = q.integrate(sys_, lambda t: 0.0, [1.0], (0.0, 1.0), 1e-3)
        assert abs(y.values[-1] - 1.0 / (0.5 + 0.5 * math.e)) < 1e-6

    def test_fourth_order_convergence(self):
        sys_ = q.QuadraticSystem([[1.0]], [[-1.0]], [[0.5]], [0.0], [1.0])
        exact = 1.0 / (0.5 + 0.5 * math.e)
        errs = [abs(q.integrate(sys_, lambda t: 0.0, [1.0], (0.0, 1.0),
                                dt).values[-1] - exact)
                for dt in (0.1, 0.05, 0.025)]
        orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
        assert all(3.8 <= p <= 4.2 for p in orders)

    def test_descriptor_factorized_path(self):
        # E = 2I halves the effective dynamics
        sys_ = q.QuadraticSystem(2 * np.eye(1), [[-1.0]], None, [0.0], [1.0])
        y = q.integrate(sys_, lambda t: 0.0, [1.0], (0.0, 1.0), 1e-3)
        assert abs(y.values[-1] - math.exp(-0.5)) < 1e-6

    def test_zero_input_zero_state(self, toy_system):
        y = q.integrate(toy_system, lambda t: 0.0, np.zeros(2), (0.0, 2.0), 1e-2)
        assert_allclose(y.values, np.zeros(len(y.values)))

    def test_complex_input_gives_complex_output(self, scalar_system):
        y = q.integrate(scalar_system, lambda t: 0.01 * np.exp(1j * t),
                        np.zeros(1, dtype=complex), (0.0, 1.0), 1e-2)
        assert np.iscomplexobj(y.values)

    def test_overflow_guard(self, toy_system):
        # amplitude 1 drives the toy system past its finite escape time
        with pytest.raises(UnstableSimulation):
            q.integrate(toy_system, q.decaying_cosine, np.zeros(2),
                        (0.0, 15.0), 1e-3)

    def test_bad_span(self, scalar_system):
        with pytest.raises(ValueError):
            q.integrate(scalar_system, lambda t: 0.0, [0.0], (1.0, 0.0), 1e-3)


class TestValidationInput:
    def test_known_values(self):
        assert q.decaying_cosine(0.0) == pytest.approx(1.0)
        assert q.decaying_cosine(math.pi / 2) == pytest.approx(0.0, abs=1e-15)
        assert q.decaying_cosine(15.0) == pytest.approx(
            math.cos(15.0) * math.exp(-1.5))

    def test_vectorized(self):
        t = np.linspace(0.0, 1.0, 5)
        assert q.decaying_cosine(t).shape == (5,)


class TestOutputError:
    def test_identical_signals(self):
        y = q.TimeSignal(0.0, 0.5, np.array([1.0, 2.0, 3.0]))
        err, l2, linf = q.output_error(y, y)
        assert_allclose(err.values, np.zeros(3))
        assert l2 == 0.0 and linf == 0.0

    def test_constant_offset(self):
        a = q.TimeSignal(0.0, 1.0, np.array([1.0, 1.0, 1.0]))
        b = q.TimeSignal(0.0, 1.0, np.array([1.5, 1.5, 1.5]))
        _, _, linf = q.output_error(a, b)
        assert linf == pytest.approx(0.5)

    def test_two_sample_l2(self):
        a = q.TimeSignal(0.0, 1.0, np.array([3.0, 4.0]))
        b = q.TimeSignal(0.0, 1.0, np.array([0.0, 0.0]))
        _, l2, _ = q.output_error(a, b)
        assert l2 == pytest.approx(5.0)

    def test_grid_mismatch(self):
        a = q.TimeSignal(0.0, 1.0, np.array([1.0, 2.0]))
        b = q.TimeSignal(0.0, 0.5, np.array([1.0, 2.0]))
        with pytest.raises(ValueError, match="grid"):
            q.output_error(a, b)


class TestTimeSignal:
    def test_times(self):
        y = q.TimeSignal(1.0, 0.25, np.arange(4.0))
        assert_allclose(y.times, [1.0, 1.25, 1.5, 1.75])

    def test_validation(self):
        with pytest.raises(ValueError):
            q.TimeSignal(0.0, -1.0, np.arange(4.0))
        with pytest.raises(ValueError):
            q.TimeSignal(0.0, 1.0, np.array([1.0]))


class TestBurgersLinearization:
    def test_small_amplitude_converges_to_linear(self):
        # relative gap between full and linearized trajectories shrinks
        # proportionally to the input amplitude
        n = 16
        full = q.make_burgers_system(n)
        lin = q.QuadraticSystem(full.E, full.A, None, full.B, full.C)
        gaps = []
        for amp in (1e-1, 1e-2):
            u = lambda t: amp * math.sin(t)
            y_full = q.integrate(full, u, np.zeros(n), (0.0, 2.0), 1e-3)
            y_lin = q.integrate(lin, u, np.zeros(n), (0.0, 2.0), 1e-3)
            _, l2_gap, _ = q.output_error(y_full, y_lin)
            _, l2_ref, _ = q.output_error(
                y_full, q.TimeSignal(0.0, 1e-3, np.zeros(len(y_full.values))))
            gaps.append(l2_gap / l2_ref)
        assert gaps[1] < 0.2 * gaps[0]
