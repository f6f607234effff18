"""Tests of the combiners, the sum-rate objective, its gradient and the
   projected gradient ascent."""

import numpy as np
import pytest

from hybrid_precoding_sim.numerics import is_psd
from hybrid_precoding_sim.metrics import NonPositiveNoise
from hybrid_precoding_sim.precoding import (
    PrecoderSet,
    channel_stats,
    project_unit_modulus,
    build_precoder
)
from hybrid_precoding_sim.combining import (
    CombinerSet,
    SolverOptions,
    InfeasibleInit,
    user_channels,
    equivalent_channel,
    make_combiner,
    project_to_constraint,
    closed_form_combiner,
    combiner_from_closed_form,
    signal_terms,
    sum_rate_objective,
    sum_rate_gradient,
    stationarity_ratio,
    alpha_weights,
    log_utility_curvature,
    maximize_sum_rate,
    SumRateSolver
)


def _complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _random_precoder(rng, k_users, n_rf, n_tx):
    f_rf = project_unit_modulus(_complex(rng, n_tx, n_rf), n_tx)
    f_bb = _complex(rng, n_rf, k_users) / np.sqrt(n_rf)
    p_tr = np.diag(rng.uniform(0.5, 1.5, k_users))
    return PrecoderSet(f_rf, f_bb, p_tr, 1.0)


def _scalar_setup():
    precoder = PrecoderSet(np.ones((1, 1), dtype=complex), np.ones((1, 1), dtype=complex),
                           np.eye(1), 1.0)
    return precoder, [np.ones((1, 1), dtype=complex)]


def _designed_setup(rng, k_users=2, n_rx=2, n_tx=8, n_rf=4, p_max=10.0, sigma_n2=0.1):
    h_est = [_complex(rng, n_rx, n_tx) for _ in range(k_users)]
    stats = channel_stats(np.vstack(h_est + [_complex(rng, 20, n_tx)]))
    f_rf = build_precoder(stats, np.vstack([h[0] for h in h_est]), n_rf,
                          sigma_n2, p_max).f_rf
    init = combiner_from_closed_form(closed_form_combiner(f_rf, np.vstack(h_est)),
                                     h_est, p_max)
    precoder = build_precoder(stats, init.h_eq, n_rf, sigma_n2, p_max, f_rf=f_rf)
    return h_est, precoder, init


class TestEquivalentChannel:

    def test_scalar_users(self):
        h = [np.ones((1, 1)), np.ones((1, 1))]
        np.testing.assert_allclose(equivalent_channel([[2.0], [3.0]], h), [[2.0], [3.0]])

    def test_conjugates_combiner(self):
        np.testing.assert_allclose(equivalent_channel([[1j]], [np.ones((1, 1))]), [[-1j]])

    def test_rows(self):
        rng = np.random.default_rng(42)
        h = [_complex(rng, 2, 5) for _ in range(3)]
        w = [_complex(rng, 2) for _ in range(3)]
        h_eq = equivalent_channel(w, h)
        assert h_eq.shape == (3, 5)
        for k in range(3):
            np.testing.assert_allclose(h_eq[k], w[k].conj() @ h[k])

    def test_stacked_channel(self):
        rng = np.random.default_rng(42)
        h = [_complex(rng, 2, 4) for _ in range(2)]
        w = [_complex(rng, 2) for _ in range(2)]
        np.testing.assert_allclose(equivalent_channel(w, np.vstack(h)),
                                   equivalent_channel(w, h))

    def test_block_diagonal_combiner(self):
        rng = np.random.default_rng(42)
        h = [_complex(rng, 2, 4) for _ in range(3)]
        combiner = make_combiner([_complex(rng, 2) for _ in range(3)], h)
        assert combiner.w_rf.shape == (6, 3)
        np.testing.assert_allclose(combiner.w_rf.conj().T @ np.vstack(h), combiner.h_eq)

    def test_user_channels_split(self):
        blocks = user_channels(np.arange(12.0).reshape(4, 3), 2)
        assert [b.shape for b in blocks] == [(2, 3), (2, 3)]
        with pytest.raises(ValueError):
            user_channels(np.ones((3, 3)), 2)


class TestClosedForm:

    def test_identity(self):
        np.testing.assert_allclose(closed_form_combiner(np.eye(2), np.eye(2)), 0.5 * np.eye(2))

    def test_zero_channel(self):
        rng = np.random.default_rng(42)
        f_rf = project_unit_modulus(_complex(rng, 4, 2), 4)
        np.testing.assert_allclose(closed_form_combiner(f_rf, np.zeros((3, 4))),
                                   f_rf @ f_rf.conj().T, atol=1e-12)

    def test_hermitian_psd(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            f_rf = project_unit_modulus(_complex(rng, 6, 3), 6)
            w = closed_form_combiner(f_rf, _complex(rng, 4, 6))
            np.testing.assert_allclose(w, w.conj().T)
            assert is_psd(w)

    def test_extracted_combiners_are_feasible(self):
        rng = np.random.default_rng(42)
        h = [_complex(rng, 2, 6) for _ in range(2)]
        f_rf = project_unit_modulus(_complex(rng, 6, 3), 6)
        combiner = combiner_from_closed_form(closed_form_combiner(f_rf, np.vstack(h)),
                                             h, 0.01)
        assert combiner.is_feasible(0.01)
        assert combiner.n_users == 2

    def test_projection(self):
        h = [np.eye(2)]
        inside = project_to_constraint([[0.1, 0.1]], h, 1.0)
        np.testing.assert_allclose(inside.w_blocks[0], [0.1, 0.1])
        scaled = project_to_constraint([[3.0, 4.0]], h, 1.0)
        assert scaled.constraint_trace == pytest.approx(1.0)
        np.testing.assert_allclose(scaled.w_blocks[0], [0.6, 0.8])


class TestObjective:

    def test_single_user(self):
        precoder, h = _scalar_setup()
        combiner = make_combiner([[1.0]], h)
        assert sum_rate_objective(combiner, precoder, h, 1.0) == pytest.approx(1.0)

    def test_zero_combiner(self):
        precoder, h = _scalar_setup()
        assert sum_rate_objective(make_combiner([[0.0]], h), precoder, h, 1.0) == 0.0

    def test_nonpositive_noise(self):
        precoder, h = _scalar_setup()
        with pytest.raises(NonPositiveNoise):
            sum_rate_objective(make_combiner([[1.0]], h), precoder, h, 0.0)

    def test_alpha_weights(self):
        np.testing.assert_allclose(alpha_weights([1.0, 2.0], 0.5), [0.4, 2 / 3])

    def test_log_utility_curvature(self):
        """Second differences of α·log u match −α/u²."""
        u, alpha, step = np.array([0.5, 1.0, 4.0]), np.array([0.4, 1.0, 2.0]), 1e-4
        second = alpha * (np.log(u + step) - 2 * np.log(u) + np.log(u - step)) / step ** 2
        np.testing.assert_allclose(log_utility_curvature(u, alpha), second, rtol=1e-5)
        assert np.all(log_utility_curvature(u, alpha) < 0)
        with pytest.raises(ValueError):
            log_utility_curvature([0.0], [1.0])


class TestGradient:
    """Analytic gradient against central finite differences."""

    def test_finite_differences(self):
        rng = np.random.default_rng(42)
        step = 1e-6
        for _ in range(50):
            k_users = int(rng.integers(1, 4))
            n_rf = int(rng.integers(k_users, 5))
            n_rx = int(rng.integers(1, 3))
            precoder = _random_precoder(rng, k_users, n_rf, 4)
            h = [_complex(rng, n_rx, 4) for _ in range(k_users)]
            w = [_complex(rng, n_rx) for _ in range(k_users)]
            sigma_n2 = 0.5

            def objective(blocks):
                return sum_rate_objective(make_combiner(blocks, h), precoder, h, sigma_n2)

            gradient = sum_rate_gradient(make_combiner(w, h), precoder, h, sigma_n2)
            for k in range(k_users):
                for i in range(n_rx):
                    numeric = []
                    for direction in (1.0, 1j):
                        plus = [b.copy() for b in w]
                        minus = [b.copy() for b in w]
                        plus[k][i] += step * direction
                        minus[k][i] -= step * direction
                        numeric.append((objective(plus) - objective(minus)) / (2 * step))
                    np.testing.assert_allclose(numeric, [gradient[k][i].real,
                                                         gradient[k][i].imag],
                                               rtol=1e-5, atol=1e-7)

    def test_zero_combiner_has_zero_gradient(self):
        rng = np.random.default_rng(42)
        precoder = _random_precoder(rng, 2, 3, 4)
        h = [_complex(rng, 2, 4) for _ in range(2)]
        gradient = sum_rate_gradient(make_combiner([np.zeros(2), np.zeros(2)], h),
                                     precoder, h, 0.1)
        assert all(not np.any(g) for g in gradient)

    def test_unserved_user_has_zero_gradient(self):
        rng = np.random.default_rng(42)
        precoder = _random_precoder(rng, 2, 2, 4)
        precoder = PrecoderSet(precoder.f_rf, precoder.f_bb * [1.0, 0.0],
                               precoder.p_tr, 1.0)
        h = [_complex(rng, 2, 4) for _ in range(2)]
        gradient = sum_rate_gradient(make_combiner([_complex(rng, 2), _complex(rng, 2)], h),
                                     precoder, h, 0.1)
        assert not np.any(gradient[1])
        assert np.any(gradient[0])


class TestSolver:

    def test_monotone_and_feasible(self):
        rng = np.random.default_rng(42)
        for _ in range(1000):
            precoder = _random_precoder(rng, 2, 2, 4)
            h = [_complex(rng, 2, 4) for _ in range(2)]
            init = project_to_constraint([_complex(rng, 2), _complex(rng, 2)], h, 10.0)
            state = maximize_sum_rate(init, precoder, h, 0.1, 10.0,
                                      SolverOptions(max_iter=50))
            trace = state.objective_trace
            assert np.all(np.diff(trace) >= 0)
            assert all(row[3] for row in state.trace)
            assert state.iterate.is_feasible(10.0)
            assert state.objective == pytest.approx(trace[-1])

    def test_no_user_loses_signal(self):
        rng = np.random.default_rng(42)
        for _ in range(20):
            h_est, precoder, init = _designed_setup(rng)
            solver = SumRateSolver(precoder, h_est, 0.1, 10.0)
            state = solver.solve(init)
            assert np.all(solver.signals(state.iterate) >= solver.signals(init))
            assert state.objective >= solver.objective(init)

    def test_radial_derivative_at_closed_form(self):
        """Scaling every combiner up raises the objective by
           2/ln2·Σ σ²·S_k / ((T + σ²)·(T − S_k + σ²)), which is positive."""
        rng = np.random.default_rng(42)
        for _ in range(10):
            h_est, precoder, init = _designed_setup(rng)
            gradient = sum_rate_gradient(init, precoder, h_est, 0.1)
            radial = sum(np.vdot(g, w).real for g, w in zip(gradient, init.w_blocks))
            signals = signal_terms(init.w_blocks, precoder.f, precoder.powers, h_est)
            total = signals.sum()
            expected = 2 / np.log(2) * np.sum(
                0.1 * signals / ((total + 0.1) * (total - signals + 0.1)))
            assert radial == pytest.approx(expected, rel=1e-9)
            assert radial > 0

    def test_stationarity_ratio(self):
        rng = np.random.default_rng(42)
        h_est, precoder, init = _designed_setup(rng)
        assert stationarity_ratio(init, init, precoder, h_est, 0.1) == pytest.approx(1.0)
        zero = make_combiner([np.zeros(2), np.zeros(2)], h_est)
        assert stationarity_ratio(zero, init, precoder, h_est, 0.1) == 0.0
        assert stationarity_ratio(init, zero, precoder, h_est, 0.1) == float('inf')

    def test_zero_channel_stops_at_first_iteration(self):
        rng = np.random.default_rng(42)
        h = [np.zeros((2, 4), dtype=complex) for _ in range(2)]
        precoder = _random_precoder(rng, 2, 2, 4)
        state = maximize_sum_rate(make_combiner([_complex(rng, 2), _complex(rng, 2)], h),
                                  precoder, h, 0.1, 1.0)
        assert state.iteration == 1
        assert state.converged
        assert state.objective == 0.0

    def test_infeasible_init(self):
        precoder, h = _scalar_setup()
        with pytest.raises(InfeasibleInit):
            maximize_sum_rate(make_combiner([[10.0]], h), precoder, h, 1.0, 1.0)

    def test_iteration_cap(self):
        rng = np.random.default_rng(42)
        precoder = _random_precoder(rng, 2, 3, 4)
        h = [_complex(rng, 2, 4) for _ in range(2)]
        init = make_combiner([0.01 * _complex(rng, 2), 0.01 * _complex(rng, 2)], h)
        solver = SumRateSolver(precoder, h, 0.1, 1e6, SolverOptions(max_iter=1, tol=1e-12))
        state = solver.solve(init)
        assert not state.converged
        assert state.iteration == 1
        assert state.objective > solver.objective(init)

    def test_stacked_channel_matches_list(self):
        rng = np.random.default_rng(42)
        h_est, precoder, init = _designed_setup(rng)
        listed = maximize_sum_rate(init, precoder, h_est, 0.1, 10.0)
        stacked = maximize_sum_rate(init, precoder, np.vstack(h_est), 0.1, 10.0)
        assert stacked.objective == pytest.approx(listed.objective)

    @pytest.mark.parametrize('kwargs', [{'step0': 0.0}, {'shrink': 1.0},
                                        {'tol': -1.0}, {'max_iter': 0}])
    def test_invalid_options(self, kwargs):
        with pytest.raises(ValueError):
            SolverOptions(**kwargs)

    def test_combiner_set_trace(self):
        combiner = CombinerSet((np.ones(1),), np.array([[3.0, 4.0]]))
        assert combiner.constraint_trace == pytest.approx(25.0)
        assert not combiner.is_feasible(24.0)
