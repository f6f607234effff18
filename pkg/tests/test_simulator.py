"""Tests of the configuration, the Monte-Carlo trials, sweeps and the
   complexity timing."""

import math
from dataclasses import replace

import numpy as np
import pytest

from hybrid_precoding_sim.numerics import Singular
from hybrid_precoding_sim.metrics import DB_FLOOR, MetricRecord
from hybrid_precoding_sim.simulator import (
    SimConfig,
    SweepSpec,
    FAMILIES,
    TAU_OFF,
    ValidationError,
    trial_rng,
    interferer_channels,
    run_trial,
    run_trials,
    run_config,
    aggregate,
    run_sweep,
    complexity_probe
)
from hybrid_precoding_sim.combining import GradientState, make_combiner
import hybrid_precoding_sim.simulator.utils as simulator_utils


class TestSimConfig:

    def test_defaults(self):
        cfg = SimConfig()
        assert cfg.p_max == pytest.approx(10 ** 3.5)
        assert cfg.interferer_power == pytest.approx(0.01 * 10 ** -1.437)
        assert cfg.model.rho == 0.5
        assert cfg.model.sigma_theta == pytest.approx(np.deg2rad(20))

    def test_snr_mapping(self):
        assert SimConfig(snr_db=10.0, sigma_n2=0.01).p_max == pytest.approx(0.1)

    @pytest.mark.parametrize('changes', [
        {'k_users': 20, 'n_rf': 16},
        {'n_rf': 80},
        {'k_users': 0},
        {'sigma_n2': 0.0},
        {'n_snapshots': 1},
        {'rho': 1.0},
        {'shrink': 2.0},
        {'distance_m': -5.0},
        {'trigger_tau': 'sometimes'},
    ])
    def test_invalid(self, changes):
        with pytest.raises(ValidationError):
            SimConfig(**changes)

    def test_with_values(self):
        cfg = SimConfig().with_values({'array.n_rf': '8', 'model.rho': '0.2',
                                       'interference.angles_deg': '-5,5'})
        assert cfg.n_rf == 8
        assert cfg.rho == 0.2
        assert cfg.interferer_angles_deg == (-5.0, 5.0)

    def test_with_values_errors(self):
        with pytest.raises(ValidationError):
            SimConfig().with_values({'array.n_tx_typo': '8'})
        with pytest.raises(ValidationError):
            SimConfig().with_values({'array.n_rf': 'eight'})
        with pytest.raises(ValidationError):
            SimConfig().with_values({'array.n_rf': '8.5'})

    def test_entropy_tau(self):
        assert SimConfig(trigger_tau=TAU_OFF).entropy_tau is None
        assert SimConfig(trigger_tau=1.5).entropy_tau == 1.5
        assert SimConfig().entropy_tau > 0


class TestSweepSpec:

    def test_families(self):
        for family, (variable, values, _) in FAMILIES.items():
            spec = SweepSpec.for_family(family)
            assert spec.variable == variable
            assert spec.values == values
        assert SweepSpec.for_family('est_error_cdf').is_cdf
        assert not SweepSpec.for_family('spacing').is_cdf

    @pytest.mark.parametrize('args', [
        ('s', 'unknown', 'array.n_rf', (1.0,)),
        ('s', 'spacing', 'array.unknown', (1.0,)),
        ('s', 'spacing', 'array.spacing_wavelengths', ()),
        ('s', 'spacing', 'array.spacing_wavelengths', (0.5, 0.5)),
        ('s', 'spacing', 'array.spacing_wavelengths', (0.5, 1.0, 0.75)),
    ])
    def test_invalid(self, args):
        with pytest.raises(ValidationError):
            SweepSpec(*args)

    def test_decreasing_values(self):
        assert SweepSpec('s', 'spacing', 'array.spacing_wavelengths', (1.0, 0.5)).values \
            == (1.0, 0.5)


class TestRandomStreams:

    def test_reproducible(self):
        np.testing.assert_array_equal(trial_rng(3, 5).standard_normal(4),
                                      trial_rng(3, 5).standard_normal(4))

    def test_independent_trials(self):
        assert not np.allclose(trial_rng(3, 5).standard_normal(4),
                               trial_rng(3, 6).standard_normal(4))
        assert not np.allclose(trial_rng(3, 5).standard_normal(4),
                               trial_rng(4, 5).standard_normal(4))


class TestTrial:

    def test_interferer_channels(self, small_cfg):
        channels = interferer_channels(small_cfg)
        assert len(channels) == 3
        for g in channels:
            assert g.shape == (2, 8)
            assert np.linalg.matrix_rank(g) == 1

    def test_record(self, small_cfg):
        record = run_trial(small_cfg, 0)
        assert record.ok
        assert record.trial_id == 0
        assert len(record.per_user_sinr) == 2
        assert record.worst_case_sinr == min(record.per_user_sinr)
        assert record.sum_rate >= 0
        assert 0 <= record.ber <= 0.5 + 1e-12
        assert record.est_error == 0.0
        assert record.entropy is not None
        assert record.iterations >= 1

    def test_single_user_without_interferers(self, small_cfg):
        cfg = replace(small_cfg, k_users=1, interferer_angles_deg=())
        record = run_trial(cfg, 0)
        assert record.ok
        assert record.est_error == 0.0
        assert record.interference_power == DB_FLOOR

    def test_mismatch_degrades_estimate(self, small_cfg):
        record = run_trial(replace(small_cfg, mismatch_theta_deg=12.0), 0)
        assert record.ok
        assert record.est_error > 0

    def test_deterministic(self, small_cfg):
        assert run_trial(small_cfg, 1) == run_trial(small_cfg, 1)

    def test_order_independent(self, small_cfg):
        records = run_config(small_cfg)
        assert [r.trial_id for r in records] == [0, 1, 2]
        assert records[2] == run_trial(small_cfg, 2)

    def test_worker_processes(self, small_cfg):
        jobs = [(small_cfg, t, t, '', None, None) for t in range(3)]
        assert run_trials(jobs, workers=2) == run_trials(jobs)

    def test_re_estimation(self, small_cfg):
        assert run_trial(replace(small_cfg, trigger_tau=-100.0), 0).re_estimated
        assert not run_trial(replace(small_cfg, trigger_tau=TAU_OFF), 0).re_estimated

    def test_failure_is_recorded(self, small_cfg, monkeypatch):
        def broken(*args, **kwargs):
            raise Singular('forced')

        monkeypatch.setattr(simulator_utils, 'rf_precoder', broken)
        record = run_trial(small_cfg, 4, sweep_var='array.n_rf', sweep_value=4.0)
        assert not record.ok
        assert record.trial_id == 4
        assert record.sweep_value == 4.0
        assert 'Singular' in record.failure

    def test_debug_dump(self, small_cfg, tmp_path):
        run_trial(small_cfg, 0, debug_dir=tmp_path)
        names = sorted(p.name for p in tmp_path.iterdir())
        assert names == ['trial_0_f_bb.txt', 'trial_0_f_rf.txt', 'trial_0_trace.csv',
                         'trial_0_w_rf.txt']
        assert len((tmp_path / 'trial_0_f_rf.txt').read_text().splitlines()) == 8
        header = (tmp_path / 'trial_0_trace.csv').read_text().splitlines()[0]
        assert header == 'iteration,objective,step,feasible'

    def test_single_path_single_user(self, small_cfg):
        record = run_trial(replace(small_cfg, k_users=1, n_paths=1), 0)
        assert record.ok
        assert record.entropy is not None

    def test_solver_cannot_starve_a_user(self, small_cfg, monkeypatch):
        def stalled(init, precoder, h_est, sigma_n2, p_max, options=None):
            return GradientState(init, 0.0, 0.0, 1, True, ((0, 0.0, 0.0, True),))

        def starving(init, precoder, h_est, sigma_n2, p_max, options=None):
            blocks = [init.w_blocks[0], np.zeros_like(init.w_blocks[1])]
            return GradientState(make_combiner(blocks, h_est), 0.0, 0.0, 1, True,
                                 ((0, 0.0, 0.0, True),))

        monkeypatch.setattr(simulator_utils, 'maximize_sum_rate', stalled)
        kept = run_trial(small_cfg, 0)
        monkeypatch.setattr(simulator_utils, 'maximize_sum_rate', starving)
        record = run_trial(small_cfg, 0)
        assert record.ok
        assert record == kept
        assert record.worst_case_sinr > DB_FLOOR

    @pytest.mark.slow
    def test_default_trials(self):
        records = run_config(replace(SimConfig(), n_trials=10))
        assert all(r.ok for r in records)
        assert all(r.converged for r in records)
        assert min(r.worst_case_sinr for r in records) > 10.0
        assert np.mean([r.ber for r in records]) < 1e-2


class TestAggregate:

    def test_single_record(self, small_cfg):
        record = run_trial(small_cfg, 0)
        row = aggregate([record], sweep_var='x', sweep_value=1.0, bandwidth_hz=1e9)
        for suffix in ('mean', 'median', 'p5', 'p95'):
            assert row[f'sum_rate_{suffix}'] == pytest.approx(record.sum_rate)
            assert row[f'ber_{suffix}'] == pytest.approx(record.ber)
        assert row['sum_rate_gbps'] == pytest.approx(record.sum_rate)
        assert row['n_trials'] == 1
        assert row['n_failed'] == 0

    def test_failed_records_are_counted(self):
        records = [MetricRecord.failed(0, 'x'), MetricRecord.failed(1, 'y')]
        row = aggregate(records)
        assert row['n_failed'] == 2
        assert math.isnan(row['sum_rate_mean'])


class TestSweep:

    def test_rows_and_ids(self, small_cfg):
        cfg = replace(small_cfg, n_trials=2)
        result = run_sweep(SweepSpec.for_family('spacing', values=(0.5, 1.0)), cfg)
        assert [r.trial_id for r in result.records] == [0, 1, 2, 3]
        assert [r.sweep_value for r in result.records] == [0.5, 0.5, 1.0, 1.0]
        assert [row['sweep_value'] for row in result.summary] == [0.5, 1.0]
        assert all(row['n_trials'] == 2 for row in result.summary)
        assert result.n_failed == 0
        assert result.cdf == {}

    def test_estimation_error_cdf(self, small_cfg):
        cfg = replace(small_cfg, n_trials=2)
        result = run_sweep(SweepSpec.for_family('est_error_cdf'), cfg)
        assert sorted(result.cdf) == [0.0, 12.0]
        assert result.cdf[0.0] == [0.0, 0.0]
        assert result.cdf[12.0] == sorted(result.cdf[12.0])
        assert all(e > 0 for e in result.cdf[12.0])

    def test_fixed_keys_apply(self, small_cfg):
        spec = SweepSpec('m', 'mismatch_sinr', 'channel.mismatch_theta_deg', (1.0,),
                         (('interference.angles_deg', ''),))
        result = run_sweep(spec, replace(small_cfg, n_trials=1))
        assert result.records[0].interference_power == DB_FLOOR

    def test_invalid_swept_value(self, small_cfg):
        spec = SweepSpec('b', 'beams_ber', 'array.n_rf', (4.0, 16.0))
        with pytest.raises(ValidationError):
            run_sweep(spec, small_cfg)


class TestTrends:
    """Headline trends on a small array, with common random numbers across
       the swept values."""

    @pytest.fixture
    def trend_cfg(self, small_cfg):
        return replace(small_cfg, n_tx=16, n_trials=4)

    @staticmethod
    def _means(result, metric):
        values = sorted({r.sweep_value for r in result.records})
        return [np.mean([getattr(r, metric) for r in result.records if r.sweep_value == v])
                for v in values]

    def test_sum_rate_grows_with_snr(self, trend_cfg):
        result = run_sweep(SweepSpec.for_family('snr_sumrate', values=(0.0, 15.0, 30.0)),
                           trend_cfg)
        assert result.n_failed == 0
        assert np.all(np.diff(self._means(result, 'sum_rate')) > 0)

    def test_sinr_drops_with_interference(self, trend_cfg):
        spec = SweepSpec('inr', 'mismatch_sinr', 'interference.inr_db', (-30.0, 0.0, 20.0))
        result = run_sweep(spec, trend_cfg)
        assert result.n_failed == 0
        per_trial = np.array([r.worst_case_sinr for r in result.records]).reshape(3, -1)
        assert np.all(np.diff(per_trial, axis=0) <= 0)
        assert per_trial[2].mean() < per_trial[0].mean()

    def test_mismatch_degrades_sinr_and_ber(self, trend_cfg):
        spec = SweepSpec('mis', 'mismatch_sinr', 'channel.mismatch_theta_deg', (0.0, 13.0))
        result = run_sweep(spec, trend_cfg)
        assert result.n_failed == 0
        sinr = self._means(result, 'worst_case_sinr')
        ber = self._means(result, 'ber')
        assert sinr[0] > sinr[1]
        assert ber[1] >= ber[0]

    def test_ber_does_not_grow_with_beams(self, trend_cfg):
        spec = SweepSpec('beams', 'beams_ber', 'array.n_rf', (2.0, 4.0, 8.0),
                         (('channel.mismatch_theta_deg', 0.0),))
        result = run_sweep(spec, trend_cfg)
        assert result.n_failed == 0
        # Allow a couple of bit errors between values
        assert np.all(np.diff(self._means(result, 'ber')) <= 2 / trend_cfg.ber_symbols)


class TestComplexity:

    def test_slope(self, small_cfg):
        report = complexity_probe([8, 16], small_cfg)
        assert report.n_tx_values == (8, 16)
        assert len(report.seconds) == 2
        assert all(s > 0 for s in report.seconds)
        assert report.slope is not None and math.isfinite(report.slope)

    @pytest.mark.parametrize('values', [[8], [8, 8]])
    def test_no_slope(self, small_cfg, values):
        report = complexity_probe(values, small_cfg)
        assert report.slope is None
        assert report.slope_text == 'n/a'

    def test_caps_chains_and_users(self, small_cfg):
        report = complexity_probe([2], small_cfg)
        assert report.n_tx_values == (2,)
