"""Defines the Monte-Carlo harness: one precoding trial, sweeps over a
   configuration key, aggregation and the complexity timing.

Functions:
    trial_rng(seed, trial_index) -> np.random.Generator:
        Independent random stream of one trial.
    interferer_channels(cfg) -> list[CMatrix]:
        Single-path coupling matrix of every external interferer.
    run_trial(cfg, trial_index, *, trial_id=None, sweep_var='',
              sweep_value=None, debug_dir=None) -> MetricRecord:
        Precode, combine and evaluate one channel draw.
    run_trials(jobs, *, workers=1, sink=None) -> list[MetricRecord]:
        Run trial jobs, possibly on worker processes.
    run_config(cfg, *, workers=1, debug_dir=None, sink=None) -> list[MetricRecord]:
        All trials of a configuration.
    aggregate(records, *, sweep_var='', sweep_value=None,
              bandwidth_hz=100e6) -> dict:
        Mean, median and 5th/95th percentiles of every metric.
    run_sweep(spec, cfg, *, workers=1, debug_dir=None, sink=None) -> SweepResult:
        All trials of every swept value with their aggregated rows.
    complexity_probe(n_tx_values, cfg=None, *, repeats=1) -> ComplexityReport:
        Trial wall time against the number of transmit antennas.
"""

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import replace
from time import perf_counter

import numpy as np

from hybrid_precoding_sim.SimulationException import SimulationException
from hybrid_precoding_sim.numerics import CMatrix
from hybrid_precoding_sim.channel import (
    PATH_LOSS_EXPONENT,
    array_response,
    default_composition,
    draw_paths,
    fit_mle,
    redraw_gains,
    sample_angle_phase,
    synthesize_channel
)
from hybrid_precoding_sim.entropy import (
    EntropyReport,
    entropy_report,
    should_re_estimate
)
from hybrid_precoding_sim.precoding import (
    channel_stats,
    rf_precoder,
    build_precoder
)
from hybrid_precoding_sim.combining import (
    closed_form_combiner,
    combiner_from_closed_form,
    sum_rate_objective,
    maximize_sum_rate
)
from hybrid_precoding_sim.metrics import (
    MetricRecord,
    to_db,
    estimation_error,
    qpsk_ber,
    interference_power_db,
    link_budget
)
from hybrid_precoding_sim.result_writers import write_debug_dump
from hybrid_precoding_sim.simulator.SimConfig import SimConfig
from hybrid_precoding_sim.simulator.SweepSpec import SweepSpec
from hybrid_precoding_sim.simulator.SweepResult import SweepResult
from hybrid_precoding_sim.simulator.ComplexityReport import ComplexityReport

logger = logging.getLogger(__name__)

METRICS = ('sum_rate', 'worst_case_sinr', 'interference_power', 'ber', 'est_error')

# The model fit needs a spread in both coordinates
MIN_FIT_SAMPLES = 2


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    """Random stream of a trial, a child of the master seed.

    The stream only depends on (seed, trial_index), so trials can run in any
    order and sweeps reuse the same draws for every swept value.
    """

    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(trial_index,))
    )


def interferer_channels(cfg: SimConfig) -> list[CMatrix]:
    return [
        np.outer(array_response(theta, 0.0, cfg.n_rx, cfg.spacing_wavelengths),
                 array_response(theta, 0.0, cfg.n_tx, cfg.spacing_wavelengths).conj())
        for theta in cfg.interferer_angles
    ]


def _estimate_model(cfg: SimConfig, raw: np.ndarray,
                    rng: np.random.Generator) -> tuple[EntropyReport, bool]:
    if len(raw) < MIN_FIT_SAMPLES:
        logger.debug('%d path samples, fitting the model on %d pilot samples instead',
                     len(raw), cfg.pilot_samples)
        raw = sample_angle_phase(cfg.model, cfg.pilot_samples, rng, wrap=False)
    fitted, _ = fit_mle(raw)
    report = entropy_report(fitted)
    if not should_re_estimate(report, cfg.entropy_tau):
        return report, False
    logger.info('joint entropy %.4f nats above %.4f, re-estimating from %d pilots',
                report.s_joint_quadrature, cfg.entropy_tau, cfg.pilot_samples)
    fitted, _ = fit_mle(sample_angle_phase(cfg.model, cfg.pilot_samples, rng, wrap=False))
    return entropy_report(fitted), True


def _snapshot_rows(cfg: SimConfig, paths, n_snapshots: int,
                   rng: np.random.Generator, amplitude: float) -> list[np.ndarray]:
    # Geometry is fixed over the snapshots, only the path gains change
    rows = []
    for _ in range(n_snapshots):
        for user_paths in paths:
            snapshot = synthesize_channel(redraw_gains(user_paths, rng, amplitude=amplitude),
                                          cfg.n_rx, cfg.n_tx, cfg.spacing_wavelengths,
                                          cfg.mismatch_theta)
            rows.extend(snapshot.h_est)
    return rows


def _link_score(combiner, precoder, h_est, sigma_n2: float) -> tuple[float, float]:
    sinr = link_budget(combiner.w_blocks, precoder.f, precoder.powers, h_est, sigma_n2).sinr
    return float(np.sum(np.log2(1 + sinr))), float(np.min(sinr))


def _alternate(cfg: SimConfig, stats, f_rf, combiner, h_est):
    """Alternate the digital precoder with the combiner solver.

    The digital precoder is rebuilt for every combiner set it is paired
    with. A solver pass is kept only when its pair does not lower the
    sum-rate or the worst-case SINR measured on the estimated channel,
    otherwise the previous pair stands and the alternation stops. converged
    describes the pass whose iterate is returned.

    Returns:
        tuple: (combiner, precoder, objective, converged, iterations, trace).
    """

    precoder = build_precoder(stats, combiner.h_eq, cfg.n_rf, cfg.sigma_n2,
                              cfg.p_max, f_rf=f_rf)
    score = _link_score(combiner, precoder, h_est, cfg.sigma_n2)
    objective = sum_rate_objective(combiner, precoder, h_est, cfg.sigma_n2)
    converged, iterations, trace = True, 0, []
    for _ in range(cfg.outer_iter):
        state = maximize_sum_rate(combiner, precoder, h_est, cfg.sigma_n2,
                                  cfg.p_max, cfg.solver_options)
        trace.extend((iterations + row[0], *row[1:]) for row in state.trace)
        iterations += state.iteration

        matched = build_precoder(stats, state.iterate.h_eq, cfg.n_rf, cfg.sigma_n2,
                                 cfg.p_max, f_rf=f_rf)
        candidate = _link_score(state.iterate, matched, h_est, cfg.sigma_n2)
        if candidate[0] < score[0] or candidate[1] < score[1]:
            logger.debug('solver pass lowers the link (%.6g, %.6g) -> (%.6g, %.6g), '
                         'keeping the previous pair', *score, *candidate)
            break
        gain = candidate[0] - score[0]
        combiner, precoder, score = state.iterate, matched, candidate
        converged = state.converged
        objective = sum_rate_objective(combiner, precoder, h_est, cfg.sigma_n2)
        if gain < cfg.tol * max(score[0], np.finfo(float).tiny):
            break
    return combiner, precoder, objective, converged, iterations, tuple(trace)


def _run_trial(cfg: SimConfig, trial_index: int, trial_id: int, sweep_var: str,
               sweep_value: float | None, debug_dir) -> MetricRecord:
    rng = trial_rng(cfg.seed, trial_index)
    distance = 1.0 if cfg.distance_m is None else cfg.distance_m
    composition = default_composition(cfg.n_paths)

    drawn = [draw_paths(cfg.model, composition, rng, distance=distance)
             for _ in range(cfg.k_users)]
    paths = [user_paths for user_paths, _ in drawn]
    report, re_estimated = _estimate_model(cfg, np.vstack([raw for _, raw in drawn]), rng)

    realizations = [synthesize_channel(user_paths, cfg.n_rx, cfg.n_tx,
                                       cfg.spacing_wavelengths, cfg.mismatch_theta)
                    for user_paths in paths]
    h_true = [r.h_true for r in realizations]
    h_est = [r.h_est for r in realizations]

    n_snapshots = cfg.n_snapshots * (2 if re_estimated else 1)
    amplitude = distance ** (-PATH_LOSS_EXPONENT / 2)
    rows = [row for h in h_est for row in h]
    rows += _snapshot_rows(cfg, paths, n_snapshots, rng, amplitude)
    stats = channel_stats(rows)

    f_rf = rf_precoder(stats, cfg.n_rf)
    combiner = combiner_from_closed_form(closed_form_combiner(f_rf, np.vstack(h_est)),
                                         h_est, cfg.p_max)
    combiner, precoder, objective, converged, iterations, trace = \
        _alternate(cfg, stats, f_rf, combiner, h_est)

    couplings = interferer_channels(cfg)
    coupling_powers = [cfg.interferer_power] * len(couplings)
    budget = link_budget(combiner.w_blocks, precoder.f, precoder.powers, h_true,
                         cfg.sigma_n2, interferer_channels=couplings,
                         interferer_powers=coupling_powers)
    sinr = budget.sinr
    sinr_db = np.atleast_1d(to_db(sinr))

    if debug_dir is not None:
        write_debug_dump(debug_dir, trial_id, precoder.f_rf, precoder.f_bb,
                         combiner.w_rf, trace)
    if not converged:
        logger.warning('trial %d: solver did not converge in %d iterations',
                       trial_id, iterations)

    return MetricRecord(
        trial_id=trial_id,
        sum_rate=float(np.sum(np.log2(1 + sinr))),
        per_user_sinr=tuple(float(s) for s in sinr_db),
        worst_case_sinr=float(sinr_db.min()),
        interference_power=interference_power_db(combiner.w_blocks, precoder.f,
                                                 couplings, coupling_powers),
        ber=float(np.mean([qpsk_ber(s, cfg.ber_symbols, rng) for s in sinr])),
        est_error=estimation_error(np.vstack(h_true), np.vstack(h_est)),
        entropy=report,
        converged=bool(converged),
        iterations=int(iterations),
        sweep_var=sweep_var,
        sweep_value=sweep_value,
        re_estimated=re_estimated,
        objective=float(objective),
        solver_trace=trace
    )


def run_trial(
    cfg: SimConfig,
    trial_index: int, *,
    trial_id: int | None = None,
    sweep_var: str = '',
    sweep_value: float | None = None,
    debug_dir=None
) -> MetricRecord:
    """Precode, combine and evaluate one channel draw.

    Draws the paths of every user, fits the angle/phase model and reports
    its entropies, designs the analog precoder from the snapshot covariance,
    starts the combiners at the closed form and alternates the digital
    precoder with the combiner solver. Link metrics are measured on the true
    channel.

    Args:
        cfg (SimConfig): The configuration.
        trial_index (int): Index selecting the random stream.
        trial_id (int, optional): Id of the record. Defaults to trial_index.
        sweep_var (str, optional): Swept configuration key, if any.
        sweep_value (float, optional): Swept value, if any.
        debug_dir (str | Path, optional): Directory receiving the matrices
                                          and solver trace.

    Returns:
        MetricRecord: The metrics, or a failed record tagged with the error.
    """

    trial_id = trial_index if trial_id is None else trial_id
    try:
        return _run_trial(cfg, trial_index, trial_id, sweep_var, sweep_value, debug_dir)
    except (SimulationException, np.linalg.LinAlgError) as error:
        logger.warning('trial %d failed: %s', trial_id, error)
        return MetricRecord.failed(trial_id, f'{type(error).__name__}: {error}',
                                   sweep_var=sweep_var, sweep_value=sweep_value)


def _run_job(job: tuple) -> MetricRecord:
    cfg, trial_index, trial_id, sweep_var, sweep_value, debug_dir = job
    return run_trial(cfg, trial_index, trial_id=trial_id, sweep_var=sweep_var,
                     sweep_value=sweep_value, debug_dir=debug_dir)


def run_trials(jobs: list[tuple], *, workers: int = 1, sink: list | None = None) -> list[MetricRecord]:
    """Run trial jobs and return their records ordered by trial_id.

    Args:
        jobs (list[tuple]): (cfg, trial_index, trial_id, sweep_var,
                            sweep_value, debug_dir) of every trial.
        workers (int, optional): Worker processes, 1 to run in-process.
        sink (list, optional): Receives every record as soon as it is done,
                               so partial results survive an interruption.

    Returns:
        list[MetricRecord]: One record per job.
    """

    sink = [] if sink is None else sink
    if workers <= 1:
        for job in jobs:
            sink.append(_run_job(job))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for future in as_completed([pool.submit(_run_job, job) for job in jobs]):
                sink.append(future.result())
    return sorted(sink, key=lambda r: r.trial_id)


def run_config(cfg: SimConfig, *, workers: int = 1, debug_dir=None,
               sink: list | None = None) -> list[MetricRecord]:
    jobs = [(cfg, t, t, '', None, debug_dir) for t in range(cfg.n_trials)]
    return run_trials(jobs, workers=workers, sink=sink)


def aggregate(records: list[MetricRecord], *, sweep_var: str = '',
              sweep_value: float | None = None, bandwidth_hz: float = 100e6) -> dict:
    """Summary statistics of the records of one swept value.

    Failed records are counted but left out of the statistics.

    Returns:
        dict: Counts, then mean/median/p5/p95 of every metric and the mean
              sum-rate in Gbps.
    """

    ok = [r for r in records if r.ok]
    row = {
        'sweep_var': sweep_var,
        'sweep_value': sweep_value,
        'n_trials': len(records),
        'n_failed': len(records) - len(ok),
        'n_converged': sum(r.converged for r in ok),
    }
    for metric in METRICS:
        values = np.array([getattr(r, metric) for r in ok], dtype=float)
        if values.size:
            stats = (values.mean(), np.median(values),
                     np.percentile(values, 5), np.percentile(values, 95))
        else:
            stats = (np.nan,) * 4
        for suffix, value in zip(('mean', 'median', 'p5', 'p95'), stats):
            row[f'{metric}_{suffix}'] = float(value)
    row['sum_rate_gbps'] = row['sum_rate_mean'] * bandwidth_hz / 1e9
    return row


def run_sweep(
    spec: SweepSpec,
    cfg: SimConfig, *,
    workers: int = 1,
    debug_dir=None,
    sink: list | None = None
) -> SweepResult:
    """Run every trial of every swept value.

    Trial t uses the same random stream for every value, its id being
    unique over the sweep.

    Args:
        spec (SweepSpec): The sweep.
        cfg (SimConfig): The base configuration.
        workers (int, optional): Worker processes.
        debug_dir (str | Path, optional): Debug dump directory.
        sink (list, optional): Receives the records as they complete.

    Raises:
        ValidationError: If a swept value makes the configuration invalid.

    Returns:
        SweepResult: Records, aggregated rows and CDF samples.
    """

    fixed = dict(spec.fixed)
    configs = [cfg.with_values({**fixed, spec.variable: value}) for value in spec.values]

    jobs, offset = [], 0
    for value, value_cfg in zip(spec.values, configs):
        jobs += [(value_cfg, t, offset + t, spec.variable, float(value), debug_dir)
                 for t in range(value_cfg.n_trials)]
        offset += value_cfg.n_trials
    records = run_trials(jobs, workers=workers, sink=sink)

    summary, cdf = [], {}
    for value, value_cfg in zip(spec.values, configs):
        group = [r for r in records if r.sweep_value == float(value)]
        summary.append(aggregate(group, sweep_var=spec.variable, sweep_value=float(value),
                                 bandwidth_hz=value_cfg.bandwidth_hz))
        if spec.is_cdf:
            cdf[float(value)] = sorted(r.est_error for r in group if r.ok)
        logger.info('%s=%g: mean sum-rate %.4f bits/s/Hz over %d trials',
                    spec.variable, value, summary[-1]['sum_rate_mean'], len(group))
    return SweepResult(spec, records, summary, cdf)


def complexity_probe(n_tx_values, cfg: SimConfig | None = None, *,
                     repeats: int = 1) -> ComplexityReport:
    """Mean trial wall time for every number of transmit antennas.

    RF chains and users are capped at N_T so every timed configuration is
    valid. The log-log slope of time against N_T is informational.

    Args:
        n_tx_values (list[int]): Antenna counts to time.
        cfg (SimConfig, optional): Base configuration. Defaults to SimConfig().
        repeats (int, optional): Trials timed per count.

    Returns:
        ComplexityReport: Timings and slope, None with fewer than two
                          distinct counts.
    """

    cfg = cfg or SimConfig()
    n_tx_values = tuple(int(n) for n in n_tx_values)
    seconds = []
    for n_tx in n_tx_values:
        n_rf = min(cfg.n_rf, n_tx)
        timed_cfg = replace(cfg, n_tx=n_tx, n_rf=n_rf, k_users=min(cfg.k_users, n_rf))
        start = perf_counter()
        for t in range(repeats):
            run_trial(timed_cfg, t)
        seconds.append((perf_counter() - start) / repeats)
        logger.info('N_T=%d: %.4f s per trial', n_tx, seconds[-1])

    slope = None
    if len(set(n_tx_values)) >= 2:
        slope = float(np.polyfit(np.log(n_tx_values),
                                 np.log(np.maximum(seconds, 1e-12)), 1)[0])
    return ComplexityReport(n_tx_values, tuple(seconds), slope)
