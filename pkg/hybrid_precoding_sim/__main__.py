import logging
import sys
from datetime import datetime, timezone
from pathlib import Path

from hybrid_precoding_sim import __version__
from hybrid_precoding_sim.argument_utils import parse_arguments
from hybrid_precoding_sim.config_utils import parse_config, config_hash
from hybrid_precoding_sim.simulator import (
    SimConfig,
    SweepSpec,
    FAMILIES,
    ConfigException,
    run_config,
    run_sweep,
    complexity_probe
)
from hybrid_precoding_sim.result_writers import (
    RunManifest,
    ResultsIoError,
    get_writer,
    write_results
)

logger = logging.getLogger('hybrid_precoding_sim')

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3

SNR_MAPPING = 'p_max = sigma_n2 * 10**(snr_db / 10) when power.snr_db is set'


def main(argv: list[str] | None = None) -> int:
    args, overrides = parse_arguments(argv)
    logging.basicConfig(
        level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)],
        format='%(asctime)s %(levelname)s %(name)s: %(message)s'
    )

    try:
        cfg, sweeps = load_config(args.config, overrides, args.seed)
        spec = select_sweep(args.name, sweeps) if args.command == 'sweep' else None
    except ConfigException as error:
        print(f'Invalid configuration: {error}')
        return EXIT_VALIDATION

    if args.command == 'validate':
        print(f'Configuration valid: {cfg.k_users} users, N_T={cfg.n_tx}, '
              f'N_RF={cfg.n_rf}, {cfg.n_trials} trials, p_max={cfg.p_max:.6g} W, '
              f'sweeps: {", ".join(s.name for s in sweeps) or "none"}\n'
              f'config hash {config_hash(cfg, sweeps)}')
        return EXIT_OK

    if args.command == 'probe-complexity':
        report = complexity_probe(args.n_tx, cfg, repeats=args.repeats)
        for row in report.rows():
            print(f'N_T={row["n_tx"]:>5}  {row["seconds"]:.6f} s/trial')
        print(f'log-log slope: {report.slope_text}')
        return EXIT_OK

    return simulate(args, cfg, sweeps, spec)


def load_config(path, overrides: dict[str, str], seed: int | None) -> tuple[SimConfig, list[SweepSpec]]:
    """Read the configuration file and apply the command line overrides.

    Args:
        path (str | None): Configuration file, defaults when None.
        overrides (dict[str, str]): Dotted key overrides.
        seed (int | None): Seed given with --seed.

    Raises:
        ConfigException: On an invalid file or override.

    Returns:
        tuple[SimConfig, list[SweepSpec]]: The configuration and its sweeps.
    """

    cfg, sweeps = parse_config(path) if path is not None else (SimConfig(), [])
    if seed is not None:
        overrides = {**overrides, 'run.seed': seed}
    return cfg.with_values(overrides), sweeps


def select_sweep(name: str, sweeps: list[SweepSpec]) -> SweepSpec:
    for spec in sweeps:
        if spec.name == name:
            return spec
    if name in FAMILIES:
        return SweepSpec.for_family(name)
    raise ConfigException(f'no sweep named {name!r} in the configuration and no '
                          f'experiment family of that name ({", ".join(sorted(FAMILIES))})')


def simulate(args, cfg: SimConfig, sweeps: list[SweepSpec], spec: SweepSpec | None) -> int:
    """Run the trials, write the results and report the outcome.

    Records gathered before a runtime failure are still written.

    Returns:
        int: The exit status.
    """

    out = Path(args.out or f'results.{args.format}')
    # Fail before the trials run when the destination is unusable
    try:
        get_writer(out, args.format)
    except ResultsIoError as error:
        print(f'Cannot write results: {error}')
        return EXIT_RUNTIME

    started_at = datetime.now(timezone.utc).isoformat()
    sink, result, failure = [], None, None
    try:
        if spec is None:
            records = run_config(cfg, workers=args.workers,
                                 debug_dir=args.debug_dump, sink=sink)
        else:
            result = run_sweep(spec, cfg, workers=args.workers,
                               debug_dir=args.debug_dump, sink=sink)
            records = result.records
    except ConfigException as error:
        print(f'Invalid sweep: {error}')
        return EXIT_VALIDATION
    except Exception as error:
        logger.exception('run interrupted')
        records, failure = sorted(sink, key=lambda r: r.trial_id), error

    notes = {
        'command': args.command if spec is None else f'sweep {spec.name}',
        'snr_mapping': SNR_MAPPING,
        'p_max_w': cfg.p_max,
        'failed_trials': sum(not r.ok for r in records),
    }
    if result is not None:
        notes['summary'] = result.summary
    if failure is not None:
        notes['interrupted'] = f'{type(failure).__name__}: {failure}'
    manifest = RunManifest(config_hash(cfg, sweeps), cfg.seed, __version__, started_at,
                           datetime.now(timezone.utc).isoformat(), notes=notes)

    try:
        manifest = write_results(records, out, args.format, manifest,
                                 summary=None if result is None else result.summary,
                                 cdf=None if result is None else result.cdf)
    except ResultsIoError as error:
        print(f'Cannot write results: {error}')
        return EXIT_RUNTIME

    print_script_result(failure is None, notes['command'], len(records),
                        notes['failed_trials'], manifest.outputs)
    return EXIT_OK if failure is None else EXIT_RUNTIME


def print_script_result(run_worked: bool, run_name: str, n_records: int,
                        n_failed: int, outputs):
    """Prints in the console a success message if the run went well, and
       the partial outcome otherwise.

    Args:
        run_worked (bool): True if every scheduled trial ran.
        run_name (str): Name of the run.
        n_records (int): Records written.
        n_failed (int): Records tagged as failed trials.
        outputs (tuple[str, ...]): Written files.
    """

    if run_worked:
        print(f'{run_name}: {n_records} trials written ({n_failed} failed) to '
              f'{", ".join(outputs)}')
    else:
        print(f'{run_name} interrupted, {n_records} partial trials written to '
              f'{", ".join(outputs)}.\n'
              'Rerun with -v for details; the same seed reproduces every trial.')


if __name__ == '__main__':
    sys.exit(main())
