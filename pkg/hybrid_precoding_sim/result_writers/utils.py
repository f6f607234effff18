"""Defines util functions writing results and debug artifacts.

Functions:
    get_writer(path, fmt) -> ResultWriter:
        Result writer for the requested format.
    write_results(records, path, fmt, manifest, *, summary=None, cdf=None) -> RunManifest:
        Write the records in the requested format with the sweep side files.
    format_matrix(m) -> str:
        One line per row, entries written as re+imj.
    write_debug_dump(directory, trial_id, f_rf, f_bb, w_rf, trace) -> list[Path]:
        Per-trial precoder/combiner matrices and solver trace.
"""

import csv
from pathlib import Path

import numpy as np

from hybrid_precoding_sim.metrics import MetricRecord
from hybrid_precoding_sim.result_writers.ResultWriter import ResultWriter
from hybrid_precoding_sim.result_writers.CsvResultWriter import CsvResultWriter
from hybrid_precoding_sim.result_writers.JsonResultWriter import JsonResultWriter
from hybrid_precoding_sim.result_writers.ResultsIoError import ResultsIoError
from hybrid_precoding_sim.result_writers.RunManifest import RunManifest

WRITERS = {
    'csv': CsvResultWriter,
    'json': JsonResultWriter,
}


def get_writer(path, fmt: str) -> ResultWriter:
    if fmt not in WRITERS:
        raise ValueError(f'unknown results format {fmt!r}, expected one of {sorted(WRITERS)}')
    return WRITERS[fmt](path)


def write_results(records: list[MetricRecord], path, fmt: str, manifest: RunManifest, *,
                  summary: list[dict] | None = None,
                  cdf: dict | None = None) -> RunManifest:
    """Write the records, and for CSV the sweep summary and CDF side files.

    Args:
        records (list[MetricRecord]): The records, in trial_id order.
        path (str | Path): The results file.
        fmt (str): 'csv' or 'json'.
        manifest (RunManifest): Provenance of the run.
        summary (list[dict], optional): Aggregated sweep rows.
        cdf (dict, optional): Sorted samples per swept value.

    Raises:
        ValueError: On an unknown format.
        ResultsIoError: If a file cannot be written.

    Returns:
        RunManifest: The manifest completed with the written paths.
    """

    writer = get_writer(path, fmt)
    manifest = writer.write(records, manifest)
    if isinstance(writer, CsvResultWriter):
        if summary is not None:
            writer.write_summary(summary)
        if cdf:
            writer.write_cdf(cdf)
    return manifest


def format_matrix(m) -> str:
    m = np.atleast_2d(np.asarray(m, dtype=np.complex128))
    return '\n'.join(
        ' '.join(f'{z.real:.9g}{z.imag:+.9g}j' for z in row) for row in m
    ) + '\n'


def write_debug_dump(directory, trial_id: int, f_rf, f_bb, w_rf, trace) -> list[Path]:
    """Write the matrices and solver trace of one trial.

    Args:
        directory (str | Path): Dump directory, created if missing.
        trial_id (int): Trial whose artifacts are written.
        f_rf (array_like): Analog precoder.
        f_bb (array_like): Digital precoder.
        w_rf (array_like): Block-diagonal combiner.
        trace (iterable): (iteration, objective, step, feasible) rows.

    Raises:
        ResultsIoError: If the files cannot be written.

    Returns:
        list[Path]: The written files.
    """

    directory = Path(directory)
    written = []
    try:
        directory.mkdir(parents=True, exist_ok=True)
        for name, matrix in (('f_rf', f_rf), ('f_bb', f_bb), ('w_rf', w_rf)):
            target = directory / f'trial_{trial_id}_{name}.txt'
            target.write_text(format_matrix(matrix))
            written.append(target)
        target = directory / f'trial_{trial_id}_trace.csv'
        with open(target, 'w', newline='') as file:
            writer = csv.writer(file, lineterminator='\n')
            writer.writerow(('iteration', 'objective', 'step', 'feasible'))
            for iteration, objective, step, feasible in trace:
                writer.writerow((iteration, f'{objective:.9g}', f'{step:.9g}',
                                 'true' if feasible else 'false'))
        written.append(target)
    except OSError as error:
        raise ResultsIoError(f'cannot write debug dump to {directory}: {error}') from error
    return written
