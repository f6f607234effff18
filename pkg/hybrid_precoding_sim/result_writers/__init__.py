"""Package writing trial records, sweep summaries and debug artifacts.

Modules:
    ResultWriter: Abstract results writer with the fixed column schema.
    CsvResultWriter: CSV records with a JSON manifest sidecar.
    JsonResultWriter: JSON envelope with the manifest.
    RunManifest: Provenance of a results file.
    utils: Writer selection and debug dumps.
    ResultsIoError: Errors raised while writing or reading results.
"""

from hybrid_precoding_sim.result_writers.ResultWriter import ResultWriter
from hybrid_precoding_sim.result_writers.CsvResultWriter import CsvResultWriter
from hybrid_precoding_sim.result_writers.JsonResultWriter import JsonResultWriter
from hybrid_precoding_sim.result_writers.RunManifest import RunManifest
from hybrid_precoding_sim.result_writers.ResultsIoError import ResultsIoError
from hybrid_precoding_sim.result_writers.utils import (
    WRITERS,
    get_writer,
    write_results,
    format_matrix,
    write_debug_dump
)
