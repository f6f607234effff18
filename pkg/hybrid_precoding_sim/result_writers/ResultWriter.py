from abc import ABC, abstractmethod
from dataclasses import replace
from math import isfinite, isnan
from pathlib import Path

from hybrid_precoding_sim.metrics import MetricRecord
from hybrid_precoding_sim.result_writers.RunManifest import RunManifest
from hybrid_precoding_sim.result_writers.ResultsIoError import ResultsIoError


class ResultWriter(ABC):
    """Base abstract class defining how trial records are written to a
       results file.

    Instance methods:
        __init__(self, path):
            Set and verify the destination of the results.
        write(self, records, manifest) -> RunManifest:
            Abstract method writing the records with their manifest.
        _stamped(self, manifest, *paths) -> RunManifest:
            Copy of the manifest listing the written paths.

    Class methods:
        record_row(record) -> dict:
            Flat row of a record, keyed by COLUMNS.
        json_safe(value) -> object:
            JSON-bound value with non-finite floats set to None.
        format_float(value) -> str:
            Text form of a float with 9 significant digits.
    """

    COLUMNS = (
        'trial_id', 'sweep_var', 'sweep_value', 'sum_rate_bpshz',
        'worst_sinr_db', 'interference_db', 'ber', 'est_error', 's_theta',
        's_phi', 's_joint_quad', 's_joint_eq21', 's_cond', 'converged',
        'iterations'
    )

    def __init__(self, path):
        """Set and verify the destination of the results.

        Args:
            path (str | Path): The results file. Its directory must exist.

        Raises:
            ResultsIoError: If the directory does not exist or the path is a
                            directory.
        """

        path = Path(path)
        if not path.parent.is_dir():
            raise ResultsIoError(f'output directory {path.parent} does not exist')
        if path.is_dir():
            raise ResultsIoError(f'output path {path} is a directory')
        self._path = path

    @property
    def path(self) -> Path:
        return self._path

    @abstractmethod
    def write(self, records: list[MetricRecord], manifest: RunManifest) -> RunManifest:
        """Abstract method writing the records with their manifest.

        Args:
            records (list[MetricRecord]): The records, in trial_id order.
            manifest (RunManifest): Provenance of the run.

        Raises:
            ResultsIoError: If the file cannot be written.

        Returns:
            RunManifest: The manifest completed with the written paths.
        """

        pass

    def _stamped(self, manifest: RunManifest, *paths: Path) -> RunManifest:
        outputs = tuple(dict.fromkeys((*manifest.outputs, *(str(p) for p in paths))))
        return replace(manifest, outputs=outputs)

    @staticmethod
    def json_safe(value):
        """Copy of a JSON-bound value with NaN and infinities replaced by None."""

        if isinstance(value, float) and not isfinite(value):
            return None
        if isinstance(value, dict):
            return {key: ResultWriter.json_safe(item) for key, item in value.items()}
        if isinstance(value, (list, tuple)):
            return [ResultWriter.json_safe(item) for item in value]
        return value

    @staticmethod
    def format_float(value: float | None) -> str:
        if value is None:
            return ''
        if isnan(value):
            return 'nan'
        return f'{value:.9g}'

    @staticmethod
    def record_row(record: MetricRecord) -> dict:
        """Flat row of a record, keyed by COLUMNS.

        Args:
            record (MetricRecord): The trial record.

        Returns:
            dict: Text values of the row, converged set to 'failed' for a
                  failed trial.
        """

        fmt = ResultWriter.format_float
        entropy = record.entropy
        if record.ok:
            converged = 'true' if record.converged else 'false'
        else:
            converged = 'failed'
        nan = float('nan')
        return {
            'trial_id': str(record.trial_id),
            'sweep_var': record.sweep_var,
            'sweep_value': fmt(record.sweep_value),
            'sum_rate_bpshz': fmt(record.sum_rate),
            'worst_sinr_db': fmt(record.worst_case_sinr),
            'interference_db': fmt(record.interference_power),
            'ber': fmt(record.ber),
            'est_error': fmt(record.est_error),
            's_theta': fmt(entropy.s_theta if entropy else nan),
            's_phi': fmt(entropy.s_phi if entropy else nan),
            's_joint_quad': fmt(entropy.s_joint_quadrature if entropy else nan),
            's_joint_eq21': fmt(entropy.s_joint_corrected_sum if entropy else nan),
            's_cond': fmt(entropy.s_cond_phi_given_theta if entropy else nan),
            'converged': converged,
            'iterations': str(record.iterations),
        }
