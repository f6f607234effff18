import csv
import json

from hybrid_precoding_sim.metrics import MetricRecord
from hybrid_precoding_sim.result_writers.ResultWriter import ResultWriter
from hybrid_precoding_sim.result_writers.RunManifest import RunManifest
from hybrid_precoding_sim.result_writers.ResultsIoError import ResultsIoError


class CsvResultWriter(ResultWriter):
    """Writes one CSV row per trial, the manifest going to a JSON sidecar
       next to the file (<path>.manifest.json).

    Instance methods:
        write(self, records, manifest) -> RunManifest:
            Write the records and the manifest sidecar.
        write_summary(self, rows) -> Path:
            Write aggregated sweep rows to <path>.summary.csv.
        write_cdf(self, samples) -> Path:
            Write sorted CDF samples to <path>.cdf.csv.
    """

    def write(self, records: list[MetricRecord], manifest: RunManifest) -> RunManifest:
        sidecar = self.path.with_name(self.path.name + '.manifest.json')
        manifest = self._stamped(manifest, self.path, sidecar)
        try:
            with open(self.path, 'w', newline='') as file:
                writer = csv.DictWriter(file, fieldnames=self.COLUMNS, lineterminator='\n')
                writer.writeheader()
                for record in records:
                    writer.writerow(self.record_row(record))
            with open(sidecar, 'w') as file:
                json.dump(self.json_safe(manifest.as_dict()), file, indent=2, sort_keys=True,
                          allow_nan=False)
        except OSError as error:
            raise ResultsIoError(f'cannot write {self.path}: {error}') from error
        return manifest

    def write_summary(self, rows: list[dict]):
        """Write aggregated sweep rows to <path>.summary.csv.

        Args:
            rows (list[dict]): Rows sharing the same keys.

        Raises:
            ResultsIoError: If the file cannot be written.

        Returns:
            Path: The summary path.
        """

        target = self.path.with_name(self.path.name + '.summary.csv')
        columns = list(rows[0]) if rows else []
        try:
            with open(target, 'w', newline='') as file:
                writer = csv.DictWriter(file, fieldnames=columns, lineterminator='\n')
                writer.writeheader()
                for row in rows:
                    writer.writerow({
                        key: self.format_float(value) if isinstance(value, float) else value
                        for key, value in row.items()
                    })
        except OSError as error:
            raise ResultsIoError(f'cannot write {target}: {error}') from error
        return target

    def write_cdf(self, samples: dict):
        target = self.path.with_name(self.path.name + '.cdf.csv')
        try:
            with open(target, 'w', newline='') as file:
                writer = csv.writer(file, lineterminator='\n')
                writer.writerow(('sweep_value', 'est_error', 'cdf'))
                for value, sample in samples.items():
                    n = len(sample)
                    for i, x in enumerate(sample, start=1):
                        writer.writerow((self.format_float(value),
                                         self.format_float(x),
                                         self.format_float(i / n)))
        except OSError as error:
            raise ResultsIoError(f'cannot write {target}: {error}') from error
        return target
