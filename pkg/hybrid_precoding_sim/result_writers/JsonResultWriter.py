import json

from hybrid_precoding_sim.metrics import MetricRecord
from hybrid_precoding_sim.result_writers.ResultWriter import ResultWriter
from hybrid_precoding_sim.result_writers.RunManifest import RunManifest
from hybrid_precoding_sim.result_writers.ResultsIoError import ResultsIoError


class JsonResultWriter(ResultWriter):
    """Writes the records inside a JSON envelope carrying the manifest.

    The envelope is {"manifest": ..., "columns": [...], "records": [...]},
    records keeping every MetricRecord field at full precision. Metrics of
    failed trials are written as null so the file stays strict JSON.

    Instance methods:
        write(self, records, manifest) -> RunManifest:
            Write the envelope.

    Class methods:
        read(path) -> tuple[RunManifest, list[MetricRecord]]:
            Read an envelope back.
    """

    def write(self, records: list[MetricRecord], manifest: RunManifest) -> RunManifest:
        manifest = self._stamped(manifest, self.path)
        envelope = self.json_safe({
            'manifest': manifest.as_dict(),
            'columns': list(self.COLUMNS),
            'records': [record.as_dict() for record in records],
        })
        try:
            with open(self.path, 'w') as file:
                json.dump(envelope, file, indent=2, allow_nan=False)
        except OSError as error:
            raise ResultsIoError(f'cannot write {self.path}: {error}') from error
        return manifest

    @staticmethod
    def read(path) -> tuple[RunManifest, list[MetricRecord]]:
        try:
            with open(path) as file:
                envelope = json.load(file)
        except (OSError, json.JSONDecodeError) as error:
            raise ResultsIoError(f'cannot read {path}: {error}') from error
        return (RunManifest.from_dict(envelope['manifest']),
                [MetricRecord.from_dict(r) for r in envelope['records']])
