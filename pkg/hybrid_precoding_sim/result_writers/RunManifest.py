from dataclasses import dataclass, field, asdict


@dataclass(frozen=True)
class RunManifest:
    """Provenance of a results file.

    Attributes:
        config_hash (str): sha256 of the canonical configuration, stable
                           under key reordering.
        seed (int): Master seed of the run.
        artifact_version (str): Version of the package that wrote the file.
        started_at (str): ISO-8601 start timestamp.
        finished_at (str): ISO-8601 end timestamp.
        outputs (tuple[str, ...]): Paths written by the run.
        notes (dict): Free-form metadata such as the SNR mapping.
    """

    config_hash: str
    seed: int
    artifact_version: str
    started_at: str
    finished_at: str
    outputs: tuple[str, ...] = ()
    notes: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        manifest = asdict(self)
        manifest['outputs'] = list(self.outputs)
        return manifest

    @classmethod
    def from_dict(cls, manifest: dict) -> 'RunManifest':
        manifest = dict(manifest)
        manifest['outputs'] = tuple(manifest.get('outputs', ()))
        return cls(**manifest)
