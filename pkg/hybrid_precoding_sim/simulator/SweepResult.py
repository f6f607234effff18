from dataclasses import dataclass, field

from hybrid_precoding_sim.metrics import MetricRecord
from hybrid_precoding_sim.simulator.SweepSpec import SweepSpec


@dataclass(frozen=True)
class SweepResult:
    """Records and aggregated rows of a sweep.

    Attributes:
        spec (SweepSpec): The executed sweep.
        records (list[MetricRecord]): Every trial, ordered by trial_id.
        summary (list[dict]): One aggregated row per swept value.
        cdf (dict[float, list[float]]): Sorted estimation errors per swept
                                        value, filled for CDF families.
    """

    spec: SweepSpec
    records: list[MetricRecord]
    summary: list[dict]
    cdf: dict = field(default_factory=dict)

    @property
    def n_failed(self) -> int:
        return sum(not r.ok for r in self.records)
