from dataclasses import dataclass, field, asdict

from hybrid_precoding_sim.entropy import EntropyReport

# Metrics left undefined by a failed trial
NAN_FIELDS = ('sum_rate', 'worst_case_sinr', 'interference_power', 'ber', 'est_error',
              'objective')


@dataclass(frozen=True)
class MetricRecord:
    """Figures of merit of one Monte-Carlo trial.

    Rates are in bits/s/Hz, SINR and interference in dB, entropies in nats.
    A failed trial keeps its id and sweep coordinates, carries the failure
    tag and leaves the metrics as NaN.
    """

    trial_id: int
    sum_rate: float
    per_user_sinr: tuple[float, ...]
    worst_case_sinr: float
    interference_power: float
    ber: float
    est_error: float
    entropy: EntropyReport | None
    converged: bool
    iterations: int
    sweep_var: str = ''
    sweep_value: float | None = None
    failure: str | None = None
    re_estimated: bool = False
    objective: float = float('nan')
    solver_trace: tuple = field(default=(), compare=False, repr=False)

    @classmethod
    def failed(cls, trial_id: int, failure: str, *, sweep_var: str = '',
               sweep_value: float | None = None) -> 'MetricRecord':
        nan = float('nan')
        return cls(trial_id, nan, (), nan, nan, nan, nan, None, False, 0,
                   sweep_var=sweep_var, sweep_value=sweep_value, failure=failure)

    @property
    def ok(self) -> bool:
        return self.failure is None

    def as_dict(self) -> dict:
        record = asdict(self)
        record.pop('solver_trace')
        record['per_user_sinr'] = list(self.per_user_sinr)
        return record

    @classmethod
    def from_dict(cls, record: dict) -> 'MetricRecord':
        record = dict(record)
        entropy = record.get('entropy')
        record['entropy'] = EntropyReport(**entropy) if entropy else None
        record['per_user_sinr'] = tuple(record.get('per_user_sinr', ()))
        for name in NAN_FIELDS:
            if name in record and record[name] is None:
                record[name] = float('nan')
        return cls(**record)
