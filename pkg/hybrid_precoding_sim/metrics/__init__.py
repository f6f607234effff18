"""Package computing the per-trial figures of merit.

Modules:
    MetricRecord: One row of trial results.
    LinkBudget: Per-user signal, interference and noise powers.
    utils: Rates, BER, estimation error and interference power.
    MetricsException: Errors raised while computing the metrics.
"""

from hybrid_precoding_sim.metrics.MetricRecord import MetricRecord
from hybrid_precoding_sim.metrics.LinkBudget import LinkBudget
from hybrid_precoding_sim.metrics.MetricsException import (
    MetricsException,
    NonPositiveNoise,
    ZeroChannel
)
from hybrid_precoding_sim.metrics.utils import (
    DB_FLOOR,
    to_db,
    per_user_rate,
    estimation_error,
    q_function,
    qpsk_ber_theory,
    qpsk_ber,
    interference_power_db,
    link_budget
)
