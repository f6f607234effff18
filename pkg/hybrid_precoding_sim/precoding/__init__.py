"""Package designing the hybrid precoder from the estimated channels.

Modules:
    ChannelStats: Mean and covariance of the estimated channel vectors.
    PrecoderSet: Analog/digital precoders with their power allocation.
    utils: EVD analog stage, MMSE digital stage and power allocation.
    PrecodingException: Errors raised by the precoder design.
"""

from hybrid_precoding_sim.precoding.ChannelStats import ChannelStats
from hybrid_precoding_sim.precoding.PrecoderSet import PrecoderSet
from hybrid_precoding_sim.precoding.PrecodingException import (
    PrecodingException,
    RankDeficient,
    NonPositiveBudget
)
from hybrid_precoding_sim.precoding.utils import (
    channel_stats,
    dominant_subspace,
    project_unit_modulus,
    rf_precoder,
    mmse_direction,
    mmse_baseband,
    mmse_gamma,
    allocate_power,
    build_precoder
)
