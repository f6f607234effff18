"""Package used to synthesize the correlated angle/phase multipath channels.

Modules:
    AnglePhaseModel: Bivariate Gaussian model of the path angle and phase.
    PathSet: Gains and wrapped angles of the paths of one user.
    ChannelRealization: True and estimated channel of one user.
    utils: Sampling, fitting, array responses and channel synthesis.
    ChannelException: Errors raised while building channels.
"""

from hybrid_precoding_sim.channel.AnglePhaseModel import AnglePhaseModel
from hybrid_precoding_sim.channel.PathSet import PathSet
from hybrid_precoding_sim.channel.ChannelRealization import ChannelRealization
from hybrid_precoding_sim.channel.ChannelException import (
    ChannelException,
    InvalidModel,
    TooFewSamples,
    DegenerateVariance,
    InvalidGeometry
)
from hybrid_precoding_sim.channel.utils import (
    PATH_LOSS_EXPONENT,
    sample_angle_phase,
    wrap_angle_phase,
    conditional_moments,
    fit_mle,
    array_response,
    trig_channel_vector,
    default_composition,
    draw_paths,
    redraw_gains,
    synthesize_channel,
    rayleigh_iid
)
