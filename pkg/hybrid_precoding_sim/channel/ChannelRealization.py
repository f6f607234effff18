from dataclasses import dataclass

from hybrid_precoding_sim.channel.PathSet import PathSet
from hybrid_precoding_sim.numerics import CMatrix


@dataclass(frozen=True)
class ChannelRealization:
    """True and estimated N_R x N_T channel of one user.

    The estimate is synthesized from the same paths with every angle shifted
    by mismatch_theta, so a zero mismatch yields an identical estimate.
    """

    h_true: CMatrix
    h_est: CMatrix
    paths: PathSet
    mismatch_theta: float
