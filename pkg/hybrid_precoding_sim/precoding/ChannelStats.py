from dataclasses import dataclass

import numpy as np

from hybrid_precoding_sim.numerics import CMatrix


@dataclass(frozen=True)
class ChannelStats:
    """Second-order statistics of the estimated channel vectors.

    Attributes:
        mu_vec (np.ndarray): Mean channel vector.
        r_cov (CMatrix): Hermitian PSD spatial covariance.
        n_samples (int): Number of vectors the statistics come from.
    """

    mu_vec: np.ndarray
    r_cov: CMatrix
    n_samples: int

    @property
    def dimension(self) -> int:
        return self.r_cov.shape[0]
