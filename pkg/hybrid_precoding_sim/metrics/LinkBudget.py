from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LinkBudget:
    """Per-user post-combining signal, interference and noise powers."""

    signal: np.ndarray
    interference: np.ndarray
    noise: np.ndarray

    @property
    def sinr(self) -> np.ndarray:
        denominator = self.interference + self.noise
        return np.divide(self.signal, denominator,
                         out=np.zeros_like(self.signal), where=denominator > 0)
