from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from hybrid_precoding_sim.numerics import CMatrix, frobenius_norm


@dataclass(frozen=True)
class CombinerSet:
    """Per-user RF combiners with the equivalent channel they produce.

    Attributes:
        w_blocks (tuple[np.ndarray, ...]): Combining vector w_k ∈ C^{N_R} of
                                           every user.
        h_eq (CMatrix): K x N_T equivalent channel W_RF^H·Ĥ, row k equal to
                        w_k^H·Ĥ_k.
    """

    w_blocks: tuple
    h_eq: CMatrix

    @property
    def n_users(self) -> int:
        return len(self.w_blocks)

    @property
    def w_rf(self) -> CMatrix:
        """Block-diagonal K·N_R x K combining matrix."""

        return block_diag(*(w.reshape(-1, 1) for w in self.w_blocks)).astype(np.complex128)

    @property
    def constraint_trace(self) -> float:
        # Tr{W^H·Ĥ·Ĥ^H·W} = ‖W^H·Ĥ‖_F²
        return frobenius_norm(self.h_eq) ** 2

    def is_feasible(self, p_max: float, *, tol: float = 1e-9) -> bool:
        return self.constraint_trace <= p_max + tol
