from dataclasses import dataclass

import numpy as np

from hybrid_precoding_sim.numerics import CMatrix, frobenius_norm


@dataclass(frozen=True)
class PrecoderSet:
    """Hybrid precoder: analog stage, digital stage and power allocation.

    Attributes:
        f_rf (CMatrix): N_T x N_RF analog precoder, entries of modulus 1/√N_T.
        f_bb (CMatrix): N_RF x K digital precoder, already scaled by beta.
        p_tr (np.ndarray): K x K diagonal transmit power allocation (watts).
        beta (float): Normalization applied to the digital stage.
        rank_deficient (bool): The analog stage had to pad constant columns.
    """

    f_rf: CMatrix
    f_bb: CMatrix
    p_tr: np.ndarray
    beta: float
    rank_deficient: bool = False

    @property
    def f(self) -> CMatrix:
        """Composite N_T x K precoder F_RF·F_BB."""

        return self.f_rf @ self.f_bb

    @property
    def powers(self) -> np.ndarray:
        return np.real(np.diag(self.p_tr))

    @property
    def n_users(self) -> int:
        return self.f_bb.shape[1]

    def satisfies_constraints(self, p_max: float, *, streams: int = 1,
                              tol: float = 1e-9) -> bool:
        """Check the unit-modulus, power and normalization constraints.

        Args:
            p_max (float): Bound on the Frobenius norm of p_tr.
            streams (int, optional): Streams per user M. Defaults to 1.
            tol (float, optional): Relative tolerance.

        Returns:
            bool: True if all three constraints hold.
        """

        n_tx = self.f_rf.shape[0]
        modulus_ok = np.allclose(np.abs(self.f_rf), 1 / np.sqrt(n_tx),
                                 rtol=tol, atol=0)
        power_ok = frobenius_norm(self.p_tr) <= p_max * (1 + tol)
        target = self.n_users * streams
        norm_ok = abs(frobenius_norm(self.f) ** 2 - target) <= tol * target
        return bool(modulus_ok and power_ok and norm_ok)
