from dataclasses import dataclass

import numpy as np

from hybrid_precoding_sim.channel.ChannelException import InvalidModel


@dataclass(frozen=True)
class PathSet:
    """Propagation paths of one user: complex gains and wrapped angle/phase.

    Attributes:
        gains (np.ndarray): Complex gain α_n of every path.
        thetas (np.ndarray): Path angles wrapped to [−π, π].
        phis (np.ndarray): Path phases wrapped to [0, 2π].
        composition (tuple[int, int, int, int]): Number of LOS, reflected,
            diffracted and scattered paths, summing to the path count.
    """

    gains: np.ndarray
    thetas: np.ndarray
    phis: np.ndarray
    composition: tuple[int, int, int, int]

    def __post_init__(self):
        n_paths = len(self.gains)
        if n_paths < 1:
            raise InvalidModel('a path set needs at least one path')
        if len(self.thetas) != n_paths or len(self.phis) != n_paths:
            raise InvalidModel('gains, thetas and phis must have equal length')
        if sum(self.composition) != n_paths:
            raise InvalidModel(f'composition {self.composition} does not sum '
                               f'to {n_paths} paths')
        if not np.all(np.isfinite(self.gains)):
            raise InvalidModel('path gains must be finite')
        if np.any(np.abs(self.thetas) > np.pi) \
                or np.any(self.phis < 0) or np.any(self.phis > 2 * np.pi):
            raise InvalidModel('path angles must be wrapped to their supports')

    @property
    def n_paths(self) -> int:
        return len(self.gains)

    def with_gains(self, gains: np.ndarray) -> 'PathSet':
        """Copy of the path set with the same geometry and new gains."""

        return PathSet(np.asarray(gains, dtype=complex), self.thetas,
                       self.phis, self.composition)
