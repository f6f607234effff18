from dataclasses import dataclass


@dataclass(frozen=True)
class SolverOptions:
    """Tuning of the projected gradient ascent.

    Attributes:
        step0 (float): Initial step, relative to ‖W‖/‖∇‖.
        shrink (float): Backtracking contraction factor, in (0, 1).
        tol (float): Relative objective improvement under which the solver
                     stops.
        max_iter (int): Iteration cap, reported as non converged when hit.
        max_backtracks (int): Step reductions tried before giving up on an
                              iteration.
    """

    step0: float = 1.0
    shrink: float = 0.5
    tol: float = 1e-6
    max_iter: int = 200
    max_backtracks: int = 50

    def __post_init__(self):
        if not self.step0 > 0:
            raise ValueError(f'step0 must be positive, got {self.step0}')
        if not 0 < self.shrink < 1:
            raise ValueError(f'shrink must be within (0, 1), got {self.shrink}')
        if not self.tol > 0:
            raise ValueError(f'tol must be positive, got {self.tol}')
        if self.max_iter < 1 or self.max_backtracks < 1:
            raise ValueError('max_iter and max_backtracks must be at least 1')
