import logging

import numpy as np

from hybrid_precoding_sim.precoding import PrecoderSet
from hybrid_precoding_sim.combining.CombinerSet import CombinerSet
from hybrid_precoding_sim.combining.GradientState import GradientState
from hybrid_precoding_sim.combining.SolverOptions import SolverOptions
from hybrid_precoding_sim.combining.CombiningException import InfeasibleInit
from hybrid_precoding_sim.combining.utils import (
    user_channels,
    project_to_constraint,
    signal_terms,
    sum_rate_objective,
    sum_rate_gradient
)

logger = logging.getLogger(__name__)

FEASIBILITY_TOL = 1e-9


class SumRateSolver:
    """Projected gradient ascent on the sum-rate objective over the combiners.

    Every iteration steps along the gradient, projects radially back onto
    Tr{W^H·Ĥ·Ĥ^H·W} <= p_max and backtracks until the objective does not
    decrease and no user's signal term p_k·|w_k^H·Ĥ_k·f_k|² drops.

    Instance methods:
        objective(self, combiner) -> float:
            Sum-rate objective of a combiner set.
        signals(self, combiner) -> np.ndarray:
            Signal term of every user.
        solve(self, init) -> GradientState:
            Run the ascent from a feasible combiner set.
    """

    def __init__(
        self,
        precoder: PrecoderSet,
        h_est,
        sigma_n2: float,
        p_max: float,
        options: SolverOptions | None = None
    ):
        self.precoder = precoder
        self.h_est = user_channels(h_est, precoder.n_users) \
            if isinstance(h_est, np.ndarray) and h_est.ndim == 2 else list(h_est)
        self.sigma_n2 = sigma_n2
        self.p_max = p_max
        self.options = options or SolverOptions()

    def objective(self, combiner: CombinerSet) -> float:
        return sum_rate_objective(combiner, self.precoder, self.h_est, self.sigma_n2)

    def signals(self, combiner: CombinerSet) -> np.ndarray:
        return signal_terms(combiner.w_blocks, self.precoder.f, self.precoder.powers,
                            self.h_est)

    def _line_search(self, current: CombinerSet, value: float,
                     gradient: list[np.ndarray]) -> tuple[CombinerSet, float, float] | None:
        w_norm = np.sqrt(sum(np.vdot(w, w).real for w in current.w_blocks))
        g_norm = np.sqrt(sum(np.vdot(g, g).real for g in gradient))
        step = self.options.step0 * (w_norm / g_norm if w_norm > 0 else 1 / g_norm)
        floor = self.signals(current)

        for _ in range(self.options.max_backtracks):
            candidate = project_to_constraint(
                [w + step * g for w, g in zip(current.w_blocks, gradient)],
                self.h_est, self.p_max
            )
            candidate_value = self.objective(candidate)
            # No user may be starved to raise the others' rates
            if candidate_value >= value and np.all(self.signals(candidate) >= floor):
                return candidate, candidate_value, step
            step *= self.options.shrink
        return None

    def solve(self, init: CombinerSet) -> GradientState:
        """Run the projected gradient ascent.

        Args:
            init (CombinerSet): Starting combiners, inside the constraint.

        Raises:
            InfeasibleInit: If init violates the power constraint.

        Returns:
            GradientState: The final iterate. converged is False when the
                           iteration cap was reached.
        """

        if not init.is_feasible(self.p_max, tol=FEASIBILITY_TOL):
            raise InfeasibleInit(f'initial trace {init.constraint_trace:.6g} '
                                 f'exceeds p_max {self.p_max:.6g}')

        current, value, step = init, self.objective(init), 0.0
        trace = [(0, value, 0.0, True)]
        for iteration in range(1, self.options.max_iter + 1):
            gradient = sum_rate_gradient(current, self.precoder, self.h_est, self.sigma_n2)
            if not any(np.any(g) for g in gradient):
                logger.debug('zero gradient at iteration %d', iteration)
                break

            found = self._line_search(current, value, gradient)
            if found is None:
                logger.debug('no ascent step found at iteration %d', iteration)
                break

            current, new_value, step = found
            improvement = (new_value - value) / max(abs(value), np.finfo(float).tiny)
            value = new_value
            trace.append((iteration, value, step,
                          current.is_feasible(self.p_max, tol=FEASIBILITY_TOL)))
            logger.debug('iteration %d: objective %.9g, step %.3g',
                         iteration, value, step)
            if improvement < self.options.tol:
                break
        else:
            logger.warning('sum-rate solver stopped at max_iter=%d before converging',
                           self.options.max_iter)
            return GradientState(current, value, step, self.options.max_iter,
                                 False, tuple(trace))

        return GradientState(current, value, step, iteration, True, tuple(trace))


def maximize_sum_rate(
    init: CombinerSet,
    precoder: PrecoderSet,
    h_est,
    sigma_n2: float,
    p_max: float,
    options: SolverOptions | None = None
) -> GradientState:
    """Maximize the sum-rate objective over the combiners from init.

    Args:
        init (CombinerSet): Feasible starting combiners.
        precoder (PrecoderSet): The fixed hybrid precoder.
        h_est (array_like | list): The estimated channels.
        sigma_n2 (float): Noise variance.
        p_max (float): Bound on Tr{W^H·Ĥ·Ĥ^H·W}.
        options (SolverOptions, optional): Step, shrink, tol and max_iter.

    Returns:
        GradientState: The final iterate with its objective trace.
    """

    return SumRateSolver(precoder, h_est, sigma_n2, p_max, options).solve(init)
