from dataclasses import dataclass, field

from hybrid_precoding_sim.combining.CombinerSet import CombinerSet


@dataclass(frozen=True)
class GradientState:
    """Outcome of the combiner solver.

    Attributes:
        iterate (CombinerSet): The last accepted combiners.
        objective (float): Sum-rate objective at the iterate, bits/s/Hz.
        step (float): Last accepted step length, 0 if none was accepted.
        iteration (int): Number of iterations run.
        converged (bool): False when the iteration cap was hit.
        trace (tuple): (iteration, objective, step, feasible) of the start
                       point and every accepted iterate.
    """

    iterate: CombinerSet
    objective: float
    step: float
    iteration: int
    converged: bool
    trace: tuple = field(default=(), compare=False, repr=False)

    @property
    def objective_trace(self) -> list[float]:
        return [row[1] for row in self.trace]
