"""Package designing the per-user RF combiners.

Modules:
    CombinerSet: Per-user combiners and their equivalent channel.
    GradientState: Outcome of the combiner solver.
    SolverOptions: Tuning of the gradient ascent.
    SumRateSolver: Projected gradient ascent with backtracking.
    utils: Closed-form combiner, sum-rate objective and its gradient.
    CombiningException: Errors raised by the combiner design.
"""

from hybrid_precoding_sim.combining.CombinerSet import CombinerSet
from hybrid_precoding_sim.combining.GradientState import GradientState
from hybrid_precoding_sim.combining.SolverOptions import SolverOptions
from hybrid_precoding_sim.combining.CombiningException import (
    CombiningException,
    InfeasibleInit
)
from hybrid_precoding_sim.combining.utils import (
    user_channels,
    equivalent_channel,
    make_combiner,
    project_to_constraint,
    closed_form_combiner,
    combiner_from_closed_form,
    signal_terms,
    sum_rate_objective,
    sum_rate_gradient,
    gradient_norm,
    stationarity_ratio,
    alpha_weights,
    log_utility_curvature
)
from hybrid_precoding_sim.combining.SumRateSolver import (
    SumRateSolver,
    maximize_sum_rate
)
