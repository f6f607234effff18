"""Package computing the differential, joint and conditional entropy of the
   angle/phase model.

Modules:
    EntropyReport: Per-model collection of entropies in nats.
    utils: Closed forms, quadrature oracle and the re-estimation trigger.
    EntropyException: Errors raised by the entropy computations.
"""

from hybrid_precoding_sim.entropy.EntropyReport import EntropyReport
from hybrid_precoding_sim.entropy.EntropyException import (
    EntropyException,
    InvalidSigma,
    InvalidRho,
    QuadratureNonConvergent
)
from hybrid_precoding_sim.entropy.utils import (
    TRIGGER_MARGIN,
    gauss_legendre_nodes,
    integrate_2d,
    entropy_1d,
    entropy_1d_quadrature,
    joint_entropy_quadrature,
    joint_entropy_closed_form,
    joint_entropy_corrected_sum,
    conditional_entropy,
    entropy_report,
    default_trigger_tau,
    should_re_estimate
)
