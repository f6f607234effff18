from hybrid_precoding_sim.SimulationException import SimulationException


class EntropyException(SimulationException, ValueError):
    """Defines an exception to throw if an entropy of the angle/phase model
       cannot be evaluated.
    """

    pass


class InvalidSigma(EntropyException):
    """The standard deviation is not positive."""

    pass


class InvalidRho(EntropyException):
    """The correlation coefficient is outside (−1, 1)."""

    pass


class QuadratureNonConvergent(EntropyException):
    """Successive quadrature refinements kept differing beyond tolerance."""

    pass
