from hybrid_precoding_sim.SimulationException import SimulationException


class PrecodingException(SimulationException, ValueError):
    """Defines an exception to throw if the analog or digital precoder cannot
       be designed.
    """

    pass


class RankDeficient(PrecodingException):
    """The covariance has fewer significant eigenvalues than RF chains."""

    pass


class NonPositiveBudget(PrecodingException):
    """The transmit power budget is not positive."""

    pass
