from hybrid_precoding_sim.SimulationException import SimulationException


class MetricsException(SimulationException, ValueError):
    """Defines an exception to throw if a figure of merit cannot be computed
       from the given quantities.
    """

    pass


class NonPositiveNoise(MetricsException):
    """The noise power is zero or negative."""

    pass


class ZeroChannel(MetricsException):
    """The reference channel has zero energy."""

    pass
