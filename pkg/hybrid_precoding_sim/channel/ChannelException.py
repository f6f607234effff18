from hybrid_precoding_sim.SimulationException import SimulationException


class ChannelException(SimulationException, ValueError):
    """Defines an exception to throw if the angle/phase model or a channel
       realization cannot be built from the given parameters.
    """

    pass


class InvalidModel(ChannelException):
    """The angle/phase model parameters violate their invariants."""

    pass


class TooFewSamples(ChannelException):
    """Not enough samples to estimate the requested statistics."""

    pass


class DegenerateVariance(ChannelException):
    """A sample variance is zero, the correlation is undefined."""

    pass


class InvalidGeometry(ChannelException):
    """Array size or element spacing is not positive."""

    pass
