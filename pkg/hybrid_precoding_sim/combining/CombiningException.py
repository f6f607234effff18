from hybrid_precoding_sim.SimulationException import SimulationException


class CombiningException(SimulationException, ValueError):
    """Exception raised while designing the receive combiners."""

    pass


class InfeasibleInit(CombiningException):
    """The solver was started outside the combiner power constraint."""

    pass
