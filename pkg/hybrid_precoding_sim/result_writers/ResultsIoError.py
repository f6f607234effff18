from hybrid_precoding_sim.SimulationException import SimulationException


class ResultsIoError(SimulationException, OSError):
    """Defines an exception to throw if the results could not be written
       or read back.
    """

    pass
