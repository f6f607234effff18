class SimulationException(Exception):
    """Defines the base exception thrown when a step of the hybrid precoding
       pipeline cannot be carried out with the given inputs.
    """

    pass
