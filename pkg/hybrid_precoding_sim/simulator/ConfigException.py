from hybrid_precoding_sim.SimulationException import SimulationException


class ConfigException(SimulationException, ValueError):
    """Exception raised for an unusable simulation configuration."""

    pass


class ParseError(ConfigException):
    """A configuration statement could not be parsed.

    Attributes:
        line (int | None): 1-based line of the offending statement.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f'line {line}: {message}')
        self.line = line


class ValidationError(ConfigException):
    """A configuration value is unknown or violates an invariant."""

    pass
