from hybrid_precoding_sim.SimulationException import SimulationException


class NumericsException(SimulationException, ArithmeticError):
    """Defines an exception to throw if a complex matrix primitive cannot be
       evaluated on its input.
    """

    pass


class NotHermitian(NumericsException, ValueError):
    """The matrix departs from its conjugate transpose beyond tolerance."""

    pass


class NotFinite(NumericsException, ValueError):
    """The matrix holds NaN or infinite entries."""

    pass


class Singular(NumericsException):
    """The system matrix is numerically rank deficient."""

    pass


class DimensionMismatch(NumericsException, ValueError):
    """The operands are not conformable."""

    pass
