from dataclasses import dataclass


@dataclass(frozen=True)
class ComplexityReport:
    """Mean wall time of a trial per number of transmit antennas.

    Attributes:
        n_tx_values (tuple[int, ...]): Timed antenna counts.
        seconds (tuple[float, ...]): Mean trial wall time for each count.
        slope (float | None): Log-log slope of time against N_T, None when
                              fewer than two distinct counts were timed.
    """

    n_tx_values: tuple[int, ...]
    seconds: tuple[float, ...]
    slope: float | None

    @property
    def slope_text(self) -> str:
        return 'n/a' if self.slope is None else f'{self.slope:.3f}'

    def rows(self) -> list[dict]:
        return [{'n_tx': n, 'seconds': s} for n, s in zip(self.n_tx_values, self.seconds)]
