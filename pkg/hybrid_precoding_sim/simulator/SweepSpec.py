from dataclasses import dataclass

import numpy as np

from hybrid_precoding_sim.simulator.ConfigException import ValidationError
from hybrid_precoding_sim.simulator.SimConfig import CONFIG_KEYS

# Experiment family -> (default swept key, default values, default fixed keys)
FAMILIES = {
    'spacing': ('array.spacing_wavelengths', (0.25, 0.5, 0.75, 1.0), ()),
    'interference_vs_distance': ('channel.distance_m', (10.0, 20.0, 50.0, 100.0, 200.0), ()),
    'snr_sumrate': ('power.snr_db', (0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0), ()),
    'mismatch_sinr': ('channel.mismatch_theta_deg', (1.0, 4.0, 7.0, 10.0, 13.0),
                      (('interference.inr_db', -10.0),)),
    'mismatch_ber': ('channel.mismatch_theta_deg', (5.0, 8.0, 12.0), ()),
    'est_error_cdf': ('channel.mismatch_theta_deg', (0.0, 12.0), ()),
    'beams_ber': ('array.n_rf', (8.0, 12.0, 16.0), (('channel.mismatch_theta_deg', 8.0),)),
}

# Families reporting the full sorted sample instead of percentiles only
CDF_FAMILIES = ('est_error_cdf',)


@dataclass(frozen=True)
class SweepSpec:
    """One named experiment: a configuration key swept over values.

    Attributes:
        name (str): Sweep name, as referenced on the command line.
        family (str): Experiment family, one of FAMILIES.
        variable (str): Dotted configuration key being swept.
        values (tuple[float, ...]): Strictly monotone swept values.
        fixed (tuple[tuple[str, object], ...]): Configuration keys held at
                                                a fixed value for the sweep.
    """

    name: str
    family: str
    variable: str
    values: tuple[float, ...]
    fixed: tuple = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError(f'sweep {self.name!r}: unknown family {self.family!r}, '
                                  f'expected one of {sorted(FAMILIES)}')
        if self.variable not in CONFIG_KEYS:
            raise ValidationError(f'sweep {self.name!r}: unknown variable {self.variable!r}')
        for key, _ in self.fixed:
            if key not in CONFIG_KEYS:
                raise ValidationError(f'sweep {self.name!r}: unknown fixed key {key!r}')
        if len(self.values) == 0:
            raise ValidationError(f'sweep {self.name!r}: no values to sweep')
        steps = np.diff(np.asarray(self.values, dtype=float))
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise ValidationError(f'sweep {self.name!r}: values must be strictly monotone')

    @property
    def is_cdf(self) -> bool:
        return self.family in CDF_FAMILIES

    @classmethod
    def for_family(cls, family: str, *, values=None, name: str | None = None) -> 'SweepSpec':
        """Sweep of a family with its default variable, values and fixed keys."""

        if family not in FAMILIES:
            raise ValidationError(f'unknown sweep family {family!r}, '
                                  f'expected one of {sorted(FAMILIES)}')
        variable, default_values, fixed = FAMILIES[family]
        values = default_values if values is None else tuple(float(v) for v in values)
        return cls(name or family, family, variable, tuple(values), fixed)
