"""Package running the seeded Monte-Carlo precoding experiments.

Modules:
    SimConfig: Configuration of a run, with the dotted-key table.
    SweepSpec: One named experiment sweep.
    SweepResult: Records and aggregated rows of a sweep.
    ComplexityReport: Trial wall time against N_T.
    utils: Trial execution, sweeps, aggregation and the complexity timing.
    ConfigException: Errors raised for unusable configurations.
"""

from hybrid_precoding_sim.simulator.SimConfig import (
    SimConfig,
    CONFIG_KEYS,
    TAU_OFF,
    TAU_DEFAULT
)
from hybrid_precoding_sim.simulator.SweepSpec import (
    SweepSpec,
    FAMILIES,
    CDF_FAMILIES
)
from hybrid_precoding_sim.simulator.SweepResult import SweepResult
from hybrid_precoding_sim.simulator.ComplexityReport import ComplexityReport
from hybrid_precoding_sim.simulator.ConfigException import (
    ConfigException,
    ParseError,
    ValidationError
)
from hybrid_precoding_sim.simulator.utils import (
    METRICS,
    trial_rng,
    interferer_channels,
    run_trial,
    run_trials,
    run_config,
    aggregate,
    run_sweep,
    complexity_probe
)
