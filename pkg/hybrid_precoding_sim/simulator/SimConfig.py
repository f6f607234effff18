from dataclasses import dataclass, replace, asdict
from math import isfinite

import numpy as np

from hybrid_precoding_sim.channel import AnglePhaseModel, InvalidModel
from hybrid_precoding_sim.combining import SolverOptions
from hybrid_precoding_sim.entropy import default_trigger_tau
from hybrid_precoding_sim.simulator.ConfigException import ValidationError

TAU_OFF = 'off'
TAU_DEFAULT = 'default'


def _to_int(value) -> int:
    if isinstance(value, str):
        value = float(value) if '.' in value or 'e' in value.lower() else int(value)
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError(f'{value} is not an integer')
        value = int(value)
    return int(value)


def _to_float(value) -> float:
    return float(value)


def _to_optional_float(value) -> float | None:
    if value is None or (isinstance(value, str) and value.strip().lower() in ('', 'none')):
        return None
    return float(value)


def _to_float_tuple(value) -> tuple[float, ...]:
    if isinstance(value, str):
        return tuple(float(v) for v in value.split(',') if v.strip())
    return tuple(float(v) for v in np.atleast_1d(value))


def _to_tau(value) -> float | str:
    if isinstance(value, str) and value.strip().lower() in (TAU_OFF, TAU_DEFAULT):
        return value.strip().lower()
    return float(value)


# Dotted configuration key -> (SimConfig field, converter)
CONFIG_KEYS = {
    'array.n_tx': ('n_tx', _to_int),
    'array.n_rf': ('n_rf', _to_int),
    'array.n_rx': ('n_rx', _to_int),
    'array.spacing_wavelengths': ('spacing_wavelengths', _to_float),
    'system.k_users': ('k_users', _to_int),
    'system.n_paths': ('n_paths', _to_int),
    'power.p_max_db': ('p_max_db', _to_float),
    'power.sigma_n2': ('sigma_n2', _to_float),
    'power.snr_db': ('snr_db', _to_optional_float),
    'interference.inr_db': ('inr_db', _to_float),
    'interference.angles_deg': ('interferer_angles_deg', _to_float_tuple),
    'channel.mismatch_theta_deg': ('mismatch_theta_deg', _to_float),
    'channel.distance_m': ('distance_m', _to_optional_float),
    'channel.n_snapshots': ('n_snapshots', _to_int),
    'channel.pilot_samples': ('pilot_samples', _to_int),
    'model.mu_theta_deg': ('mu_theta_deg', _to_float),
    'model.mu_phi_deg': ('mu_phi_deg', _to_float),
    'model.sigma_theta_deg': ('sigma_theta_deg', _to_float),
    'model.sigma_phi_deg': ('sigma_phi_deg', _to_float),
    'model.rho': ('rho', _to_float),
    'run.n_trials': ('n_trials', _to_int),
    'run.seed': ('seed', _to_int),
    'solver.step0': ('step0', _to_float),
    'solver.shrink': ('shrink', _to_float),
    'solver.tol': ('tol', _to_float),
    'solver.max_iter': ('max_iter', _to_int),
    'solver.outer_iter': ('outer_iter', _to_int),
    'entropy.trigger_tau': ('trigger_tau', _to_tau),
    'metrics.ber_symbols': ('ber_symbols', _to_int),
    'metrics.bandwidth_hz': ('bandwidth_hz', _to_float),
}


@dataclass(frozen=True)
class SimConfig:
    """Full configuration of a simulation run.

    Powers are kept in dB and angles in degrees as written in the
    configuration file; the properties give the linear and radian values
    used by the computations. When snr_db is set, p_max = σ²·10^(snr/10)
    replaces p_max_db.

    Instance methods:
        with_values(self, values) -> SimConfig:
            Copy with dotted configuration keys overridden.
        as_dict(self) -> dict:
            Field values keyed by field name.
    """

    n_tx: int = 64
    n_rf: int = 16
    n_rx: int = 2
    spacing_wavelengths: float = 0.5
    k_users: int = 8
    n_paths: int = 6
    p_max_db: float = 35.0
    sigma_n2: float = 0.01
    snr_db: float | None = None
    inr_db: float = -14.37
    interferer_angles_deg: tuple[float, ...] = (-7.0, 2.0, 12.0)
    mismatch_theta_deg: float = 0.0
    distance_m: float | None = None
    n_snapshots: int = 32
    pilot_samples: int = 256
    mu_theta_deg: float = 8.0
    mu_phi_deg: float = 180.0
    sigma_theta_deg: float = 20.0
    sigma_phi_deg: float = 30.0
    rho: float = 0.5
    n_trials: int = 1000
    seed: int = 0
    step0: float = 1.0
    shrink: float = 0.5
    tol: float = 1e-6
    max_iter: int = 200
    outer_iter: int = 3
    trigger_tau: float | str = TAU_DEFAULT
    ber_symbols: int = 10_000
    bandwidth_hz: float = 100e6

    def __post_init__(self):
        if not 1 <= self.k_users <= self.n_rf <= self.n_tx:
            raise ValidationError('antenna ordering requires 1 <= k_users <= n_rf '
                                  f'<= n_tx, got k_users={self.k_users}, '
                                  f'n_rf={self.n_rf}, n_tx={self.n_tx}')
        for name in ('n_rx', 'n_paths', 'n_trials', 'max_iter', 'outer_iter',
                     'ber_symbols'):
            if getattr(self, name) < 1:
                raise ValidationError(f'{name} must be at least 1, got {getattr(self, name)}')
        if self.n_snapshots < 2 or self.pilot_samples < 2:
            raise ValidationError('n_snapshots and pilot_samples must be at least 2')
        if self.seed < 0:
            raise ValidationError(f'seed must be non-negative, got {self.seed}')
        for name in ('spacing_wavelengths', 'sigma_n2', 'bandwidth_hz'):
            value = getattr(self, name)
            if not (isfinite(value) and value > 0):
                raise ValidationError(f'{name} must be positive, got {value}')
        if self.distance_m is not None and not self.distance_m > 0:
            raise ValidationError(f'distance_m must be positive, got {self.distance_m}')
        if not isfinite(self.p_max):
            raise ValidationError('transmit power must be finite')
        if isinstance(self.trigger_tau, str) and self.trigger_tau not in (TAU_OFF, TAU_DEFAULT):
            raise ValidationError(f'trigger_tau must be a number, {TAU_OFF!r} or '
                                  f'{TAU_DEFAULT!r}, got {self.trigger_tau!r}')
        try:
            self.solver_options
            self.model
        except (ValueError, InvalidModel) as error:
            raise ValidationError(str(error)) from error

    @property
    def p_max(self) -> float:
        if self.snr_db is not None:
            return self.sigma_n2 * 10 ** (self.snr_db / 10)
        return 10 ** (self.p_max_db / 10)

    @property
    def interferer_power(self) -> float:
        return self.sigma_n2 * 10 ** (self.inr_db / 10)

    @property
    def interferer_angles(self) -> np.ndarray:
        return np.deg2rad(self.interferer_angles_deg)

    @property
    def mismatch_theta(self) -> float:
        return float(np.deg2rad(self.mismatch_theta_deg))

    @property
    def model(self) -> AnglePhaseModel:
        return AnglePhaseModel(*np.deg2rad([
            self.mu_theta_deg, self.mu_phi_deg,
            self.sigma_theta_deg, self.sigma_phi_deg
        ]).tolist(), self.rho)

    @property
    def solver_options(self) -> SolverOptions:
        return SolverOptions(self.step0, self.shrink, self.tol, self.max_iter)

    @property
    def entropy_tau(self) -> float | None:
        """Re-estimation threshold in nats, None when disabled."""

        if self.trigger_tau == TAU_OFF:
            return None
        if self.trigger_tau == TAU_DEFAULT:
            return default_trigger_tau(self.model)
        return float(self.trigger_tau)

    def with_values(self, values: dict) -> 'SimConfig':
        """Copy of the configuration with dotted keys overridden.

        Args:
            values (dict): Dotted configuration key to raw (string) or typed
                           value.

        Raises:
            ValidationError: On an unknown key, an unconvertible value or a
                             violated invariant.

        Returns:
            SimConfig: The new configuration.
        """

        changes = {}
        for key, value in values.items():
            if key not in CONFIG_KEYS:
                raise ValidationError(f'unknown configuration key {key!r}')
            name, convert = CONFIG_KEYS[key]
            try:
                changes[name] = convert(value)
            except (TypeError, ValueError) as error:
                raise ValidationError(f'invalid value {value!r} for {key}: {error}') from error
        return replace(self, **changes)

    def as_dict(self) -> dict:
        record = asdict(self)
        record['interferer_angles_deg'] = list(self.interferer_angles_deg)
        return record

