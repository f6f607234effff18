"""Defines the channel synthesis functions: correlated angle/phase sampling,
   model fitting, array responses and multipath channel realizations.

Functions:
    sample_angle_phase(model, n, rng, *, wrap=True) -> np.ndarray:
        Draw n correlated (θ, φ) pairs from the model.
    wrap_angle_phase(samples) -> np.ndarray:
        Wrap θ into [−π, π] and φ into [0, 2π].
    conditional_moments(model, theta) -> tuple[float, float]:
        Mean and variance of φ given θ.
    fit_mle(samples) -> tuple[AnglePhaseModel, float]:
        Fit the model parameters from (θ, φ) samples.
    array_response(theta, phi, n_elements, spacing_wavelengths) -> np.ndarray:
        Unit-modulus array response vector.
    trig_channel_vector(theta, phi) -> np.ndarray:
        Two-element (cos θ, sin θ)·e^{jφ} channel vector.
    default_composition(n_paths) -> tuple[int, int, int, int]:
        Split a path count into LOS, reflected, diffracted and scattered paths.
    draw_paths(model, composition, rng, *, distance=1.0,
               path_loss_exponent=0.4) -> tuple[PathSet, np.ndarray]:
        Draw the paths of one user with their pre-wrap samples.
    redraw_gains(paths, rng, *, amplitude=1.0) -> PathSet:
        Fresh path gains over the same geometry.
    synthesize_channel(paths, n_rx, n_tx, spacing, mismatch_theta)
        -> ChannelRealization:
        Sum of outer products of the receive and transmit array responses.
    rayleigh_iid(n_rx, n_tx, sigma2, rng) -> CMatrix:
        I.i.d. circularly symmetric complex Gaussian channel matrix.
"""

import logging

import numpy as np

from hybrid_precoding_sim.channel.AnglePhaseModel import AnglePhaseModel
from hybrid_precoding_sim.channel.ChannelRealization import ChannelRealization
from hybrid_precoding_sim.channel.PathSet import PathSet
from hybrid_precoding_sim.channel.ChannelException import (
    TooFewSamples,
    DegenerateVariance,
    InvalidGeometry
)
from hybrid_precoding_sim.numerics import CMatrix

logger = logging.getLogger(__name__)

RHO_CLAMP = 1e-9
PATH_LOSS_EXPONENT = 0.4


def sample_angle_phase(
    model: AnglePhaseModel,
    n: int,
    rng: np.random.Generator, *,
    wrap: bool = True
) -> np.ndarray:
    """Draw n correlated (θ, φ) pairs from two independent standard normals.

    Θ = σθ·Z1 + μθ and Φ = σφ·(ρ·Z1 + √(1−ρ²)·Z2) + μφ.

    Args:
        model (AnglePhaseModel): The bivariate model.
        n (int): Number of pairs, at least 1.
        rng (np.random.Generator): The random stream.
        wrap (bool, optional): Wrap the samples onto the angle/phase supports.
                               Defaults to True.

    Raises:
        TooFewSamples: If n < 1.

    Returns:
        np.ndarray: Array of shape (n, 2), columns θ and φ.
    """

    if n < 1:
        raise TooFewSamples(f'cannot draw {n} samples')
    z = rng.standard_normal((n, 2))
    theta = model.sigma_theta * z[:, 0] + model.mu_theta
    phi = model.sigma_phi * (
        model.rho * z[:, 0] + np.sqrt(1.0 - model.rho ** 2) * z[:, 1]
    ) + model.mu_phi
    samples = np.column_stack((theta, phi))
    return wrap_angle_phase(samples) if wrap else samples


def wrap_angle_phase(samples: np.ndarray) -> np.ndarray:
    """Wrap (θ, φ) rows into [−π, π) x [0, 2π), returning a copy."""

    samples = np.array(samples, dtype=float)
    samples[:, 0] = np.mod(samples[:, 0] + np.pi, 2 * np.pi) - np.pi
    samples[:, 1] = np.mod(samples[:, 1], 2 * np.pi)
    return samples


def conditional_moments(model: AnglePhaseModel, theta: float) -> tuple[float, float]:
    """Mean and variance of φ given θ.

    Args:
        model (AnglePhaseModel): The bivariate model.
        theta (float): The conditioning angle in radians.

    Returns:
        tuple[float, float]: μφ + ρ·σφ·(θ−μθ)/σθ and (1−ρ²)·σφ².
    """

    mean = model.mu_phi + model.rho * model.sigma_phi \
        * (theta - model.mu_theta) / model.sigma_theta
    var = (1.0 - model.rho ** 2) * model.sigma_phi ** 2
    return float(mean), float(var)


def fit_mle(samples) -> tuple[AnglePhaseModel, float]:
    """Fit the model parameters from pre-wrap (θ, φ) samples.

    Variances use the (n−1) denominator while the sample covariance uses the
    path-count denominator n. The correlation estimate is clamped to
    (−1+1e-9, 1−1e-9).

    Args:
        samples (array_like): Array of shape (n, 2).

    Raises:
        TooFewSamples: With fewer than 2 samples.
        DegenerateVariance: If either coordinate has zero spread.

    Returns:
        tuple[AnglePhaseModel, float]: The fitted model and the sample
            covariance R̂.
    """

    samples = np.asarray(samples, dtype=float).reshape(-1, 2)
    n = samples.shape[0]
    if n < 2:
        raise TooFewSamples(f'MLE fit needs at least 2 samples, got {n}')

    means = samples.mean(axis=0)
    centered = samples - means
    var_theta, var_phi = (centered ** 2).sum(axis=0) / (n - 1)
    if var_theta == 0 or var_phi == 0:
        raise DegenerateVariance('angle or phase samples have zero spread')

    sample_cov = float((centered[:, 0] * centered[:, 1]).sum() / n)
    sigma_theta, sigma_phi = np.sqrt(var_theta), np.sqrt(var_phi)
    rho = np.clip(sample_cov / (sigma_theta * sigma_phi),
                  -1 + RHO_CLAMP, 1 - RHO_CLAMP)

    model = AnglePhaseModel(float(means[0]), float(means[1]),
                            float(sigma_theta), float(sigma_phi), float(rho))
    return model, sample_cov


def _array_responses(thetas, phis, n_elements: int, spacing_wavelengths: float) -> np.ndarray:
    if n_elements < 1 or not spacing_wavelengths > 0:
        raise InvalidGeometry(f'array needs n_elements >= 1 and spacing > 0, '
                              f'got ({n_elements}, {spacing_wavelengths})')
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    phis = np.atleast_1d(np.asarray(phis, dtype=float))

    # Element 0 follows cos φ, the others sin φ with index max(m, 1)
    index = np.maximum(np.arange(n_elements), 1)
    trig = np.where(np.arange(n_elements) == 0,
                    np.cos(phis)[:, np.newaxis],
                    np.sin(phis)[:, np.newaxis])
    exponent = 2 * np.pi * spacing_wavelengths * index \
        * np.sin(thetas)[:, np.newaxis] * trig
    return np.exp(1j * exponent)


def array_response(theta: float, phi: float, n_elements: int,
                   spacing_wavelengths: float) -> np.ndarray:
    """Unit-modulus array response vector.

    Element m is exp(j·2π·d·c_m·sinθ·g_m(φ)) with d the spacing in
    wavelengths, g_0 = cos φ, g_m = sin φ for m ≥ 1 and index factor
    c_m = max(m, 1).

    Args:
        theta (float): Path angle in radians.
        phi (float): Path phase in radians.
        n_elements (int): Number of array elements.
        spacing_wavelengths (float): Element spacing in wavelengths.

    Raises:
        InvalidGeometry: On a nonpositive element count or spacing.

    Returns:
        np.ndarray: Complex vector of length n_elements.
    """

    return _array_responses(theta, phi, n_elements, spacing_wavelengths)[0]


def trig_channel_vector(theta: float, phi: float) -> np.ndarray:
    """Two-element channel (cos θ, sin θ)·e^{jφ} of a single path."""

    return np.array([np.cos(theta), np.sin(theta)]) * np.exp(1j * phi)


def default_composition(n_paths: int) -> tuple[int, int, int, int]:
    """Split a path count into (LOS, reflected, diffracted, scattered).

    Args:
        n_paths (int): Total number of paths, at least 1.

    Returns:
        tuple[int, int, int, int]: One LOS path, the rest spread over the
            reflected, diffracted and scattered kinds.
    """

    if n_paths < 1:
        raise InvalidGeometry(f'need at least one path, got {n_paths}')
    rest = n_paths - 1
    n_r = (rest + 2) // 3
    n_d = rest // 3
    return 1, n_r, n_d, rest - n_r - n_d


def _draw_gains(composition: tuple[int, int, int, int], rng: np.random.Generator) -> np.ndarray:
    n_paths = sum(composition)
    n_los = composition[0]
    los = np.exp(1j * rng.uniform(0, 2 * np.pi, n_los))
    nlos = (rng.standard_normal(n_paths - n_los)
            + 1j * rng.standard_normal(n_paths - n_los)) * np.sqrt(0.5 / n_paths)
    return np.concatenate((los, nlos))


def draw_paths(
    model: AnglePhaseModel,
    composition: tuple[int, int, int, int],
    rng: np.random.Generator, *,
    distance: float = 1.0,
    path_loss_exponent: float = PATH_LOSS_EXPONENT
) -> tuple[PathSet, np.ndarray]:
    """Draw the paths of one user.

    The LOS gain has unit magnitude and a uniform phase; the other gains are
    CN(0, 1/N_p). Amplitudes are scaled by distance^(−α/2).

    Args:
        model (AnglePhaseModel): The angle/phase model.
        composition (tuple[int, int, int, int]): Path kinds.
        rng (np.random.Generator): The random stream.
        distance (float, optional): Transmitter-user distance. Defaults to 1.
        path_loss_exponent (float, optional): α. Defaults to 0.4.

    Returns:
        tuple[PathSet, np.ndarray]: The paths and their pre-wrap (θ, φ)
            samples, used for model fitting.
    """

    if distance <= 0:
        raise InvalidGeometry(f'distance must be positive, got {distance}')
    raw = sample_angle_phase(model, sum(composition), rng, wrap=False)
    wrapped = wrap_angle_phase(raw)
    gains = _draw_gains(composition, rng) * distance ** (-path_loss_exponent / 2)
    paths = PathSet(gains, wrapped[:, 0], wrapped[:, 1], tuple(composition))
    return paths, raw


def redraw_gains(paths: PathSet, rng: np.random.Generator, *, amplitude: float = 1.0) -> PathSet:
    return paths.with_gains(_draw_gains(paths.composition, rng) * amplitude)


def _path_sum(gains, thetas, phis, n_rx: int, n_tx: int, spacing: float) -> CMatrix:
    a_rx = _array_responses(thetas, phis, n_rx, spacing)
    a_tx = _array_responses(thetas, phis, n_tx, spacing)
    return np.einsum('n,ni,nj->ij', gains, a_rx, a_tx.conj())


def synthesize_channel(
    paths: PathSet,
    n_rx: int,
    n_tx: int,
    spacing: float,
    mismatch_theta: float = 0.0
) -> ChannelRealization:
    """Build the true and estimated channel of one user.

    h = Σ_n α_n·a_rx(θ_n, φ_n)·a_tx(θ_n, φ_n)^H, the estimate using
    θ_n + mismatch_theta.

    Args:
        paths (PathSet): The user's paths.
        n_rx (int): Receive antennas.
        n_tx (int): Transmit antennas.
        spacing (float): Element spacing in wavelengths.
        mismatch_theta (float, optional): Angular estimation offset in
                                          radians. Defaults to 0.

    Raises:
        InvalidGeometry: On invalid array dimensions.

    Returns:
        ChannelRealization: The realization.
    """

    h_true = _path_sum(paths.gains, paths.thetas, paths.phis, n_rx, n_tx, spacing)
    if mismatch_theta == 0:
        h_est = h_true.copy()
    else:
        h_est = _path_sum(paths.gains, paths.thetas + mismatch_theta,
                          paths.phis, n_rx, n_tx, spacing)
    return ChannelRealization(h_true, h_est, paths, mismatch_theta)


def rayleigh_iid(n_rx: int, n_tx: int, sigma2: float, rng: np.random.Generator) -> CMatrix:
    """I.i.d. circularly symmetric complex Gaussian channel matrix.

    Args:
        n_rx (int): Rows.
        n_tx (int): Columns.
        sigma2 (float): Per-entry variance, positive.
        rng (np.random.Generator): The random stream.

    Returns:
        CMatrix: The n_rx x n_tx matrix.
    """

    if sigma2 <= 0:
        raise InvalidGeometry(f'sigma2 must be positive, got {sigma2}')
    shape = (n_rx, n_tx)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) \
        * np.sqrt(sigma2 / 2)
