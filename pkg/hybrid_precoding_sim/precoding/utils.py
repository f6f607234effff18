"""Defines the hybrid precoder design: covariance statistics, EVD-based
   analog stage, MMSE digital stage and power allocation.

Functions:
    channel_stats(estimates) -> ChannelStats:
        Sample mean and covariance of estimated channel vectors.
    dominant_subspace(stats, n_rf) -> tuple[CMatrix, int]:
        U·V^{1/2} over the n_rf dominant eigenpairs, before projection.
    project_unit_modulus(m, n_tx) -> CMatrix:
        Phase-preserving projection onto entries of modulus 1/√n_tx.
    rf_precoder(stats, n_rf, *, strict=False) -> CMatrix:
        Unit-modulus analog precoder from the covariance EVD.
    mmse_direction(h_eff, r_n) -> CMatrix:
        Unscaled MMSE precoder h^H·(h·h^H + R_n)^{-1}.
    mmse_baseband(h_eff, r_n, power_budget, *, f_rf=None) -> tuple:
        MMSE digital precoder scaled to the power budget.
    mmse_gamma(f_bb, h_eff, sigma_n2) -> float:
        Signal-to-noise trace ratio of a digital precoder.
    allocate_power(k_users, p_max, policy='uniform') -> np.ndarray:
        Diagonal transmit power allocation with ‖P‖_F = p_max.
    build_precoder(stats, h_eq, n_rf, sigma_n2, p_max, *, streams=1,
                   r_n=None, f_rf=None) -> PrecoderSet:
        Full hybrid precoder for an equivalent channel.
"""

import logging

import numpy as np

from hybrid_precoding_sim.numerics import (
    CMatrix,
    as_cmatrix,
    frobenius_norm,
    hermitian_evd,
    solve_hpd,
    is_psd,
    Singular,
    DimensionMismatch
)
from hybrid_precoding_sim.channel import TooFewSamples
from hybrid_precoding_sim.precoding.ChannelStats import ChannelStats
from hybrid_precoding_sim.precoding.PrecoderSet import PrecoderSet
from hybrid_precoding_sim.precoding.PrecodingException import (
    RankDeficient,
    NonPositiveBudget
)

logger = logging.getLogger(__name__)

RANK_TOL = 1e-12


def channel_stats(estimates) -> ChannelStats:
    """Sample mean and covariance (1/n)·Σ(h−μ)(h−μ)^H of channel vectors.

    Args:
        estimates (array_like): Sequence of equal-length complex vectors, or a
                                matrix with one vector per row.

    Raises:
        TooFewSamples: With fewer than 2 vectors.
        DimensionMismatch: If the vectors differ in length.

    Returns:
        ChannelStats: The statistics, covariance symmetrized.
    """

    try:
        h = np.array([np.asarray(e, dtype=np.complex128).ravel() for e in estimates])
    except ValueError as error:
        raise DimensionMismatch('estimate vectors differ in length') from error
    if h.ndim != 2:
        raise DimensionMismatch('estimate vectors differ in length')
    if h.shape[0] < 2:
        raise TooFewSamples(f'covariance needs at least 2 vectors, got {h.shape[0]}')

    mu = h.mean(axis=0)
    centered = h - mu
    r_cov = centered.T @ centered.conj() / h.shape[0]
    r_cov = 0.5 * (r_cov + r_cov.conj().T)
    return ChannelStats(mu, r_cov, h.shape[0])


def dominant_subspace(stats: ChannelStats, n_rf: int) -> tuple[CMatrix, int]:
    """U·V^{1/2} restricted to the n_rf dominant eigenpairs of the covariance.

    Columns past the numerical rank are zero.

    Args:
        stats (ChannelStats): The channel statistics.
        n_rf (int): Number of RF chains.

    Raises:
        DimensionMismatch: If n_rf exceeds the covariance dimension.

    Returns:
        tuple[CMatrix, int]: The N_T x n_rf matrix and the numerical rank.
    """

    n_tx = stats.dimension
    if not 1 <= n_rf <= n_tx:
        raise DimensionMismatch(f'n_rf must be within [1, {n_tx}], got {n_rf}')

    eigvals, eigvecs = hermitian_evd(stats.r_cov)
    lead = eigvals[0]
    rank = int(np.sum(eigvals > RANK_TOL * lead)) if lead > 0 else 0
    scales = np.sqrt(np.clip(eigvals[:n_rf], 0, None))
    scales[rank:] = 0
    return eigvecs[:, :n_rf] * scales, rank


def project_unit_modulus(m, n_tx: int) -> CMatrix:
    m = np.asarray(m, dtype=np.complex128)
    # Zero entries, signed or not, take phase 0
    phases = np.where(np.abs(m) > 0, np.angle(m), 0.0)
    return np.exp(1j * phases) / np.sqrt(n_tx)


def rf_precoder(stats: ChannelStats, n_rf: int, *, strict: bool = False) -> CMatrix:
    """Analog precoder from the dominant eigenpairs of the covariance.

    Every entry of U·V^{1/2} is projected to modulus 1/√N_T, keeping its
    phase. Columns beyond the rank become constant phase-0 columns.

    Args:
        stats (ChannelStats): The channel statistics.
        n_rf (int): Number of RF chains.
        strict (bool, optional): Raise instead of padding when rank deficient.

    Raises:
        RankDeficient: If strict and fewer than n_rf eigenvalues exceed
                       1e-12·λ_max.

    Returns:
        CMatrix: The N_T x n_rf unit-modulus precoder.
    """

    subspace, rank = dominant_subspace(stats, n_rf)
    if rank < n_rf:
        message = f'covariance rank {rank} below {n_rf} RF chains'
        if strict:
            raise RankDeficient(message)
        logger.warning('%s, padding with constant columns', message)
    return project_unit_modulus(subspace, stats.dimension)


def mmse_direction(h_eff, r_n) -> CMatrix:
    """Unscaled MMSE precoder h^H·(h·h^H + R_n)^{-1}.

    Args:
        h_eff (array_like): K x N_RF effective channel.
        r_n (array_like): K x K noise covariance, Hermitian PSD.

    Raises:
        Singular: If h·h^H + R_n is singular.
        DimensionMismatch: On non-conformable inputs.

    Returns:
        CMatrix: The N_RF x K precoder.
    """

    h = as_cmatrix(h_eff, name='effective channel')
    r_n = as_cmatrix(r_n, name='noise covariance')
    if r_n.shape != (h.shape[0], h.shape[0]):
        raise DimensionMismatch(f'noise covariance {r_n.shape} does not match '
                                f'{h.shape[0]} users')
    if not is_psd(r_n):
        raise DimensionMismatch('noise covariance must be positive semi-definite')
    return solve_hpd(h @ h.conj().T + r_n, h).conj().T


def mmse_baseband(h_eff, r_n, power_budget: float, *, f_rf=None) -> tuple[CMatrix, float]:
    """MMSE digital precoder β·h^H·(h·h^H + R_n)^{-1}.

    β makes the transmit power ‖F_RF·F_BB‖_F² equal to the budget (total
    power constraint).

    Args:
        h_eff (array_like): K x N_RF effective channel.
        r_n (array_like): K x K noise covariance.
        power_budget (float): Total transmit power S.
        f_rf (array_like, optional): Analog stage the power is measured
                                     through. Identity when omitted.

    Raises:
        NonPositiveBudget: If power_budget <= 0.
        Singular: If the regularized Gram matrix is singular or the
                  precoder vanishes.

    Returns:
        tuple[CMatrix, float]: The scaled precoder and β.
    """

    if not power_budget > 0:
        raise NonPositiveBudget(f'power budget must be positive, got {power_budget}')
    direction = mmse_direction(h_eff, r_n)
    radiated = direction if f_rf is None else as_cmatrix(f_rf) @ direction
    power = frobenius_norm(radiated) ** 2
    if power == 0:
        raise Singular('MMSE precoder is zero, cannot normalize its power')
    beta = float(np.sqrt(power_budget / power))
    return beta * direction, beta


def mmse_gamma(f_bb, h_eff, sigma_n2: float) -> float:
    """Trace ratio Tr{F^H h^H h F} / Tr{F^H σ² F} of a digital precoder."""

    f_bb = as_cmatrix(f_bb)
    return frobenius_norm(as_cmatrix(h_eff) @ f_bb) ** 2 \
        / (sigma_n2 * frobenius_norm(f_bb) ** 2)


def allocate_power(k_users: int, p_max: float, policy: str = 'uniform') -> np.ndarray:
    """Diagonal power allocation meeting ‖P‖_F = p_max.

    Args:
        k_users (int): Number of users.
        p_max (float): Frobenius bound on the allocation.
        policy (str, optional): Allocation policy, only 'uniform'.

    Raises:
        NonPositiveBudget: If p_max <= 0.
        ValueError: On an unknown policy.

    Returns:
        np.ndarray: The K x K diagonal allocation.
    """

    if policy != 'uniform':
        raise ValueError(f'unknown power allocation policy {policy!r}')
    if not p_max > 0:
        raise NonPositiveBudget(f'p_max must be positive, got {p_max}')
    return np.eye(k_users) * (p_max / np.sqrt(k_users))


def build_precoder(
    stats: ChannelStats,
    h_eq,
    n_rf: int,
    sigma_n2: float,
    p_max: float, *,
    streams: int = 1,
    r_n=None,
    f_rf=None
) -> PrecoderSet:
    """Design the full hybrid precoder for a K x N_T equivalent channel.

    Args:
        stats (ChannelStats): Statistics of the estimated channel vectors.
        h_eq (array_like): K x N_T equivalent channel W_RF^H·Ĥ.
        n_rf (int): Number of RF chains.
        sigma_n2 (float): Noise variance, used for R_n = σ²·I when r_n is
                          not given.
        p_max (float): Transmit power bound.
        streams (int, optional): Streams per user M. Defaults to 1.
        r_n (array_like, optional): Quantization noise covariance.
        f_rf (array_like, optional): Analog stage to reuse. Derived from the
                                     covariance EVD when omitted, the only
                                     case where rank deficiency is flagged.

    Returns:
        PrecoderSet: The precoder with ‖F_RF·F_BB‖_F² = K·M.
    """

    h_eq = as_cmatrix(h_eq, name='equivalent channel')
    k_users = h_eq.shape[0]
    rank_deficient = False
    if f_rf is None:
        subspace, rank = dominant_subspace(stats, n_rf)
        rank_deficient = rank < n_rf
        if rank_deficient:
            logger.warning('covariance rank %d below %d RF chains, padding with '
                           'constant columns', rank, n_rf)
        f_rf = project_unit_modulus(subspace, stats.dimension)
    else:
        f_rf = as_cmatrix(f_rf, name='analog precoder')
    if r_n is None:
        r_n = sigma_n2 * np.eye(k_users)
    f_bb, beta = mmse_baseband(h_eq @ f_rf, r_n, k_users * streams, f_rf=f_rf)
    return PrecoderSet(f_rf, f_bb, allocate_power(k_users, p_max), beta,
                       rank_deficient=rank_deficient)
