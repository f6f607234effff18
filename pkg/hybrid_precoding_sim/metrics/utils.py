"""Defines the per-trial figures of merit.

Functions:
    to_db(power, *, floor_db=-120.0) -> float | np.ndarray:
        10·log10 of a power, floored.
    per_user_rate(signal, interference, noise) -> float | np.ndarray:
        log2(1 + signal / (interference + noise)).
    estimation_error(h_true, h_est) -> float:
        Normalized Frobenius distance between true and estimated channels.
    q_function(x) -> float | np.ndarray:
        Gaussian tail probability.
    qpsk_ber_theory(sinr_linear) -> float | np.ndarray:
        Gray-coded QPSK bit error rate, Q(√SINR).
    qpsk_ber(sinr_linear, n_symbols, rng) -> float:
        Monte-Carlo Gray-coded QPSK bit error rate over AWGN.
    interference_power_db(w_blocks, f, interferer_channels,
                          interferer_powers, *, floor_db=-120.0) -> float:
        Post-combining power coupled in from external interferers.
    link_budget(w_blocks, f, powers, h_per_user, sigma_n2, *,
                interferer_channels=(), interferer_powers=()) -> LinkBudget:
        Physical per-user signal, interference and noise after combining.
"""

import numpy as np
from scipy.special import erfc

from hybrid_precoding_sim.numerics import as_cmatrix, frobenius_norm, DimensionMismatch
from hybrid_precoding_sim.metrics.LinkBudget import LinkBudget
from hybrid_precoding_sim.metrics.MetricsException import (
    NonPositiveNoise,
    ZeroChannel
)

DB_FLOOR = -120.0


def to_db(power, *, floor_db: float = DB_FLOOR):
    power = np.asarray(power, dtype=float)
    with np.errstate(divide='ignore'):
        db = np.maximum(10 * np.log10(np.maximum(power, 0)), floor_db)
    return float(db) if db.ndim == 0 else db


def per_user_rate(signal, interference, noise):
    """Achievable rate log2(1 + signal / (interference + noise)).

    Args:
        signal (float | array_like): Received signal power, ≥ 0.
        interference (float | array_like): Interference power, ≥ 0.
        noise (float | array_like): Noise power, > 0.

    Raises:
        NonPositiveNoise: If a noise power is not positive.

    Returns:
        float | np.ndarray: Rate in bits/s/Hz.
    """

    if np.any(np.asarray(noise) <= 0):
        raise NonPositiveNoise(f'noise power must be positive, got {noise}')
    rate = np.log2(1 + np.asarray(signal) / (np.asarray(interference) + np.asarray(noise)))
    return float(rate) if np.ndim(rate) == 0 else rate


def estimation_error(h_true, h_est) -> float:
    """‖h_est − h_true‖_F / ‖h_true‖_F.

    Args:
        h_true (array_like): The true channel (any shape).
        h_est (array_like): The estimate, same shape.

    Raises:
        DimensionMismatch: If the shapes differ.
        ZeroChannel: If the true channel is zero.

    Returns:
        float: The normalized error, 0 iff identical.
    """

    h_true = np.asarray(h_true, dtype=np.complex128)
    h_est = np.asarray(h_est, dtype=np.complex128)
    if h_true.shape != h_est.shape:
        raise DimensionMismatch(f'channel shapes differ: {h_true.shape} vs {h_est.shape}')
    reference = frobenius_norm(h_true)
    if reference == 0:
        raise ZeroChannel('true channel has zero energy')
    return frobenius_norm(h_est - h_true) / reference


def q_function(x):
    return 0.5 * erfc(np.asarray(x) / np.sqrt(2))


def qpsk_ber_theory(sinr_linear):
    # Per-bit SNR is SINR/2, so Q(√(2·Eb/N0)) = Q(√SINR)
    return q_function(np.sqrt(sinr_linear))


def qpsk_ber(sinr_linear: float, n_symbols: int, rng: np.random.Generator) -> float:
    """Monte-Carlo bit error rate of Gray-coded QPSK over AWGN.

    Unit-energy symbols are scaled by √SINR and received in unit-variance
    complex noise, so SINR = 0 is pure noise.

    Args:
        sinr_linear (float): Post-combining SINR, ≥ 0.
        n_symbols (int): Number of QPSK symbols, ≥ 1.
        rng (np.random.Generator): The random stream.

    Returns:
        float: The fraction of wrong bits.
    """

    if sinr_linear < 0 or n_symbols < 1:
        raise ValueError(f'need sinr >= 0 and n_symbols >= 1, '
                         f'got ({sinr_linear}, {n_symbols})')
    bits = rng.integers(0, 2, size=(n_symbols, 2))
    symbols = ((1 - 2 * bits[:, 0]) + 1j * (1 - 2 * bits[:, 1])) / np.sqrt(2)
    noise = (rng.standard_normal(n_symbols)
             + 1j * rng.standard_normal(n_symbols)) / np.sqrt(2)
    received = np.sqrt(sinr_linear) * symbols + noise
    decided = np.column_stack((received.real < 0, received.imag < 0))
    return float(np.mean(decided != bits.astype(bool)))


def _check_blocks(w_blocks, f) -> tuple[list[np.ndarray], np.ndarray]:
    w_blocks = [np.asarray(w, dtype=np.complex128).ravel() for w in w_blocks]
    f = as_cmatrix(f, name='precoder')
    if f.shape[1] != len(w_blocks):
        raise DimensionMismatch(f'{len(w_blocks)} combiners for {f.shape[1]} '
                                'precoder columns')
    return w_blocks, f


def interference_power_db(
    w_blocks,
    f,
    interferer_channels,
    interferer_powers, *,
    floor_db: float = DB_FLOOR
) -> float:
    """Total power Σ_l p_l·Σ_k |w_k^H·G_l·f_k|² coupled in from interferers.

    Args:
        w_blocks (list[array_like]): Combining vector of every user.
        f (array_like): N_T x K composite precoder.
        interferer_channels (list[array_like]): N_R x N_T coupling matrix of
                                                every interferer.
        interferer_powers (list[float]): Power of every interferer.
        floor_db (float, optional): Value reported for zero power.

    Raises:
        DimensionMismatch: On non-conformable inputs.

    Returns:
        float: The interference power in dB, floored.
    """

    w_blocks, f = _check_blocks(w_blocks, f)
    if len(interferer_channels) != len(interferer_powers):
        raise DimensionMismatch('one power per interferer channel is required')

    total = 0.0
    for g, p in zip(interferer_channels, interferer_powers):
        g = as_cmatrix(g, name='interferer channel')
        if g.shape != (len(w_blocks[0]), f.shape[0]):
            raise DimensionMismatch(f'interferer channel {g.shape} does not '
                                    'match the combiner and precoder')
        coupled = [w.conj() @ g @ f[:, k] for k, w in enumerate(w_blocks)]
        total += p * float(np.sum(np.abs(coupled) ** 2))
    return to_db(total, floor_db=floor_db)


def link_budget(
    w_blocks,
    f,
    powers,
    h_per_user,
    sigma_n2: float, *,
    interferer_channels=(),
    interferer_powers=()
) -> LinkBudget:
    """Physical per-user powers after combining.

    signal_k = p_k·|w_k^H·H_k·f_k|², interference_k = Σ_{m≠k} p_m·|w_k^H·H_k·f_m|²
    plus Σ_l p_l·|w_k^H·G_l·f_k|², noise_k = σ²·‖w_k‖².

    Args:
        w_blocks (list[array_like]): Combining vector of every user.
        f (array_like): N_T x K composite precoder.
        powers (array_like): Per-user transmit power p_k.
        h_per_user (list[array_like]): N_R x N_T channel of every user.
        sigma_n2 (float): Noise variance.
        interferer_channels (list[array_like], optional): Interferer couplings.
        interferer_powers (list[float], optional): Interferer powers.

    Raises:
        NonPositiveNoise: If sigma_n2 <= 0.

    Returns:
        LinkBudget: Signal, interference and noise of every user.
    """

    if not sigma_n2 > 0:
        raise NonPositiveNoise(f'noise variance must be positive, got {sigma_n2}')
    w_blocks, f = _check_blocks(w_blocks, f)
    powers = np.asarray(powers, dtype=float)
    k_users = len(w_blocks)

    signal = np.zeros(k_users)
    interference = np.zeros(k_users)
    noise = np.zeros(k_users)
    for k, (w, h) in enumerate(zip(w_blocks, h_per_user)):
        gains = np.abs(w.conj() @ as_cmatrix(h) @ f) ** 2 * powers
        signal[k] = gains[k]
        interference[k] = gains.sum() - gains[k]
        for g, p in zip(interferer_channels, interferer_powers):
            interference[k] += p * abs(w.conj() @ as_cmatrix(g) @ f[:, k]) ** 2
        noise[k] = sigma_n2 * float(np.vdot(w, w).real)
    return LinkBudget(signal, interference, noise)
