"""Defines the receive combiners, the sum-rate objective they maximize and its
   analytic gradient.

Functions:
    user_channels(h_est, k_users) -> list[CMatrix]:
        Per-user N_R x N_T blocks of a stacked or listed channel.
    equivalent_channel(w_blocks, h_est_per_user) -> CMatrix:
        K x N_T equivalent channel W_RF^H·Ĥ.
    make_combiner(w_blocks, h_est_per_user) -> CombinerSet:
        Combiners bundled with their equivalent channel.
    project_to_constraint(w_blocks, h_est_per_user, p_max) -> CombinerSet:
        Radial projection onto Tr{W^H·Ĥ·Ĥ^H·W} <= p_max.
    closed_form_combiner(f_rf, h_est) -> CMatrix:
        F_RF·(F_RF^H·Ĥ^H·Ĥ·F_RF + I)^{-1}·F_RF^H.
    combiner_from_closed_form(w_matrix, h_est_per_user, p_max) -> CombinerSet:
        Per-user combiners extracted from the closed-form matrix.
    signal_terms(w_blocks, f, powers, h_per_user) -> np.ndarray:
        p_k·|w_k^H·Ĥ_k·f_k|² of every user.
    sum_rate_objective(combiner, precoder, h_est, sigma_n2) -> float:
        Sum over users of log2(1 + S_k / (Σ_{m≠k} S_m + σ²)).
    sum_rate_gradient(combiner, precoder, h_est, sigma_n2) -> list[np.ndarray]:
        Gradient of the objective over the real and imaginary parts of w_k.
    gradient_norm(combiner, precoder, h_est, sigma_n2) -> float:
        Euclidean norm of the full gradient.
    stationarity_ratio(candidate, reference, precoder, h_est, sigma_n2) -> float:
        Gradient norm at candidate over the gradient norm at reference.
    alpha_weights(signals, sigma_n2) -> np.ndarray:
        1 / (Σ_{m≠k} S_m + σ²) of every user.
    log_utility_curvature(u, alpha) -> np.ndarray:
        Second derivative of α·log(u) along u.
"""

import numpy as np

from hybrid_precoding_sim.numerics import (
    CMatrix,
    as_cmatrix,
    hermitian_evd,
    solve_hpd,
    DimensionMismatch
)
from hybrid_precoding_sim.metrics import per_user_rate, NonPositiveNoise
from hybrid_precoding_sim.precoding import PrecoderSet
from hybrid_precoding_sim.combining.CombinerSet import CombinerSet


def user_channels(h_est, k_users: int) -> list[CMatrix]:
    """Split a channel into its per-user N_R x N_T blocks.

    Args:
        h_est (array_like | list): Stacked K·N_R x N_T matrix, K x N_R x N_T
                                   array or list of per-user matrices.
        k_users (int): Number of users K.

    Raises:
        DimensionMismatch: If the channel does not hold K equal blocks.

    Returns:
        list[CMatrix]: The K per-user channels.
    """

    if isinstance(h_est, np.ndarray) and h_est.ndim == 2:
        if k_users < 1 or h_est.shape[0] % k_users:
            raise DimensionMismatch(f'{h_est.shape[0]} channel rows cannot be '
                                    f'split over {k_users} users')
        blocks = np.split(h_est, k_users)
    else:
        blocks = list(h_est)
    if len(blocks) != k_users:
        raise DimensionMismatch(f'{len(blocks)} user channels for {k_users} combiners')
    blocks = [as_cmatrix(b, name='user channel') for b in blocks]
    if len({b.shape for b in blocks}) > 1:
        raise DimensionMismatch('user channels differ in shape')
    return blocks


def _as_blocks(w_blocks) -> list[np.ndarray]:
    return [np.asarray(w, dtype=np.complex128).ravel() for w in w_blocks]


def equivalent_channel(w_blocks, h_est_per_user) -> CMatrix:
    """K x N_T equivalent channel W_RF^H·Ĥ with W_RF block diagonal.

    Args:
        w_blocks (list[array_like]): Combining vector of every user.
        h_est_per_user (array_like | list): The estimated channels.

    Raises:
        DimensionMismatch: On non-conformable inputs.

    Returns:
        CMatrix: The equivalent channel, row k equal to w_k^H·Ĥ_k.
    """

    w_blocks = _as_blocks(w_blocks)
    channels = user_channels(h_est_per_user, len(w_blocks))
    rows = []
    for k, (w, h) in enumerate(zip(w_blocks, channels)):
        if w.shape[0] != h.shape[0]:
            raise DimensionMismatch(f'user {k}: combiner of length {w.shape[0]} '
                                    f'for {h.shape[0]} receive antennas')
        rows.append(w.conj() @ h)
    return np.array(rows, dtype=np.complex128)


def make_combiner(w_blocks, h_est_per_user) -> CombinerSet:
    w_blocks = _as_blocks(w_blocks)
    return CombinerSet(tuple(w_blocks), equivalent_channel(w_blocks, h_est_per_user))


def project_to_constraint(w_blocks, h_est_per_user, p_max: float) -> CombinerSet:
    """Scale all combiners by √(p_max / trace) when the trace exceeds p_max."""

    combiner = make_combiner(w_blocks, h_est_per_user)
    trace = combiner.constraint_trace
    if trace <= p_max:
        return combiner
    scale = np.sqrt(p_max / trace)
    return CombinerSet(tuple(w * scale for w in combiner.w_blocks),
                       combiner.h_eq * scale)


def closed_form_combiner(f_rf, h_est) -> CMatrix:
    """Closed-form combining matrix F_RF·(F_RF^H·Ĥ^H·Ĥ·F_RF + I)^{-1}·F_RF^H.

    Args:
        f_rf (array_like): N_T x N_RF analog precoder.
        h_est (array_like): Stacked K·N_R x N_T estimated channel.

    Raises:
        DimensionMismatch: If F_RF and Ĥ are not conformable.

    Returns:
        CMatrix: The N_T x N_T Hermitian matrix.
    """

    f_rf = as_cmatrix(f_rf, name='analog precoder')
    h_est = as_cmatrix(h_est, name='estimated channel')
    if h_est.shape[1] != f_rf.shape[0]:
        raise DimensionMismatch(f'channel with {h_est.shape[1]} transmit antennas '
                                f'for a {f_rf.shape[0]}-row analog precoder')
    projected = h_est @ f_rf
    gram = projected.conj().T @ projected + np.eye(f_rf.shape[1])
    w = f_rf @ solve_hpd(gram, f_rf.conj().T)
    return 0.5 * (w + w.conj().T)


def combiner_from_closed_form(w_matrix, h_est_per_user, p_max: float) -> CombinerSet:
    """Per-user combiners from the closed-form combining matrix.

    w_k is the dominant eigenvector of Ĥ_k·W·Ĥ_k^H scaled by the square root
    of its eigenvalue, then the set is projected onto the power constraint.

    Args:
        w_matrix (array_like): N_T x N_T closed-form combining matrix.
        h_est_per_user (list[array_like]): Estimated channel of every user.
        p_max (float): Bound on Tr{W^H·Ĥ·Ĥ^H·W}.

    Returns:
        CombinerSet: A feasible combiner set.
    """

    w_matrix = as_cmatrix(w_matrix, name='combining matrix')
    channels = list(h_est_per_user)
    blocks = []
    for h in channels:
        h = as_cmatrix(h, name='user channel')
        eigvals, eigvecs = hermitian_evd(h @ w_matrix @ h.conj().T)
        blocks.append(eigvecs[:, 0] * np.sqrt(max(eigvals[0], 0.0)))
    return project_to_constraint(blocks, channels, p_max)


def _check_noise(sigma_n2: float):
    if not sigma_n2 > 0:
        raise NonPositiveNoise(f'noise variance must be positive, got {sigma_n2}')


def _effective_columns(f, h_per_user) -> list[np.ndarray]:
    f = as_cmatrix(f, name='precoder')
    if f.shape[1] != len(h_per_user):
        raise DimensionMismatch(f'precoder with {f.shape[1]} columns for '
                                f'{len(h_per_user)} users')
    if h_per_user[0].shape[1] != f.shape[0]:
        raise DimensionMismatch(f'channel with {h_per_user[0].shape[1]} transmit '
                                f'antennas for a {f.shape[0]}-row precoder')
    return [h @ f[:, k] for k, h in enumerate(h_per_user)]


def signal_terms(w_blocks, f, powers, h_per_user) -> np.ndarray:
    w_blocks = _as_blocks(w_blocks)
    channels = user_channels(h_per_user, len(w_blocks))
    columns = _effective_columns(f, channels)
    coupled = np.array([np.vdot(w, g) for w, g in zip(w_blocks, columns)])
    return np.asarray(powers, dtype=float) * np.abs(coupled) ** 2


def sum_rate_objective(
    combiner: CombinerSet,
    precoder: PrecoderSet,
    h_est,
    sigma_n2: float
) -> float:
    """Sum over users of log2(1 + S_k / (Σ_{m≠k} S_m + σ²)).

    S_k = p_k·|w_k^H·Ĥ_k·f_k|² with f_k the k-th column of F_RF·F_BB.

    Args:
        combiner (CombinerSet): The receive combiners.
        precoder (PrecoderSet): The hybrid precoder.
        h_est (array_like | list): The estimated channels.
        sigma_n2 (float): Noise variance, > 0.

    Raises:
        NonPositiveNoise: If sigma_n2 <= 0.
        DimensionMismatch: On non-conformable inputs.

    Returns:
        float: The objective in bits/s/Hz.
    """

    _check_noise(sigma_n2)
    signals = signal_terms(combiner.w_blocks, precoder.f, precoder.powers, h_est)
    interference = signals.sum() - signals
    return float(np.sum(per_user_rate(signals, interference, sigma_n2)))


def sum_rate_gradient(
    combiner: CombinerSet,
    precoder: PrecoderSet,
    h_est,
    sigma_n2: float
) -> list[np.ndarray]:
    """Gradient of the sum-rate objective with respect to every w_k.

    Real and imaginary parts are independent coordinates: the returned
    entry is ∂R/∂Re(w) + j·∂R/∂Im(w).

    Args:
        combiner (CombinerSet): The receive combiners.
        precoder (PrecoderSet): The hybrid precoder.
        h_est (array_like | list): The estimated channels.
        sigma_n2 (float): Noise variance, > 0.

    Raises:
        NonPositiveNoise: If sigma_n2 <= 0.

    Returns:
        list[np.ndarray]: One gradient vector per user, shaped like w_k.
    """

    _check_noise(sigma_n2)
    w_blocks = list(combiner.w_blocks)
    channels = user_channels(h_est, len(w_blocks))
    columns = _effective_columns(precoder.f, channels)
    powers = precoder.powers
    coupled = np.array([np.vdot(w, g) for w, g in zip(w_blocks, columns)])
    signals = powers * np.abs(coupled) ** 2

    total = signals.sum()
    inv_denominators = 1 / (total - signals + sigma_n2)
    d_rate = (len(w_blocks) / (total + sigma_n2)
              - (inv_denominators.sum() - inv_denominators)) / np.log(2)
    return [d_rate[k] * 2 * powers[k] * columns[k] * np.conj(coupled[k])
            for k in range(len(w_blocks))]


def gradient_norm(combiner, precoder, h_est, sigma_n2) -> float:
    gradient = sum_rate_gradient(combiner, precoder, h_est, sigma_n2)
    return float(np.sqrt(sum(np.vdot(g, g).real for g in gradient)))


def stationarity_ratio(
    candidate: CombinerSet,
    reference: CombinerSet,
    precoder: PrecoderSet,
    h_est,
    sigma_n2: float
) -> float:
    """Gradient norm at candidate relative to the one at reference.

    Returns:
        float: The ratio, inf when the reference gradient vanishes and the
               candidate's does not, 0 when both vanish.
    """

    numerator = gradient_norm(candidate, precoder, h_est, sigma_n2)
    denominator = gradient_norm(reference, precoder, h_est, sigma_n2)
    if denominator == 0:
        return 0.0 if numerator == 0 else float('inf')
    return numerator / denominator


def alpha_weights(signals, sigma_n2: float) -> np.ndarray:
    _check_noise(sigma_n2)
    signals = np.asarray(signals, dtype=float)
    return 1 / (signals.sum() - signals + sigma_n2)


def log_utility_curvature(u, alpha) -> np.ndarray:
    """∂²(α·log u)/∂u² = −α/u², negative for u > 0 and α > 0."""

    u = np.asarray(u, dtype=float)
    if np.any(u <= 0):
        raise ValueError('utility arguments must be positive')
    return -np.asarray(alpha, dtype=float) / u ** 2
