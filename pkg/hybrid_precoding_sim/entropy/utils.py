"""Defines the entropy computations of the angle/phase model and the
   Gauss-Legendre quadrature they are checked against.

All entropies are in nats.

Functions:
    gauss_legendre_nodes(lower, upper, panels, order) -> tuple:
        Composite Gauss-Legendre nodes and weights on an interval.
    integrate_2d(func, theta_bounds, phi_bounds, *, panels, order) -> float:
        Tensor-product quadrature of func(θ, φ) over a box.
    entropy_1d(sigma) -> float:
        Differential entropy of a Gaussian with standard deviation sigma.
    entropy_1d_quadrature(sigma, *, panels, order) -> float:
        Same entropy obtained by 1-D quadrature.
    joint_entropy_quadrature(model, *, truncated=False, tol=1e-4) -> float:
        Joint entropy of (θ, φ) by refined 2-D quadrature.
    joint_entropy_closed_form(model) -> float:
        Exact joint entropy of the bivariate Gaussian.
    joint_entropy_corrected_sum(s_theta, s_phi, rho) -> float:
        −2π·ln(1−ρ²) + S(θ) + S(φ).
    conditional_entropy(model) -> float:
        Entropy of φ given θ.
    entropy_report(model, *, truncated=False) -> EntropyReport:
        All of the above for one model.
    default_trigger_tau(model) -> float:
        Joint entropy of the model with the correlation removed, plus a margin.
    should_re_estimate(report, tau) -> bool:
        Whether the joint entropy exceeds the trigger threshold.
"""

import logging
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from hybrid_precoding_sim.channel import AnglePhaseModel
from hybrid_precoding_sim.entropy.EntropyReport import EntropyReport
from hybrid_precoding_sim.entropy.EntropyException import (
    InvalidSigma,
    InvalidRho,
    QuadratureNonConvergent
)

logger = logging.getLogger(__name__)

SPAN_SIGMAS = 8.0
QUAD_ORDER = 16
START_PANELS = 8
MAX_PANELS = 256
TWO_PI_E = 2 * np.pi * np.e
# Ten times the quadrature refinement tolerance
TRIGGER_MARGIN = 1e-3


def gauss_legendre_nodes(lower: float, upper: float, panels: int,
                         order: int = QUAD_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights on [lower, upper].

    Args:
        lower (float): Interval start.
        upper (float): Interval end.
        panels (int): Number of equal sub-intervals.
        order (int, optional): Nodes per sub-interval. Defaults to 16.

    Returns:
        tuple[np.ndarray, np.ndarray]: Nodes and matching weights.
    """

    ref_nodes, ref_weights = leggauss(order)
    edges = np.linspace(lower, upper, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, np.newaxis] + half[:, np.newaxis] * ref_nodes).ravel()
    weights = (half[:, np.newaxis] * ref_weights).ravel()
    return nodes, weights


def integrate_2d(
    func: Callable[[np.ndarray, np.ndarray], np.ndarray],
    theta_bounds: tuple[float, float],
    phi_bounds: tuple[float, float], *,
    panels: int = START_PANELS,
    order: int = QUAD_ORDER
) -> float:
    t_nodes, t_weights = gauss_legendre_nodes(*theta_bounds, panels, order)
    p_nodes, p_weights = gauss_legendre_nodes(*phi_bounds, panels, order)
    theta, phi = np.meshgrid(t_nodes, p_nodes, indexing='ij')
    return float(t_weights @ func(theta, phi) @ p_weights)


def _check_sigma(sigma: float):
    if not sigma > 0:
        raise InvalidSigma(f'sigma must be positive, got {sigma}')


def entropy_1d(sigma: float) -> float:
    """Gaussian differential entropy ½·ln(2πe·σ²) in nats."""

    _check_sigma(sigma)
    return 0.5 * float(np.log(TWO_PI_E * sigma ** 2))


def entropy_1d_quadrature(sigma: float, *, panels: int = START_PANELS,
                          order: int = QUAD_ORDER) -> float:
    """−∫ f·ln f of a zero-mean Gaussian over ±8σ.

    Args:
        sigma (float): Standard deviation.
        panels (int, optional): Composite panels.
        order (int, optional): Nodes per panel.

    Returns:
        float: The entropy in nats.
    """

    _check_sigma(sigma)
    nodes, weights = gauss_legendre_nodes(-SPAN_SIGMAS * sigma,
                                          SPAN_SIGMAS * sigma, panels, order)
    log_f = -0.5 * (nodes / sigma) ** 2 - np.log(np.sqrt(2 * np.pi) * sigma)
    return float(-(weights * np.exp(log_f) * log_f).sum())


def _joint_entropy_at(model: AnglePhaseModel, panels: int, truncated: bool) -> float:
    if truncated:
        theta_bounds, phi_bounds = (-np.pi, np.pi), (0.0, 2 * np.pi)
        mass = integrate_2d(model.pdf, theta_bounds, phi_bounds, panels=panels)
        if not mass > 1e-12:
            raise QuadratureNonConvergent('the model puts no mass on the '
                                          'truncated angle/phase domain')
        log_mass = np.log(mass)

        def integrand(theta, phi):
            log_f = model.log_pdf(theta, phi) - log_mass
            return -np.exp(log_f) * log_f
    else:
        theta_bounds = (model.mu_theta - SPAN_SIGMAS * model.sigma_theta,
                        model.mu_theta + SPAN_SIGMAS * model.sigma_theta)
        phi_bounds = (model.mu_phi - SPAN_SIGMAS * model.sigma_phi,
                      model.mu_phi + SPAN_SIGMAS * model.sigma_phi)

        def integrand(theta, phi):
            log_f = model.log_pdf(theta, phi)
            return -np.exp(log_f) * log_f

    return integrate_2d(integrand, theta_bounds, phi_bounds, panels=panels)


def joint_entropy_quadrature(model: AnglePhaseModel, *, truncated: bool = False,
                             tol: float = 1e-4) -> float:
    """Joint entropy of (θ, φ) by 2-D composite Gauss-Legendre quadrature.

    The default domain is μ ± 8σ per axis. With truncated=True the density
    is restricted to [−π, π] x [0, 2π] and renormalized there. The panel
    count doubles until two successive estimates differ by less than tol.

    Args:
        model (AnglePhaseModel): The model.
        truncated (bool, optional): Use the angle/phase supports.
        tol (float, optional): Refinement tolerance in nats.

    Raises:
        QuadratureNonConvergent: If the refinement does not settle.

    Returns:
        float: The joint entropy in nats.
    """

    panels = START_PANELS
    previous = _joint_entropy_at(model, panels, truncated)
    while panels < MAX_PANELS:
        panels *= 2
        current = _joint_entropy_at(model, panels, truncated)
        if abs(current - previous) < tol:
            return current
        previous = current
    raise QuadratureNonConvergent(f'joint entropy did not settle within {tol} '
                                  f'nats at {panels} panels')


def joint_entropy_closed_form(model: AnglePhaseModel) -> float:
    return 0.5 * float(np.log(
        TWO_PI_E ** 2 * model.sigma_theta ** 2 * model.sigma_phi ** 2
        * (1 - model.rho ** 2)
    ))


def joint_entropy_corrected_sum(s_theta: float, s_phi: float, rho: float) -> float:
    """Correlation-corrected entropy sum −2π·ln(1−ρ²) + S(θ) + S(φ).

    Args:
        s_theta (float): Entropy of θ in nats.
        s_phi (float): Entropy of φ in nats.
        rho (float): Correlation coefficient in (−1, 1).

    Raises:
        InvalidRho: If |rho| >= 1.

    Returns:
        float: The value in nats.
    """

    if not abs(rho) < 1:
        raise InvalidRho(f'|rho| must be < 1, got {rho}')
    return float(-2 * np.pi * np.log(1 - rho ** 2) + s_theta + s_phi)


def conditional_entropy(model: AnglePhaseModel) -> float:
    """Entropy of φ given θ, ½·ln(2πe·(1−ρ²)·σ_φ²) in nats."""

    return 0.5 * float(np.log(
        TWO_PI_E * (1 - model.rho ** 2) * model.sigma_phi ** 2
    ))


def entropy_report(model: AnglePhaseModel, *, truncated: bool = False) -> EntropyReport:
    """Evaluate every entropy of the model.

    Args:
        model (AnglePhaseModel): The (fitted) model.
        truncated (bool, optional): Quadrature over the truncated supports.

    Returns:
        EntropyReport: Marginal, joint and conditional entropies in nats.
    """

    s_theta = entropy_1d(model.sigma_theta)
    s_phi = entropy_1d(model.sigma_phi)
    report = EntropyReport(
        s_theta=s_theta,
        s_phi=s_phi,
        s_joint_quadrature=joint_entropy_quadrature(model, truncated=truncated),
        s_joint_gaussian_closed_form=joint_entropy_closed_form(model),
        s_joint_corrected_sum=joint_entropy_corrected_sum(s_theta, s_phi, model.rho),
        s_cond_phi_given_theta=conditional_entropy(model)
    )
    logger.debug('joint entropy %.6f nats (quadrature) vs %.6f nats '
                 '(correlation-corrected sum)',
                 report.s_joint_quadrature, report.s_joint_corrected_sum)
    return report


def default_trigger_tau(model: AnglePhaseModel) -> float:
    """S(θ) + S(φ) plus a margin covering the quadrature error.

    An uncorrelated model has a joint entropy equal to S(θ) + S(φ), so it
    never triggers a re-estimation.
    """

    return entropy_1d(model.sigma_theta) + entropy_1d(model.sigma_phi) + TRIGGER_MARGIN


def should_re_estimate(report: EntropyReport, tau: float | None) -> bool:
    return tau is not None and report.s_joint_quadrature > tau
