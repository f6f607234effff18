from dataclasses import dataclass
from math import isfinite

import numpy as np

from hybrid_precoding_sim.channel.ChannelException import InvalidModel


@dataclass(frozen=True)
class AnglePhaseModel:
    """Bivariate Gaussian model of the path angle θ and phase φ.

    All parameters are in radians except the dimensionless correlation
    coefficient rho. The density has unbounded support; wrapping onto the
    angle/phase supports is only applied when synthesizing channels.

    Instance methods:
        covariance(self) -> np.ndarray:
            The 2x2 covariance matrix of (θ, φ).
        pdf(self, theta, phi) -> np.ndarray:
            Joint density evaluated pointwise.
        log_pdf(self, theta, phi) -> np.ndarray:
            Natural log of the joint density.
        marginal_pdf_theta(self, theta) -> np.ndarray:
            Marginal density of θ.
        marginal_pdf_phi(self, phi) -> np.ndarray:
            Marginal density of φ.
        with_rho(self, rho) -> AnglePhaseModel:
            Copy of the model with another correlation coefficient.
    """

    mu_theta: float
    mu_phi: float
    sigma_theta: float
    sigma_phi: float
    rho: float

    def __post_init__(self):
        for name in ('mu_theta', 'mu_phi', 'sigma_theta', 'sigma_phi', 'rho'):
            if not isfinite(getattr(self, name)):
                raise InvalidModel(f'{name} must be finite')
        if self.sigma_theta <= 0 or self.sigma_phi <= 0:
            raise InvalidModel('standard deviations must be positive, got '
                               f'({self.sigma_theta}, {self.sigma_phi})')
        if abs(self.rho) >= 1:
            raise InvalidModel(f'|rho| must be < 1, got {self.rho}')

    def covariance(self) -> np.ndarray:
        cross = self.rho * self.sigma_theta * self.sigma_phi
        return np.array([
            [self.sigma_theta ** 2, cross],
            [cross, self.sigma_phi ** 2]
        ])

    def pdf(self, theta, phi) -> np.ndarray:
        """Joint density of (θ, φ) evaluated pointwise.

        Args:
            theta (array_like): Angles in radians.
            phi (array_like): Phases in radians, broadcastable with theta.

        Returns:
            np.ndarray: The density values.
        """

        return np.exp(self.log_pdf(theta, phi))

    def log_pdf(self, theta, phi) -> np.ndarray:
        one_minus_rho2 = 1.0 - self.rho ** 2
        u = (np.asarray(theta, dtype=float) - self.mu_theta) / self.sigma_theta
        v = (np.asarray(phi, dtype=float) - self.mu_phi) / self.sigma_phi
        quad = (u ** 2 - 2 * self.rho * u * v + v ** 2) / one_minus_rho2
        return -0.5 * quad - np.log(
            2 * np.pi * self.sigma_theta * self.sigma_phi * np.sqrt(one_minus_rho2)
        )

    def marginal_pdf_theta(self, theta) -> np.ndarray:
        u = (np.asarray(theta, dtype=float) - self.mu_theta) / self.sigma_theta
        return np.exp(-0.5 * u ** 2) / (np.sqrt(2 * np.pi) * self.sigma_theta)

    def marginal_pdf_phi(self, phi) -> np.ndarray:
        v = (np.asarray(phi, dtype=float) - self.mu_phi) / self.sigma_phi
        return np.exp(-0.5 * v ** 2) / (np.sqrt(2 * np.pi) * self.sigma_phi)

    def with_rho(self, rho: float) -> 'AnglePhaseModel':
        return AnglePhaseModel(
            self.mu_theta, self.mu_phi, self.sigma_theta, self.sigma_phi, rho
        )
