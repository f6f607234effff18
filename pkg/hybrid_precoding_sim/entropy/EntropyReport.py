from dataclasses import dataclass, asdict


@dataclass(frozen=True)
class EntropyReport:
    """Entropies of a fitted angle/phase model, all in nats.

    s_joint_corrected_sum holds the literal correlation-corrected sum
    −2π·ln(1−ρ²) + S(θ) + S(φ); it is reported next to the quadrature value
    without any claim that the two agree.
    """

    s_theta: float
    s_phi: float
    s_joint_quadrature: float
    s_joint_gaussian_closed_form: float
    s_joint_corrected_sum: float
    s_cond_phi_given_theta: float
    unit: str = 'nats'

    def as_dict(self) -> dict:
        return asdict(self)
