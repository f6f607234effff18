import pytest

from hybrid_precoding_sim.simulator import SimConfig


@pytest.fixture
def small_cfg() -> SimConfig:
    """A configuration small enough to run a few trials per test."""

    return SimConfig(n_tx=8, n_rf=4, n_rx=2, k_users=2, n_paths=6, n_snapshots=4,
                     pilot_samples=64, ber_symbols=1000, n_trials=3, max_iter=30,
                     outer_iter=2)
