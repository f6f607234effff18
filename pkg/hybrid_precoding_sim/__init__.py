"""Hybrid analog/digital precoding for multi-user massive MIMO downlinks with
   correlated angle/phase multipath channels, entropy analytics of the
   channel model and seeded Monte-Carlo experiment sweeps.

Internal packages:
    numerics: Complex-matrix primitives.
    channel: Angle/phase model, path sampling and channel synthesis.
    entropy: Differential entropies of the angle/phase model.
    precoding: EVD analog stage and MMSE digital stage.
    combining: Per-user RF combiners and the sum-rate gradient solver.
    metrics: Rates, SINR, BER, estimation error and interference power.
    simulator: Configuration, trials, sweeps and the complexity timing.
    result_writers: CSV/JSON results with their run manifest.

External packages:
    numpy: Array computations and random streams.
    scipy: Cholesky solves, block-diagonal assembly and the Gaussian tail.
    python-dotenv: Statement parser reading the key=value configuration.
"""

__version__ = '0.1.0'
