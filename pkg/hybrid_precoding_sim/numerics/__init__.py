"""Package holding the complex-matrix primitives shared by every stage of the
   precoding pipeline.

Modules:
    utils: Hermitian eigendecomposition, HPD solves, Frobenius norm and PSD
           checks.
    NumericsException: Errors raised by the primitives.
"""

from hybrid_precoding_sim.numerics.utils import (
    CMatrix,
    as_cmatrix,
    frobenius_norm,
    hermitian_evd,
    solve_hpd,
    is_psd
)
from hybrid_precoding_sim.numerics.NumericsException import (
    NumericsException,
    NotHermitian,
    NotFinite,
    Singular,
    DimensionMismatch
)
