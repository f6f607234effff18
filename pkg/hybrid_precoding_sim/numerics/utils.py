"""Defines the complex-matrix primitives consumed by the other packages.

Functions:
    as_cmatrix(m, *, name='matrix') -> CMatrix:
        Validate and convert the input into a finite 2-D complex matrix.
    frobenius_norm(m) -> float:
        Frobenius norm of a matrix (or vector).
    hermitian_evd(m) -> tuple[np.ndarray, CMatrix]:
        Eigendecomposition of a Hermitian matrix, eigenvalues descending.
    solve_hpd(a, b) -> CMatrix:
        Solve a·x = b for a Hermitian positive-definite a.
    is_psd(m, *, tol=1e-10) -> bool:
        Check that a Hermitian matrix is positive semi-definite.
"""

import numpy as np
import numpy.typing as npt
from scipy import linalg

from hybrid_precoding_sim.numerics.NumericsException import (
    NotHermitian,
    NotFinite,
    Singular,
    DimensionMismatch
)

CMatrix = npt.NDArray[np.complex128]

HERMITIAN_TOL = 1e-9
MAX_CONDITION = 1e14


def as_cmatrix(m, *, name: str = 'matrix') -> CMatrix:
    """Validate and convert the input into a finite 2-D complex matrix.

    Vectors are promoted to a single column.

    Args:
        m (array_like): The matrix entries.
        name (str, optional): Name used in error messages.

    Raises:
        DimensionMismatch: If the input has no entries or more than 2 axes.
        NotFinite: If an entry is NaN or infinite.

    Returns:
        CMatrix: A complex128 array with shape (rows, cols).
    """

    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr[:, np.newaxis]
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionMismatch(f'{name} must be a non-empty 2-D matrix, '
                                f'got shape {arr.shape}')
    if not np.all(np.isfinite(arr)):
        raise NotFinite(f'{name} holds NaN or infinite entries')
    return arr


def frobenius_norm(m) -> float:
    """Frobenius norm √(Σ|m[i,j]|²) of a matrix (or vector).

    Args:
        m (array_like): The matrix.

    Returns:
        float: The norm, 0 only for the zero matrix.
    """

    return float(np.linalg.norm(np.asarray(m, dtype=np.complex128).ravel()))


def _symmetrized(m: CMatrix, name: str) -> CMatrix:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f'{name} must be square, got shape {m.shape}')
    asymmetry = np.max(np.abs(m - m.conj().T))
    if asymmetry > HERMITIAN_TOL * max(frobenius_norm(m), 1.0):
        raise NotHermitian(f'{name} is not Hermitian '
                           f'(max asymmetry {asymmetry:.3e})')
    return 0.5 * (m + m.conj().T)


def hermitian_evd(m) -> tuple[np.ndarray, CMatrix]:
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrized as (m + m^H)/2 before decomposition. Each
    eigenvector is rotated so that its largest-magnitude component is real
    and positive, which makes the output deterministic.

    Args:
        m (array_like): A square Hermitian matrix.

    Raises:
        NotHermitian: If the symmetry tolerance is violated.
        NotFinite: On NaN/Inf input.

    Returns:
        tuple[np.ndarray, CMatrix]: The real eigenvalues sorted in descending
            order and the unitary matrix of matching eigenvector columns.
    """

    m = _symmetrized(as_cmatrix(m, name='evd input'), 'evd input')
    eigvals, eigvecs = np.linalg.eigh(m)
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]

    # Column phase: largest-magnitude component real-positive
    pivots = np.argmax(np.abs(eigvecs), axis=0)
    pivot_values = eigvecs[pivots, np.arange(eigvecs.shape[1])]
    eigvecs = eigvecs * (np.abs(pivot_values) / pivot_values)
    return eigvals, eigvecs


def solve_hpd(a, b) -> CMatrix:
    """Solve a·x = b for a Hermitian positive-definite matrix a.

    A Cholesky factorization is attempted first; matrices that are Hermitian
    but indefinite fall back to a symmetric LU solve.

    Args:
        a (array_like): The square Hermitian system matrix.
        b (array_like): The right-hand side, a vector or a matrix.

    Raises:
        DimensionMismatch: If a and b are not conformable.
        NotHermitian: If a is not Hermitian within tolerance.
        Singular: If a is numerically rank deficient.
        NotFinite: On NaN/Inf input.

    Returns:
        CMatrix: The solution x, shaped like b (vectors stay 1-D).
    """

    a = _symmetrized(as_cmatrix(a, name='system matrix'), 'system matrix')
    b_arr = np.asarray(b, dtype=np.complex128)
    was_vector = b_arr.ndim == 1
    b_mat = as_cmatrix(b_arr, name='right-hand side')
    if b_mat.shape[0] != a.shape[0]:
        raise DimensionMismatch(f'cannot solve {a.shape} against {b_mat.shape}')

    if not np.any(a):
        raise Singular('system matrix is zero')
    if np.linalg.cond(a) > MAX_CONDITION:
        raise Singular('system matrix is numerically rank deficient')

    try:
        x = linalg.cho_solve(linalg.cho_factor(a, lower=True), b_mat)
    except linalg.LinAlgError:
        x = linalg.solve(a, b_mat, assume_a='her')
    return x[:, 0] if was_vector else x


def is_psd(m, *, tol: float = 1e-10) -> bool:
    """Check that a Hermitian matrix is positive semi-definite.

    Args:
        m (array_like): The Hermitian matrix.
        tol (float, optional): Relative tolerance on negative eigenvalues.

    Returns:
        bool: True if every eigenvalue is ≥ −tol·‖m‖_F.
    """

    m = _symmetrized(as_cmatrix(m), 'matrix')
    return bool(np.linalg.eigvalsh(m).min() >= -tol * frobenius_norm(m))
