"""Dense complex matrix helpers shared across the package.

Matrices are plain 2-D numpy arrays (complex128, row-major). Every function
is pure: arguments are never mutated, results are fresh arrays.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

# Type used in signatures. Anything coercible to a 2-D complex array works.
CMatrix = np.ndarray

# Default absolute tolerance for Frobenius-norm residual checks. The catalog
# constructions are built from unit-modulus data, so conditioning stays benign
# and an absolute bound is appropriate.
DEFAULT_TOL = 1e-9


def as_cmatrix(a) -> CMatrix:
    """Coerce input to a 2-D complex128 array, rejecting NaN and Inf entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got {m.ndim} dimension(s)")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    return m


def matmul(a: CMatrix, b: CMatrix) -> CMatrix:
    """Matrix product a @ b with an explicit inner-dimension check."""
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def hermitian(a: CMatrix) -> CMatrix:
    """Conjugate transpose."""
    return as_cmatrix(a).conj().T.copy()


def trace(a: CMatrix) -> complex:
    """Sum of the diagonal of a square matrix."""
    a = as_cmatrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"trace requires a square matrix, got {a.shape}")
    return complex(np.trace(a))


def vec(a: CMatrix) -> CMatrix:
    """Stack the columns of a top to bottom into a (rows*cols) x 1 matrix."""
    a = as_cmatrix(a)
    return np.array(a.reshape(-1, 1, order="F"))


def frobenius(a) -> float:
    """Frobenius norm of a matrix."""
    return float(np.linalg.norm(a))


def solve_hermitian_positive(a: CMatrix, b: CMatrix) -> CMatrix:
    """Solve a @ x = b for Hermitian positive definite a.

    Uses a Cholesky factorization rather than forming an inverse. Raises
    ValueError when a is not square, not Hermitian, or not positive definite.
    """
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"coefficient matrix must be square, got {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    scale = max(1.0, frobenius(a))
    if frobenius(a - a.conj().T) > 1e-8 * scale:
        raise ValueError("coefficient matrix is not Hermitian")
    try:
        x = cho_solve(cho_factor(a, lower=True), b)
    except LinAlgError as exc:
        raise ValueError("coefficient matrix is not positive definite") from exc
    if not np.isfinite(x).all():
        raise ValueError("solve produced non-finite values")
    return x


def is_scaled_unitary(a: CMatrix, scale: float, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Check whether a @ a^H equals scale * I.

    Returns (verdict, residual) where residual is the Frobenius norm of
    a @ a^H - scale * I.
    """
    a = as_cmatrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"scaled-unitary check requires a square matrix, got {a.shape}")
    if scale <= 0:
        raise ValueError("scale must be positive")
    residual = frobenius(a @ a.conj().T - scale * np.eye(a.shape[0]))
    return residual <= tol, residual
