"""Dense complex linear algebra for 6x6-scale problems.

All matrices are 2-D complex128 numpy arrays.  The heavy lifting is
delegated to LAPACK via numpy; this module pins down the conventions the
rest of the package relies on (eigenvalues ascending, singular values
descending, relative rank threshold) and validates inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerances",
    "DimensionMismatchError",
    "NonHermitianError",
    "as_cmatrix",
    "matmul",
    "kron",
    "dagger",
    "eig_hermitian",
    "svd_values",
    "numerical_rank",
    "unitarity_residual",
]


class DimensionMismatchError(ValueError):
    """Operand shapes are incompatible."""


class NonHermitianError(ValueError):
    """Matrix expected to be Hermitian is not, beyond tolerance."""


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared across the package.

    unitarity_tol: max-norm budget for ``m m^dag - I`` residuals.
    modulus_tol:   budget for entrywise modulus comparisons (CHM checks).
    rank_rel_tol:  singular values below ``rank_rel_tol * sigma_max`` count
                   as zero.
    eig_clamp:     eigenvalues below this are treated as exact zeros before
                   entropy logarithms (x log x -> 0 at x = 0).
    """

    unitarity_tol: float = 1e-10
    modulus_tol: float = 1e-10
    rank_rel_tol: float = 1e-8
    eig_clamp: float = 1e-14

    def __post_init__(self) -> None:
        for name in ("unitarity_tol", "modulus_tol", "rank_rel_tol", "eig_clamp"):
            value = getattr(self, name)
            if not (value >= 0.0 and np.isfinite(value)):
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")


DEFAULT_TOL = Tolerances()


def as_cmatrix(entries, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce to a validated 2-D complex matrix (finite entries only)."""
    m = np.asarray(entries, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if rows is not None and m.shape[0] != rows:
        raise DimensionMismatchError(f"expected {rows} rows, got {m.shape[0]}")
    if cols is not None and m.shape[1] != cols:
        raise DimensionMismatchError(f"expected {cols} cols, got {m.shape[1]}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return m


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Complex matrix product with an explicit shape check."""
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, (a kron b)[i*br+k, j*bc+l] = a[i,j] b[k,l]."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(np.asarray(m, dtype=complex)).T


def unitarity_residual(m: np.ndarray) -> float:
    """Max-norm of ``m m^dag - I`` (0 for exactly unitary m)."""
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatchError("unitarity requires a square matrix")
    return float(np.max(np.abs(m @ dagger(m) - np.eye(m.shape[0]))))


def eig_hermitian(m: np.ndarray, tol: Tolerances = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with real eigenvalues in
    ascending order and orthonormal eigenvector columns.  Raises
    NonHermitianError when ``|m - m^dag|_F`` exceeds the unitarity
    tolerance.
    """
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatchError("eig_hermitian requires a square matrix")
    herm_res = float(np.linalg.norm(m - dagger(m)))
    if herm_res >= tol.unitarity_tol:
        raise NonHermitianError(f"matrix is not Hermitian (residual {herm_res:.3e})")
    w, v = np.linalg.eigh(m)
    return w, v


def svd_values(m: np.ndarray) -> np.ndarray:
    """Singular values, descending and nonnegative."""
    return np.linalg.svd(as_cmatrix(m), compute_uv=False)


def numerical_rank(m: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> int:
    """Count of singular values above ``rank_rel_tol * sigma_max``.

    The threshold is relative so that overall scalings (e.g. the 1/sqrt(6)
    of a CHM) do not move rank decisions.  The zero matrix has rank 0.
    """
    s = svd_values(m)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol.rank_rel_tol * s[0]))
