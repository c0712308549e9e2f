"""Dense complex matrix arithmetic for small bipartite operators.

All functions are pure and operate on plain ``numpy`` arrays (complex128,
row-major). Spectra are returned as real vectors sorted nonincreasing.
"""

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotSquare

# Absolute tolerance on max |A - A^dag| entry for accepting a matrix as Hermitian.
HERMITIAN_ATOL = 1e-10

# Eigenvalues below this count as negative; above is solver noise floor.
NEGATIVE_EIGENVALUE_CUTOFF = -1e-10


def hermiticity_defect(a: np.ndarray) -> float:
    """Max absolute deviation of a square matrix from its conjugate transpose."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - a.conj().T)))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(np.asarray(a), np.asarray(b))


def hermitian_eigenvalues(a: np.ndarray, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted nonincreasing.

    The input is checked against `atol` and symmetrized to (A + A^dag)/2
    before diagonalization, which stabilizes the iteration for inputs that
    carry float noise.
    """
    a = np.asarray(a, dtype=complex)
    defect = hermiticity_defect(a)
    if defect > atol:
        raise NotHermitian(
            f"hermiticity defect {defect:.3e} exceeds tolerance {atol:.1e}"
        )
    sym = (a + a.conj().T) / 2
    return np.linalg.eigvalsh(sym)[::-1].copy()


def partial_transpose(a: np.ndarray, m: int, n: int) -> np.ndarray:
    """Transpose on the m-dimensional subsystem only.

    Maps block (i, j) of the m x m block structure to block (j, i); a pure
    entry permutation, so applying it twice returns the input exactly.
    """
    a = np.asarray(a)
    if a.shape != (m * n, m * n):
        raise DimensionMismatch(
            f"expected shape ({m * n}, {m * n}) for dimensions {m}x{n}, got {a.shape}"
        )
    return a.reshape(m, n, m, n).transpose(2, 1, 0, 3).reshape(m * n, m * n).copy()


def partial_trace_b(a: np.ndarray, m: int, n: int) -> np.ndarray:
    """Trace out the n-dimensional subsystem, leaving an m x m marginal."""
    a = np.asarray(a)
    if a.shape != (m * n, m * n):
        raise DimensionMismatch(
            f"expected shape ({m * n}, {m * n}) for dimensions {m}x{n}, got {a.shape}"
        )
    return np.einsum("ikjk->ij", a.reshape(m, n, m, n))


def trace_norm(a: np.ndarray) -> float:
    """Sum of absolute eigenvalues (Hermitian input)."""
    return float(np.sum(np.abs(hermitian_eigenvalues(a))))


def hs_norm_sq(a: np.ndarray) -> float:
    """Squared Hilbert-Schmidt norm: sum of squared entry magnitudes."""
    a = np.asarray(a)
    return float(np.vdot(a, a).real)
