"""Bloch decomposition of bipartite states.

A state rho on an m (x) n space is expanded as

    rho = (1/mn) [ I + sum_i x_i z_i (x) I + sum_j y_j I (x) w_j
                   + sum_ij T_ij z_i (x) w_j ]

over the SU(m) generators z and SU(n) generators w. The extraction
coefficients follow from Tr(z_i z_j) = 2 delta_ij:

    x_i = (m/2)  Tr(rho (z_i (x) I)),
    y_j = (n/2)  Tr(rho (I (x) w_j)),
    T_ij = (mn/4) Tr(rho (z_i (x) w_j)),

and the round-trip property decompose -> reconstruct -> identity is what
pins them down (see tests).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidState
from .states import DensityMatrix
from .su_generators import basis_stack

# Extraction traces vanish analytically on the imaginary axis; anything above
# this signals a non-Hermitian input upstream and is an error, not noise.
IMAG_RESIDUE_ATOL = 1e-10


@dataclass(frozen=True)
class BlochForm:
    m: int
    n: int
    x: np.ndarray  # length m^2 - 1
    y: np.ndarray  # length n^2 - 1
    T: np.ndarray  # (m^2 - 1, n^2 - 1)


def decompose(rho: DensityMatrix) -> BlochForm:
    """Local Bloch vectors and correlation matrix of a state."""
    m, n = rho.m, rho.n
    a_stack = basis_stack(m)
    b_stack = basis_stack(n)
    r4 = rho.mat.reshape(m, n, m, n)

    x = (m / 2) * np.einsum("ikjk,aji->a", r4, a_stack)
    y = (n / 2) * np.einsum("ikil,blk->b", r4, b_stack)
    t = (m * n / 4) * np.einsum("ikjl,aji,blk->ab", r4, a_stack, b_stack, optimize=True)

    residue = max(
        float(np.max(np.abs(x.imag))),
        float(np.max(np.abs(y.imag))),
        float(np.max(np.abs(t.imag))),
    )
    if residue > IMAG_RESIDUE_ATOL:
        raise InvalidState(
            f"imaginary residue {residue:.3e} in Bloch extraction traces"
        )
    return BlochForm(m=m, n=n, x=x.real.copy(), y=y.real.copy(), T=t.real.copy())


def reconstruct(bf: BlochForm) -> np.ndarray:
    """The mn x mn matrix determined by Bloch data.

    Hermitian with unit trace by construction; positivity is not implied for
    arbitrary (x, y, T) and is only checked when converting to DensityMatrix.
    """
    m, n = bf.m, bf.n
    if bf.x.shape != (m * m - 1,) or bf.y.shape != (n * n - 1,):
        raise DimensionMismatch(
            f"Bloch vector lengths {bf.x.shape}, {bf.y.shape} inconsistent "
            f"with dimensions {m}x{n}"
        )
    if bf.T.shape != (m * m - 1, n * n - 1):
        raise DimensionMismatch(
            f"correlation matrix shape {bf.T.shape} inconsistent with dimensions {m}x{n}"
        )
    a_stack = basis_stack(m)
    b_stack = basis_stack(n)
    total = np.eye(m * n, dtype=complex)
    total += np.kron(np.einsum("a,aij->ij", bf.x, a_stack), np.eye(n))
    total += np.kron(np.eye(m), np.einsum("b,bkl->kl", bf.y, b_stack))
    total += np.einsum(
        "ab,aij,bkl->ikjl", bf.T, a_stack, b_stack, optimize=True
    ).reshape(m * n, m * n)
    return total / (m * n)


def g_matrix(bf: BlochForm) -> np.ndarray:
    """x x^T + (2/n) T T^T; real symmetric and positive semidefinite."""
    g = np.outer(bf.x, bf.x) + (2.0 / bf.n) * (bf.T @ bf.T.T)
    return (g + g.T) / 2
