"""Validated containers for bipartite quantum states."""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidState
from .matrixcore import HERMITIAN_ATOL, hermiticity_defect

TRACE_ATOL = 1e-10
# Small negative slack admits states produced by noisy numeric pipelines.
PSD_MIN_EIGENVALUE = -1e-9
NORM_ATOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator on an m (x) n space.

    Invariants are enforced at construction; the stored matrix is read-only,
    so instances are safe to share between workers.
    """

    m: int
    n: int
    mat: np.ndarray

    def __post_init__(self):
        mat = np.array(self.mat, dtype=complex)
        if self.m < 1 or self.n < 1:
            raise InvalidState(f"dimensions must be positive, got {self.m}x{self.n}")
        d = self.m * self.n
        if mat.shape != (d, d):
            raise InvalidState(
                f"shape {mat.shape} does not match dimensions {self.m}x{self.n}"
            )
        defect = hermiticity_defect(mat)
        if defect > HERMITIAN_ATOL:
            raise InvalidState(
                f"hermiticity invariant violated: residual {defect:.6g}"
            )
        trace_residual = abs(complex(np.trace(mat)) - 1.0)
        if trace_residual > TRACE_ATOL:
            raise InvalidState(
                f"trace invariant violated: residual {trace_residual:.6g}"
            )
        min_eig = float(np.linalg.eigvalsh((mat + mat.conj().T) / 2).min())
        if min_eig < PSD_MIN_EIGENVALUE:
            raise InvalidState(
                f"positivity invariant violated: min eigenvalue {min_eig:.6g}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)


@dataclass(frozen=True)
class PureState:
    """Unit vector on an m (x) n space, stored row-major over the B index."""

    m: int
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amp.shape != (self.m * self.n,):
            raise InvalidState(
                f"amplitude vector length {amp.size} does not match "
                f"dimensions {self.m}x{self.n}"
            )
        norm_residual = abs(float(np.linalg.norm(amp)) - 1.0)
        if norm_residual > NORM_ATOL:
            raise InvalidState(f"norm invariant violated: residual {norm_residual:.6g}")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    def projector(self) -> DensityMatrix:
        """The rank-1 density matrix |phi><phi|."""
        return DensityMatrix(self.m, self.n, np.outer(self.amplitudes, self.amplitudes.conj()))
