"""Negativity and geometric discord for bipartite states.

Geometric discord here carries the m/(m-1) normalization: m/(m-1) times the
squared Hilbert-Schmidt distance from rho to the nearest classical-quantum
state. Some references scale it by (m-1)/m relative to this convention; only
the m/(m-1)-normalized value is exposed.

For m = 2 the correlation-tensor formula is exact; for m >= 3 it is a lower
bound and `geometric_discord` says so via its exactness flag. An independent
brute-force minimization over qubit von Neumann measurements is provided as
`gd_bruteforce_2xn` and is used to cross-check the formula in tests.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import bloch
from .errors import BoundViolation, CapViolation, InvalidDimension, WrongDimension
from .matrixcore import (
    NEGATIVE_EIGENVALUE_CUTOFF,
    hermitian_eigenvalues,
    hs_norm_sq,
    partial_transpose,
)
from .states import DensityMatrix, PureState
from .su_generators import basis_stack

__all__ = [
    "DensityMatrix",
    "PureState",
    "MeasureReport",
    "negativity",
    "pt_negative_count",
    "gd_lower_bound",
    "geometric_discord",
    "gd_bruteforce_2xn",
    "project_a",
    "schmidt",
    "pure_negativity",
    "pure_gd",
    "maximal_state",
    "bounds_check",
    "measurement_identity_check",
]

# Tolerance for agreement of the two equivalent negativity expressions.
DUAL_NEGATIVITY_ATOL = 1e-9
BOUND_ATOL = 1e-9
IDENTITY_ATOL = 1e-10


@dataclass(frozen=True)
class MeasureReport:
    """Aggregated measures and bound verdicts for one state."""

    negativity: float
    negativity_sq: float
    discord: float
    discord_exact: bool
    pt_negative_count: int
    pt_negative_cap: int
    bounds_ok: bool


def negativity(rho: DensityMatrix) -> float:
    """Negativity of a state, normalized so the maximum value is 1.

    Computed as 2/(m-1) times the absolute sum of negative partial-transpose
    eigenvalues; the equivalent (trace norm - 1)/(m-1) expression is evaluated
    alongside and required to agree within 1e-9.
    """
    if rho.m < 2:
        raise InvalidDimension(f"negativity requires m >= 2, got m={rho.m}")
    w = hermitian_eigenvalues(partial_transpose(rho.mat, rho.m, rho.n))
    via_trace_norm = (float(np.sum(np.abs(w))) - 1.0) / (rho.m - 1)
    via_negative_part = 2.0 * float(-np.sum(w[w < 0.0])) / (rho.m - 1)
    if abs(via_trace_norm - via_negative_part) > DUAL_NEGATIVITY_ATOL:
        raise BoundViolation(
            "the two negativity expressions disagree: "
            f"{via_trace_norm!r} vs {via_negative_part!r}"
        )
    return via_negative_part


def pt_negative_count(rho: DensityMatrix) -> int:
    """Number of partial-transpose eigenvalues below the noise cutoff.

    Provably at most (m-1)(n-1); exceeding that cap is reported as a fault
    rather than clamped.
    """
    w = hermitian_eigenvalues(partial_transpose(rho.mat, rho.m, rho.n))
    count = int(np.sum(w < NEGATIVE_EIGENVALUE_CUTOFF))
    cap = (rho.m - 1) * (rho.n - 1)
    if count > cap:
        raise CapViolation(
            f"{count} negative partial-transpose eigenvalues exceed the cap {cap} "
            f"for a {rho.m}x{rho.n} state"
        )
    return count


def gd_lower_bound(rho: DensityMatrix) -> float:
    """Correlation-tensor lower bound on geometric discord.

    (2/(m(m-1)n)) [ ||x||^2 + (2/n)||T||^2 - sum of top m-1 eigenvalues of
    G = x x^T + (2/n) T T^T ]. Nonnegative analytically; clamped at zero only
    within -1e-12 of solver noise.
    """
    bf = bloch.decompose(rho)
    g = bloch.g_matrix(bf)
    lam = np.linalg.eigvalsh(g)[::-1]
    top = float(np.sum(lam[: rho.m - 1]))
    raw = (2.0 / (rho.m * (rho.m - 1) * rho.n)) * (
        float(np.dot(bf.x, bf.x)) + (2.0 / rho.n) * hs_norm_sq(bf.T) - top
    )
    if raw < -1e-12:
        raise BoundViolation(f"discord lower bound came out negative: {raw!r}")
    return max(raw, 0.0)


def geometric_discord(rho: DensityMatrix) -> tuple[float, bool]:
    """Geometric discord with an exactness flag.

    The value is the correlation-tensor expression, which equals the discord
    for every 2 (x) n state; for m >= 3 no closed formula is available and
    the value is a lower bound, flagged exact=False.
    """
    return gd_lower_bound(rho), rho.m == 2


def _direction(theta: float, phi: float) -> np.ndarray:
    sin_t = math.sin(theta)
    return np.array([sin_t * math.cos(phi), sin_t * math.sin(phi), math.cos(theta)])


def _qubit_projectors(u) -> tuple[np.ndarray, np.ndarray]:
    ux, uy, uz = (float(c) for c in u)
    u_dot_sigma = np.array([[uz, ux - 1j * uy], [ux + 1j * uy, -uz]])
    p_plus = (np.eye(2) + u_dot_sigma) / 2
    return p_plus, np.eye(2) - p_plus


def project_a(mat: np.ndarray, n: int, u) -> np.ndarray:
    """Apply the qubit von Neumann measurement along direction u to side A.

    Returns sum_k (P_k (x) I_n) rho (P_k (x) I_n) for the projectors
    P_+/- = (I +/- u.sigma)/2.
    """
    r4 = np.asarray(mat).reshape(2, n, 2, n)
    out = np.zeros_like(r4)
    for p in _qubit_projectors(u):
        out += np.einsum("ab,bicj,cd->aidj", p, r4, p)
    return out.reshape(2 * n, 2 * n)


def _measurement_objective(r4: np.ndarray, n: int, theta: float, phi: float) -> float:
    # 2 ||rho - Pi(rho)||^2 for the measurement along (theta, phi).
    p_plus, p_minus = _qubit_projectors(_direction(theta, phi))
    projected = np.einsum("ab,bicj,cd->aidj", p_plus, r4, p_plus)
    projected += np.einsum("ab,bicj,cd->aidj", p_minus, r4, p_minus)
    diff = r4 - projected
    return 2.0 * float(np.vdot(diff, diff).real)


def gd_bruteforce_2xn(rho: DensityMatrix, resolution: int = 32) -> float:
    """Geometric discord of a 2 (x) n state by direct minimization.

    Minimizes 2 ||rho - Pi(rho)||^2 over all qubit von Neumann measurements,
    parametrized by unit vectors u on the sphere. A resolution x 2*resolution
    (theta, phi) grid localizes the basin; downhill-simplex descent seeded at
    the best grid point with grid-spacing steps refines it. Serves as the
    independent oracle for `geometric_discord`.
    """
    if rho.m != 2:
        raise WrongDimension(f"brute-force discord requires m = 2, got m={rho.m}")
    if resolution < 2:
        raise ValueError(f"resolution must be at least 2, got {resolution}")
    n = rho.n
    r4 = rho.mat.reshape(2, n, 2, n)

    thetas = np.linspace(0.0, math.pi, resolution)
    phis = np.linspace(0.0, 2.0 * math.pi, 2 * resolution, endpoint=False)
    grid_t, grid_p = np.meshgrid(thetas, phis, indexing="ij")
    grid_t = grid_t.ravel()
    grid_p = grid_p.ravel()

    sin_t = np.sin(grid_t)
    u = np.stack([sin_t * np.cos(grid_p), sin_t * np.sin(grid_p), np.cos(grid_t)], axis=1)
    sigma = basis_stack(2)
    u_dot_sigma = np.einsum("ka,aij->kij", u, sigma)
    p_plus = (np.eye(2) + u_dot_sigma) / 2
    p_minus = np.eye(2) - p_plus

    best_val = math.inf
    best_idx = 0
    chunk = 8192
    for start in range(0, len(grid_t), chunk):
        pp = p_plus[start : start + chunk]
        pm = p_minus[start : start + chunk]
        projected = np.einsum("kab,bicj,kcd->kaidj", pp, r4, pp, optimize=True)
        projected += np.einsum("kab,bicj,kcd->kaidj", pm, r4, pm, optimize=True)
        diff = r4[None, ...] - projected
        vals = 2.0 * np.sum(np.abs(diff) ** 2, axis=(1, 2, 3, 4))
        k = int(np.argmin(vals))
        if vals[k] < best_val:
            best_val = float(vals[k])
            best_idx = start + k

    theta = float(grid_t[best_idx])
    phi = float(grid_p[best_idx])
    width_t = math.pi / (resolution - 1)
    width_p = math.pi / resolution

    # The objective is smooth in (theta, phi) for any theta, so the simplex
    # may wander past the poles or the 2*pi seam without harm.
    result = minimize(
        lambda tp: _measurement_objective(r4, n, tp[0], tp[1]),
        x0=np.array([theta, phi]),
        method="Nelder-Mead",
        options={
            "initial_simplex": np.array(
                [[theta, phi], [theta + width_t, phi], [theta, phi + width_p]]
            ),
            "xatol": 1e-10,
            "fatol": 1e-14,
            "maxfev": 500,
        },
    )
    return min(best_val, float(result.fun))


def schmidt(phi: PureState) -> np.ndarray:
    """Schmidt coefficients of a pure state, sorted nonincreasing.

    Singular values of the m x n amplitude matrix, with values at or below
    1e-12 dropped. Squares sum to 1 for a unit vector.
    """
    amp = phi.amplitudes.reshape(phi.m, phi.n)
    c = np.linalg.svd(amp, compute_uv=False)
    return c[c > 1e-12].copy()


def pure_negativity(c, m: int) -> float:
    """Negativity of a pure state from its Schmidt coefficients."""
    c = np.asarray(c, dtype=float)
    return (float(np.sum(c)) ** 2 - 1.0) / (m - 1)


def pure_gd(c, m: int) -> float:
    """Geometric discord of a pure state from its Schmidt coefficients."""
    c = np.asarray(c, dtype=float)
    return (m / (m - 1)) * (1.0 - float(np.sum(c**4)))


def maximal_state(m: int, n: int) -> DensityMatrix:
    """Projector onto (1/sqrt(m)) sum_i |i>|i>, embedded in m (x) n.

    Attains negativity 1 and geometric discord 1.
    """
    if not 2 <= m <= n:
        raise InvalidDimension(f"maximal state requires 2 <= m <= n, got {m}x{n}")
    v = np.zeros(m * n, dtype=complex)
    for i in range(m):
        v[i * n + i] = 1.0 / math.sqrt(m)
    return DensityMatrix(m, n, np.outer(v, v.conj()))


def measurement_identity_check(rho: DensityMatrix, u) -> tuple[float, float]:
    """Evaluate Tr((Pi(rho))^2) and Tr(rho Pi(rho)) for the measurement along u.

    The two traces coincide for every von Neumann measurement, and
    ||rho - Pi(rho)||^2 = Tr(rho^2) - Tr((Pi(rho))^2); both identities are
    verified within 1e-10 and a failure raises, since it can only mean a
    numerical fault.
    """
    if rho.m != 2:
        raise WrongDimension(f"measurement identity requires m = 2, got m={rho.m}")
    u = np.asarray(u, dtype=float)
    u = u / np.linalg.norm(u)
    projected = project_a(rho.mat, rho.n, u)
    pi_sq = float(np.trace(projected @ projected).real)
    rho_pi = float(np.trace(rho.mat @ projected).real)
    if abs(pi_sq - rho_pi) > IDENTITY_ATOL:
        raise BoundViolation(
            f"measurement identity failed: Tr(Pi(rho)^2)={pi_sq!r} vs "
            f"Tr(rho Pi(rho))={rho_pi!r}"
        )
    distance_sq = hs_norm_sq(rho.mat - projected)
    purity_gap = float(np.trace(rho.mat @ rho.mat).real) - pi_sq
    if abs(distance_sq - purity_gap) > IDENTITY_ATOL:
        raise BoundViolation(
            f"distance identity failed: ||rho-Pi(rho)||^2={distance_sq!r} vs "
            f"Tr(rho^2)-Tr(Pi(rho)^2)={purity_gap!r}"
        )
    return pi_sq, rho_pi


def bounds_check(rho: DensityMatrix) -> MeasureReport:
    """Compute all measures and verify the proven bounds.

    0 <= N <= 1, 0 <= D <= m/(m-1) and -m/(m-1) <= N^2 - D <= 1, each with
    1e-9 slack. A violation raises BoundViolation: these are theorems, so a
    failure signals a numerical fault.
    """
    neg = negativity(rho)
    disc, exact = geometric_discord(rho)
    count = pt_negative_count(rho)
    cap = (rho.m - 1) * (rho.n - 1)
    d_max = rho.m / (rho.m - 1)
    gap = neg * neg - disc

    if not -BOUND_ATOL <= neg <= 1.0 + BOUND_ATOL:
        raise BoundViolation(f"negativity {neg!r} outside [0, 1]")
    if not -BOUND_ATOL <= disc <= d_max + BOUND_ATOL:
        raise BoundViolation(f"discord {disc!r} outside [0, {d_max}]")
    if not -d_max - BOUND_ATOL <= gap <= 1.0 + BOUND_ATOL:
        raise BoundViolation(
            f"N^2 - D = {gap!r} outside [{-d_max}, 1] for a {rho.m}x{rho.n} state"
        )
    return MeasureReport(
        negativity=neg,
        negativity_sq=neg * neg,
        discord=disc,
        discord_exact=exact,
        pt_negative_count=count,
        pt_negative_cap=cap,
        bounds_ok=True,
    )
