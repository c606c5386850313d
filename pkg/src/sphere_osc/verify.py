"""Independent numerical oracles for the closed forms.

Nothing in here trusts the spectrum or eigenfunction formulas: quadrature
rules come from the Golub-Welsch eigenproblem, eigenvalue oracles from a
symmetric finite-difference discretization, and differential-equation
residuals from Richardson-extrapolated central differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from . import eigenfunctions, model, spectrum
from .errors import DomainError
from .model import EuclideanParams, OscillatorParams, QuantumNumbers
from .special import log_gamma

# Tolerances of the verification contract (shared by the CLI and the tests).
NORMALIZATION_TOL = 1.0e-10
ODE_RESIDUAL_TOL = 1.0e-8
ORACLE_TOL = 1.0e-6

_LOG2 = math.log(2.0)

# The reduced eigenfunction behaves like (distance)^p at a pole, p = mu + 1/2.
# Pointwise sampling of the inverse-square potential converges like
# h^(2p - 1) there, which beats the second-order bulk only for p >= 3/2;
# below that the singular term is discretized so the stencil annihilates the
# local power exactly.  The correction is confined to a fixed window at each
# pole: in the bulk the pointwise values are both accurate and cheap, and the
# matched boundary row's 3^p entry stays tiny for p < 3/2 (a huge outlier
# entry would wreck the bisection eigensolver's absolute tolerance).
_MATCHED_EXPONENT_MAX = 1.5
_MATCHED_WINDOW = math.pi / 16.0


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for the weight (1-x)^alpha (1+x)^beta on (-1, 1)."""

    nodes: np.ndarray
    weights: np.ndarray
    alpha: float
    beta: float


@dataclass(frozen=True)
class DiscretizedOperator:
    """Symmetric tridiagonal discretization of the reduced quasi-radial operator."""

    grid: np.ndarray
    diagonal: np.ndarray
    offdiag: np.ndarray
    unit: float


@dataclass(frozen=True)
class VerificationReport:
    """Per-state record of every oracle comparison."""

    state: QuantumNumbers
    normalization_error: float
    max_ode_residual: float
    oracle_energy_relerr: float
    node_count_match: bool

    @property
    def passed(self) -> bool:
        return (
            self.normalization_error <= NORMALIZATION_TOL
            and self.max_ode_residual <= ODE_RESIDUAL_TOL
            and self.oracle_energy_relerr <= ORACLE_TOL
            and self.node_count_match
        )


def gauss_jacobi_rule(n: int, alpha: float, beta: float) -> QuadratureRule:
    """n-point Gauss-Jacobi rule, exact through polynomial degree 2n - 1.

    Golub-Welsch construction: nodes and weights come from the symmetric
    tridiagonal eigenproblem of the monic three-term recurrence.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise DomainError(f"rule size must be a positive integer, got {n!r}")
    for name, v in (("alpha", alpha), ("beta", beta)):
        if not math.isfinite(v) or v <= -1.0:
            raise DomainError(f"{name} must be finite and > -1, got {v!r}")
    n = int(n)
    apb = alpha + beta
    # total mass of the weight: 2^(a+b+1) * B(a+1, b+1)
    log_mu0 = (apb + 1.0) * _LOG2 + log_gamma(alpha + 1.0) + log_gamma(beta + 1.0) - log_gamma(apb + 2.0)
    mu0 = math.exp(log_mu0)

    diag = np.empty(n)
    diag[0] = (beta - alpha) / (apb + 2.0)
    k = np.arange(1, n, dtype=float)
    diag[1:] = (beta - alpha) * (beta + alpha) / ((2.0 * k + apb) * (2.0 * k + apb + 2.0))
    if n == 1:
        return QuadratureRule(nodes=diag.copy(), weights=np.array([mu0]), alpha=alpha, beta=beta)

    bsq = np.empty(n - 1)
    bsq[0] = 4.0 * (alpha + 1.0) * (beta + 1.0) / ((apb + 2.0) ** 2 * (apb + 3.0))
    k = np.arange(2, n, dtype=float)
    bsq[1:] = (
        4.0 * k * (k + alpha) * (k + beta) * (k + apb)
        / ((2.0 * k + apb) ** 2 * (2.0 * k + apb + 1.0) * (2.0 * k + apb - 1.0))
    )
    nodes, vecs = eigh_tridiagonal(diag, np.sqrt(bsq))
    weights = mu0 * vecs[0, :] ** 2
    return QuadratureRule(nodes=nodes, weights=weights, alpha=alpha, beta=beta)


def _measure_log(params: OscillatorParams, x: np.ndarray, mu1: float, mu2: float) -> np.ndarray:
    """Log of the sphere measure factor divided by the matched Jacobi weight."""
    lognz = np.log1p(-x)
    logpz = np.log1p(x)
    return (
        params.N * math.log(params.R)
        + (0.5 * params.N - 1.0) * (lognz + logpz)
        - mu2 * lognz
        - mu1 * logpz
    )


def normalization_check(params: OscillatorParams, qn: QuantumNumbers, num_nodes: int = 200) -> float:
    """Quadrature value of R^N * integral sin^(N-1)(theta) F^2 dtheta (target: 1).

    Change of variable x = cos(theta) with the Gauss-Jacobi rule matched to
    the state's weight exponents (alpha = mu_L2, beta = mu_L1).
    """
    mu1 = model.mu(params, qn.L, 1)
    mu2 = model.mu(params, qn.L, 2)
    rule = gauss_jacobi_rule(num_nodes, mu2, mu1)
    theta = np.arccos(rule.nodes)
    log_abs, sign = eigenfunctions.log_abs_F_grid(params, qn, theta)
    log_g = 2.0 * log_abs + _measure_log(params, rule.nodes, mu1, mu2)
    g = np.where(sign == 0.0, 0.0, np.exp(log_g))
    return float(rule.weights @ g)


def overlap_matrix(params: OscillatorParams, L: int, n_max: int, num_nodes: int = 200) -> np.ndarray:
    """Pairwise overlaps of the states n_theta = 0..n_max at fixed L (target: identity)."""
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    mu1 = model.mu(params, L, 1)
    mu2 = model.mu(params, L, 2)
    rule = gauss_jacobi_rule(num_nodes, mu2, mu1)
    theta = np.arccos(rule.nodes)
    half_measure = 0.5 * _measure_log(params, rule.nodes, mu1, mu2)
    rows = []
    for n in range(n_max + 1):
        log_abs, sign = eigenfunctions.log_abs_F_grid(params, QuantumNumbers(n, L), theta)
        rows.append(sign * np.exp(log_abs + half_measure))
    a = np.array(rows)
    return a @ (rule.weights[:, None] * a.T)


def ode_residual(params: OscillatorParams, qn: QuantumNumbers,
                 theta_grid=None, energy: float | None = None) -> float:
    """Worst normalized residual of the quasi-radial equation over a grid.

    Derivatives are Richardson-extrapolated central differences with a step
    adapted to the local curvature scale.  `energy` overrides the closed-form
    eigenvalue (used by the perturbation detector).
    """
    if theta_grid is None:
        theta_grid = np.linspace(0.05, math.pi - 0.05, 101)
    th = np.asarray(theta_grid, dtype=float)
    if np.any(th <= 0.0) or np.any(th >= math.pi):
        raise DomainError("the residual grid must be interior to (0, pi)")
    eps = spectrum.epsilon(params, qn) if energy is None else energy / params.energy_unit
    lr = model.reduce_L(params.N, qn.L)
    c_l = lr * (lr + params.N - 2.0)
    w1, w2 = params.w1, params.w2

    u_pot = (
        c_l / np.sin(th) ** 2
        + 0.25 * w1 * w1 * np.tan(0.5 * th) ** 2
        + 0.25 * w2 * w2 / np.tan(0.5 * th) ** 2
    )
    h = 0.008 / np.sqrt(1.0 + abs(eps) + np.abs(u_pot))
    h = np.minimum(h, np.minimum(th, math.pi - th) / 4.0)

    points = np.concatenate([th, th + h, th - h, th + 0.5 * h, th - 0.5 * h])
    vals = eigenfunctions.eval_F_grid(params, qn, points).reshape(5, th.size)
    f0, fp1, fm1, fph, fmh = vals

    d1_h = (fp1 - fm1) / (2.0 * h)
    d1_h2 = (fph - fmh) / h
    d1 = (4.0 * d1_h2 - d1_h) / 3.0
    d2_h = (fp1 - 2.0 * f0 + fm1) / h**2
    d2_h2 = (fph - 2.0 * f0 + fmh) / (0.5 * h) ** 2
    d2 = (4.0 * d2_h2 - d2_h) / 3.0

    t_d2 = d2
    t_d1 = (params.N - 1.0) / np.tan(th) * d1
    t_pot = -u_pot * f0
    t_eps = eps * f0
    residual = np.abs(t_d2 + t_d1 + t_pot + t_eps)
    floor = max(1.0, abs(eps)) * float(np.max(np.abs(f0)))
    scale = np.maximum.reduce([np.abs(t_d2), np.abs(t_d1), np.abs(t_pot), np.abs(t_eps)])
    scale = np.maximum(scale, floor)
    return float(np.max(residual / scale))


def _apply_matched_end(diagonal: np.ndarray, dist: np.ndarray, h: float,
                       p: float, strength: float):
    """Fix up one singular endpoint of the discretized operator in place.

    `dist` holds distances from that pole (cell-centered, dist[0] = h/2).
    For p < 3/2 the pointwise strength/x^2 samples inside the window are
    replaced by the discrete coefficient that makes the stencil annihilate
    x^p, and the boundary row gets the matching folded value; otherwise the
    boundary row just folds in the antisymmetric ghost (a wall at x = 0).
    """
    if p < _MATCHED_EXPONENT_MAX:
        win = np.nonzero(dist < _MATCHED_WINDOW)[0]
        diagonal[win] -= strength / dist[win] ** 2
        inner = win[1:]
        r = h / dist[inner]
        diagonal[inner] += ((1.0 - r) ** p - 2.0 + (1.0 + r) ** p) / h**2
        diagonal[win[0]] += (3.0**p - 2.0) / h**2
    else:
        diagonal[0] += 1.0 / h**2


def build_discretized_operator(params: OscillatorParams, L: int, grid_points: int) -> DiscretizedOperator:
    """Symmetric tridiagonal matrix of the reduced operator on a cell-centered grid.

    The first-derivative term is removed by the substitution
    G = sin^((N-1)/2)(theta) * F; the pole behavior theta^(mu + 1/2) is
    built into the boundary treatment so that weakly singular states keep
    second-order eigenvalue convergence.  Eigenvalues come out in units of
    hbar^2 / (2 m R^2).
    """
    if grid_points < 500:
        raise DomainError(f"grid too coarse: need >= 500 points, got {grid_points}")
    n_pts = int(grid_points)
    h = math.pi / n_pts
    th = (np.arange(n_pts) + 0.5) * h
    mu1 = model.mu(params, L, 1)
    mu2 = model.mu(params, L, 2)
    half = model.half_index(params.N, L)
    w1, w2 = params.w1, params.w2

    u_full = (
        (half * half - 0.25) / np.sin(th) ** 2
        + 0.25 * w1 * w1 * np.tan(0.5 * th) ** 2
        + 0.25 * w2 * w2 / np.tan(0.5 * th) ** 2
        - 0.25 * (params.N - 1.0) ** 2
    )
    diagonal = 2.0 / h**2 + u_full
    _apply_matched_end(diagonal, th, h, mu2 + 0.5, mu2 * mu2 - 0.25)
    _apply_matched_end(diagonal[::-1], (math.pi - th)[::-1], h, mu1 + 0.5, mu1 * mu1 - 0.25)
    offdiag = np.full(n_pts - 1, -1.0 / h**2)
    return DiscretizedOperator(grid=th, diagonal=diagonal, offdiag=offdiag,
                               unit=params.energy_unit)


def fd_eigensolve(params: OscillatorParams, L: int, k_levels: int, grid_points: int) -> np.ndarray:
    """Lowest k_levels dimensionless eigenvalues of the finite-difference operator.

    Sturm-sequence bisection on the symmetric tridiagonal matrix; returned
    ascending, in units of hbar^2 / (2 m R^2).
    """
    if not 1 <= k_levels <= 20:
        raise DomainError(f"k_levels must be in 1..20, got {k_levels!r}")
    op = build_discretized_operator(params, L, grid_points)
    try:
        vals = eigh_tridiagonal(op.diagonal, op.offdiag, eigvals_only=True,
                                select="i", select_range=(0, k_levels - 1),
                                lapack_driver="stebz")
    except LinAlgError as exc:
        raise ArithmeticError(f"tridiagonal eigensolver failed: {exc}") from exc
    return vals


def fd_eigenvectors(params: OscillatorParams, L: int, k_levels: int, grid_points: int):
    """Eigenvalues and reduced-function eigenvectors of the discretized operator.

    Vectors are converted back to F = G / sin^((N-1)/2)(theta), normalized to
    R^N * sum sin^(N-1)(theta_i) F_i^2 h = 1 and sign-aligned to be positive
    at the grid point nearest theta = pi/2.
    """
    op = build_discretized_operator(params, L, grid_points)
    try:
        vals, vecs = eigh_tridiagonal(op.diagonal, op.offdiag,
                                      select="i", select_range=(0, k_levels - 1))
    except LinAlgError as exc:
        raise ArithmeticError(f"tridiagonal eigensolver failed: {exc}") from exc
    th = op.grid
    h = th[1] - th[0]
    weight = np.sin(th) ** (0.5 * (params.N - 1.0))
    mid = int(np.argmin(np.abs(th - 0.5 * math.pi)))
    f_vecs = []
    for j in range(vecs.shape[1]):
        f = vecs[:, j] / weight
        norm = params.R ** params.N * h * float(np.sum(np.sin(th) ** (params.N - 1) * f * f))
        f = f / math.sqrt(norm)
        if f[mid] < 0.0:
            f = -f
        f_vecs.append(f)
    return vals, th, np.array(f_vecs)


def node_count(params: OscillatorParams, qn: QuantumNumbers, grid_points: int = 10_000) -> int:
    """Sign changes of the eigenfunction on the open interval (0, pi)."""
    th = np.linspace(0.0, math.pi, grid_points + 2)[1:-1]
    vals = eigenfunctions.eval_F_grid(params, qn, th)
    signs = np.sign(vals)
    signs = signs[signs != 0.0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    return float(np.polyfit(np.log(np.asarray(xs, dtype=float)),
                            np.log(np.asarray(ys, dtype=float)), 1)[0])


def euclidean_limit_scan(eparams: EuclideanParams, qn: QuantumNumbers, R_values,
                         num_r: int = 64) -> list[tuple[float, float, float]]:
    """Error table of the large-radius limit at a list of sphere radii.

    For each R the sphere trap is pinned to w2 = chi (omega2 proportional to
    1/R^2), and the table records |E(R) - E_flat| together with the worst
    pointwise gap between the projected and the flat radial functions on
    r in (0, 4 sqrt(hbar / m omega)].
    """
    if eparams.omega <= 0.0:
        raise DomainError("the limit scan requires omega > 0")
    radii = [float(r) for r in R_values]
    if not radii or any(r <= 0.0 for r in radii):
        raise DomainError("R_values must be positive")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise DomainError("R_values must be strictly ascending")
    e_flat = spectrum.energy_euclidean(eparams, qn.n_theta, qn.L)
    r_max = 4.0 * math.sqrt(eparams.hbar / (eparams.m * eparams.omega))
    rs = np.linspace(0.0, r_max, num_r + 1)[1:]
    f_flat = np.array([eigenfunctions.eval_f_euclidean(eparams, qn.n_theta, qn.L, r) for r in rs])
    table = []
    for radius in radii:
        p = model.finite_radius_params(eparams, radius)
        e_err = abs(spectrum.energy(p, qn) - e_flat)
        f_sph = np.array([eigenfunctions.project_to_plane(p, qn, r) for r in rs])
        w_err = float(np.max(np.abs(f_sph - f_flat)))
        table.append((radius, e_err, w_err))
    return table


def verification_report(params: OscillatorParams, qn: QuantumNumbers,
                        grid_points: int = 8000, quad_nodes: int = 200,
                        energy_factor: float = 1.0,
                        fd_epsilon: float | None = None) -> VerificationReport:
    """Run every oracle against one state and collect the outcome.

    `energy_factor` multiplies the closed-form level before the residual and
    oracle comparisons (the perturbation detector hook); `fd_epsilon` lets a
    caller reuse a finite-difference eigenvalue computed for a batch.
    """
    eps = spectrum.epsilon(params, qn) * energy_factor
    norm_err = abs(normalization_check(params, qn, quad_nodes) - 1.0)
    resid = ode_residual(params, qn, energy=eps * params.energy_unit)
    if fd_epsilon is None:
        fd_epsilon = float(fd_eigensolve(params, qn.L, qn.n_theta + 1, grid_points)[qn.n_theta])
    oracle_relerr = abs(fd_epsilon - eps) / max(abs(eps), 1.0)
    nodes_ok = node_count(params, qn) == qn.n_theta
    return VerificationReport(
        state=qn,
        normalization_error=norm_err,
        max_ode_residual=resid,
        oracle_energy_relerr=oracle_relerr,
        node_count_match=nodes_ok,
    )
