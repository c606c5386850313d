"""Normalized quasi-radial eigenfunctions and their flat-space images.

The sphere eigenfunctions come in several algebraically equivalent dressings
(half-angle powers, (1 -+ cos) powers, a Gegenbauer form for the symmetric
trap); all of them are assembled in log space and exponentiated last.  The
stereographic map and the large-radius radial functions live here too.

Sign convention: every normalization constant is taken positive, so the
polynomial factor alone decides the sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import model, special
from .errors import DomainError, RangeError
from .model import EuclideanParams, OscillatorParams, QuantumNumbers
from .special import JacobiParams

# Weight exponents above this make the half-angle power factors too steep to
# evaluate reliably in doubles, so states are rejected rather than degraded.
MAX_MU = 1.0e3

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class WavefunctionSample:
    """One (coordinate, amplitude) pair of a sampled eigenfunction."""

    coordinate: float
    value: float


def _state_data(params: OscillatorParams, qn: QuantumNumbers):
    mu1 = model.mu(params, qn.L, 1)
    mu2 = model.mu(params, qn.L, 2)
    if max(mu1, mu2) > MAX_MU:
        raise RangeError(
            f"state exponents mu=({mu1:g}, {mu2:g}) exceed the validated envelope {MAX_MU:g}"
        )
    return mu1, mu2


@lru_cache(maxsize=8192)
def _log_prefactor_halfangle(params: OscillatorParams, qn: QuantumNumbers):
    """Log of the positive normalization constant of the half-angle form.

    Returns (log_norm, e0, e1, mu1, mu2) with e0/e1 the sin(theta/2) and
    cos(theta/2) exponents.
    """
    mu1, mu2 = _state_data(params, qn)
    n, N = qn.n_theta, params.N
    lg = special.log_gamma
    log_norm = 0.5 * (
        lg(n + 1.0)
        + math.log(2.0 * n + mu1 + mu2 + 1.0)
        + lg(n + mu1 + mu2 + 1.0)
        - N * math.log(params.R)
        - (N - 1.0) * _LOG2
        - lg(n + mu1 + 1.0)
        - lg(n + mu2 + 1.0)
    )
    e0 = mu2 - 0.5 * N + 1.0
    e1 = mu1 - 0.5 * N + 1.0
    return log_norm, e0, e1, mu1, mu2


def _endpoint_value(exponent: float, log_rest: float, sign: float) -> float:
    """Value of C * t^exponent as t -> 0+ with C = sign * exp(log_rest)."""
    if exponent > 0.0:
        return 0.0
    if exponent == 0.0:
        return sign * math.exp(log_rest)
    return math.copysign(math.inf, sign)


def _check_theta(theta: float):
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta must lie in [0, pi], got {theta!r}")


def eval_F(params: OscillatorParams, qn: QuantumNumbers, theta: float) -> float:
    """Normalized quasi-radial eigenfunction, half-angle power form.

    At the poles the value follows the endpoint exponents: zero for a
    positive exponent, the finite limit for a vanishing one, and a signed
    infinity indicator (never an exception) for a negative one.
    """
    _check_theta(theta)
    log_norm, e0, e1, mu1, mu2 = _log_prefactor_halfangle(params, qn)
    n = qn.n_theta
    if theta == 0.0:
        log_p1 = special.jacobi_log_endpoint(n, JacobiParams(mu2, mu1))
        return _endpoint_value(e0, log_norm + log_p1, 1.0)
    if theta == math.pi:
        log_pm1 = special.jacobi_log_endpoint(n, JacobiParams(mu1, mu2))
        return _endpoint_value(e1, log_norm + log_pm1, (-1.0) ** n)
    poly = special.jacobi_eval(n, JacobiParams(mu2, mu1), math.cos(theta))
    envelope = log_norm + e0 * math.log(math.sin(0.5 * theta)) + e1 * math.log(math.cos(0.5 * theta))
    return math.exp(envelope) * poly


def log_abs_F_grid(params: OscillatorParams, qn: QuantumNumbers, thetas):
    """(log|F|, sign) over an array of interior angles.

    Keeping the magnitude in log space lets integrators divide out steep
    weight factors without ever forming an overflowing intermediate; the
    sign is 0 exactly where the polynomial factor vanishes.
    """
    th = np.asarray(thetas, dtype=float)
    if np.any(th <= 0.0) or np.any(th >= math.pi):
        raise DomainError("grid evaluation requires angles interior to (0, pi)")
    log_norm, e0, e1, mu1, mu2 = _log_prefactor_halfangle(params, qn)
    poly = special.jacobi_eval(qn.n_theta, JacobiParams(mu2, mu1), np.cos(th))
    envelope = log_norm + e0 * np.log(np.sin(0.5 * th)) + e1 * np.log(np.cos(0.5 * th))
    with np.errstate(divide="ignore"):
        log_abs = envelope + np.log(np.abs(poly))
    return log_abs, np.sign(poly)


def eval_F_grid(params: OscillatorParams, qn: QuantumNumbers, thetas) -> np.ndarray:
    """Vectorized eval_F over an array of interior angles."""
    log_abs, sign = log_abs_F_grid(params, qn, thetas)
    return sign * np.exp(log_abs)


def eval_F_form_a(params: OscillatorParams, qn: QuantumNumbers, theta: float) -> float:
    """Same eigenfunction through the (1 -+ cos theta) power factorization."""
    _check_theta(theta)
    _, e0, e1, mu1, mu2 = _log_prefactor_halfangle(params, qn)
    n, N = qn.n_theta, params.N
    lg = special.log_gamma
    log_norm = 0.5 * (
        lg(n + 1.0)
        + math.log(2.0 * n + mu1 + mu2 + 1.0)
        + lg(n + mu1 + mu2 + 1.0)
        - N * math.log(params.R)
        - (mu1 + mu2 + 1.0) * _LOG2
        - lg(n + mu1 + 1.0)
        - lg(n + mu2 + 1.0)
    )
    if theta == 0.0:
        log_p1 = special.jacobi_log_endpoint(n, JacobiParams(mu2, mu1))
        return _endpoint_value(0.5 * e0, log_norm + 0.5 * e1 * _LOG2 + log_p1, 1.0)
    if theta == math.pi:
        log_pm1 = special.jacobi_log_endpoint(n, JacobiParams(mu1, mu2))
        return _endpoint_value(0.5 * e1, log_norm + 0.5 * e0 * _LOG2 + log_pm1, (-1.0) ** n)
    x = math.cos(theta)
    poly = special.jacobi_eval(n, JacobiParams(mu2, mu1), x)
    envelope = log_norm + 0.5 * e0 * math.log1p(-x) + 0.5 * e1 * math.log1p(x)
    return math.exp(envelope) * poly


def eval_F_gegenbauer(params: OscillatorParams, qn: QuantumNumbers, theta: float) -> float:
    """Symmetric-trap eigenfunction in its Gegenbauer dressing (omega1 == omega2)."""
    if params.omega1 != params.omega2:
        raise DomainError("eval_F_gegenbauer requires omega1 == omega2")
    _check_theta(theta)
    mu_l, _ = _state_data(params, qn)
    n, N = qn.n_theta, params.N
    lg = special.log_gamma
    log_norm = 0.5 * (
        (2.0 * mu_l - 1.0) * _LOG2
        + lg(n + 1.0)
        + math.log(2.0 * n + 2.0 * mu_l + 1.0)
        + 2.0 * lg(mu_l + 0.5)
        - N * math.log(params.R)
        - math.log(math.pi)
        - lg(n + 2.0 * mu_l + 1.0)
    )
    e = mu_l - 0.5 * N + 1.0
    lam = mu_l + 0.5
    if theta == 0.0 or theta == math.pi:
        # C_n^lam(+-1) = (+-1)^n * Gamma(n + 2 lam) / (n! Gamma(2 lam))
        log_c = lg(n + 2.0 * lam) - lg(n + 1.0) - lg(2.0 * lam)
        sign = 1.0 if theta == 0.0 else (-1.0) ** n
        return _endpoint_value(e, log_norm + log_c, sign)
    poly = special.gegenbauer_eval(n, lam, math.cos(theta))
    return math.exp(log_norm + e * math.log(math.sin(theta))) * poly


def reflection_check(params: OscillatorParams, qn: QuantumNumbers, theta: float):
    """Pair (F(theta) of the tan^2-only trap, F(pi-theta) of its cot^2 mirror).

    The two agree up to the factor (-1)^n_theta, which is what the caller
    asserts.
    """
    if params.omega2 != 0.0:
        raise DomainError("reflection_check expects the omega2 == 0 orientation")
    _check_theta(theta)
    mirror = params.swapped()
    return eval_F(params, qn, theta), eval_F(mirror, qn, math.pi - theta)


def r_from_theta(R: float, theta: float) -> float:
    """Stereographic image r = 2 R tan(theta/2); the south pole maps to infinity."""
    if not math.isfinite(R) or R <= 0.0:
        raise DomainError(f"R must be finite and > 0, got {R!r}")
    _check_theta(theta)
    if theta == math.pi:
        return math.inf
    return 2.0 * R * math.tan(0.5 * theta)


def theta_from_r(R: float, r: float) -> float:
    """Inverse stereographic map theta = 2 arctan(r / 2R)."""
    if not math.isfinite(R) or R <= 0.0:
        raise DomainError(f"R must be finite and > 0, got {R!r}")
    if r < 0.0 or math.isnan(r):
        raise DomainError(f"r must be >= 0, got {r!r}")
    return 2.0 * math.atan2(r, 2.0 * R)


def project_to_plane(params: OscillatorParams, qn: QuantumNumbers, r: float) -> float:
    """Radial function on the tangent plane, via composition with the projection."""
    theta = theta_from_r(params.R, r)
    u2 = (r / (2.0 * params.R)) ** 2
    return (1.0 + u2) ** (-(0.5 * params.N - 1.0)) * eval_F(params, qn, theta)


def project_to_plane_jacobi(params: OscillatorParams, qn: QuantumNumbers, r: float) -> float:
    """Same projected radial function, evaluated directly in the r variable.

    Independent algebraic route used to cross-check project_to_plane.
    """
    if r < 0.0 or math.isnan(r):
        raise DomainError(f"r must be >= 0, got {r!r}")
    log_norm, e0, _, mu1, mu2 = _log_prefactor_halfangle(params, qn)
    lam_half = mu2  # big-Lambda + 1/2 of the flat-space identification
    n = qn.n_theta
    if r == 0.0:
        log_p1 = special.jacobi_log_endpoint(n, JacobiParams(lam_half, mu1))
        return _endpoint_value(e0, log_norm + log_p1, 1.0)
    u = r / (2.0 * params.R)
    q = 1.0 + u * u
    x = (1.0 - u * u) / q
    poly = special.jacobi_eval(n, JacobiParams(lam_half, mu1), x)
    envelope = log_norm + e0 * math.log(u) - 0.5 * (mu1 + mu2) * math.log(q)
    return math.exp(envelope) * poly


def eval_f_euclidean(eparams: EuclideanParams, n_r: int, L: int, r: float) -> float:
    """Normalized flat-space radial function of the centrifugally perturbed trap."""
    if not isinstance(n_r, int) or isinstance(n_r, bool) or n_r < 0:
        raise DomainError(f"n_r must be a nonnegative integer, got {n_r!r}")
    if r < 0.0 or math.isnan(r):
        raise DomainError(f"r must be >= 0, got {r!r}")
    if eparams.omega <= 0.0:
        raise DomainError("bound flat-space states require omega > 0")
    lam = model.big_lambda(eparams, L)
    scale = eparams.m * eparams.omega / eparams.hbar
    lg = special.log_gamma
    log_norm = 0.5 * (_LOG2 + lg(n_r + 1.0) - lg(n_r + lam + 1.5)) + 0.25 * eparams.N * math.log(scale)
    e = 0.5 * lam - 0.25 * eparams.N + 0.75
    x = scale * r * r
    if x == 0.0:
        poly0 = special.laguerre_eval(n_r, lam + 0.5, 0.0)
        return _endpoint_value(e, log_norm + math.log(poly0), 1.0)
    poly = special.laguerre_eval(n_r, lam + 0.5, x)
    return math.exp(log_norm + e * math.log(x) - 0.5 * x) * poly
