"""Physical setup of the trigonometric double-well oscillator on the N-sphere.

A particle of mass `m` lives on the sphere of radius `R` embedded in
(N+1)-dimensional space and feels the latitudinal potential

    V(theta) = 2 m omega1^2 R^2 tan^2(theta/2) + 2 m omega2^2 R^2 cot^2(theta/2).

Each frequency enters the spectrum only through the dimensionless coupling
w_k = 4 m omega_k R^2 / hbar, and every energy is naturally measured in
units of hbar^2 / (2 m R^2).  All downstream code works with (N, w1, w2)
and converts to physical units at the API boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError


def _require_positive(name: str, v: float):
    if not math.isfinite(v) or v <= 0.0:
        raise DomainError(f"{name} must be finite and > 0, got {v!r}")


def _require_nonnegative(name: str, v: float):
    if not math.isfinite(v) or v < 0.0:
        raise DomainError(f"{name} must be finite and >= 0, got {v!r}")


@dataclass(frozen=True)
class OscillatorParams:
    """Sphere dimension, radius, particle mass, hbar, and the two trap frequencies."""

    N: int
    R: float = 1.0
    m: float = 1.0
    hbar: float = 1.0
    omega1: float = 0.0
    omega2: float = 0.0

    def __post_init__(self):
        if not isinstance(self.N, int) or isinstance(self.N, bool) or self.N < 2:
            raise DomainError(f"dimension N must be an integer >= 2, got {self.N!r}")
        _require_positive("R", self.R)
        _require_positive("m", self.m)
        _require_positive("hbar", self.hbar)
        _require_nonnegative("omega1", self.omega1)
        _require_nonnegative("omega2", self.omega2)
        for k in (1, 2):
            w = self.coupling(k)
            if not math.isfinite(w):
                raise DomainError(f"coupling w{k} is not finite")

    def coupling(self, k: int) -> float:
        """Dimensionless coupling w_k = 4 m omega_k R^2 / hbar."""
        if k not in (1, 2):
            raise DomainError(f"k must be 1 or 2, got {k!r}")
        omega = self.omega1 if k == 1 else self.omega2
        return 4.0 * self.m * omega * self.R**2 / self.hbar

    @property
    def w1(self) -> float:
        return self.coupling(1)

    @property
    def w2(self) -> float:
        return self.coupling(2)

    @property
    def energy_unit(self) -> float:
        """The natural energy scale hbar^2 / (2 m R^2)."""
        return self.hbar**2 / (2.0 * self.m * self.R**2)

    @classmethod
    def from_couplings(cls, N: int, w1: float, w2: float,
                       R: float = 1.0, m: float = 1.0, hbar: float = 1.0):
        """Build params from the dimensionless couplings (natural units by default)."""
        _require_nonnegative("w1", w1)
        _require_nonnegative("w2", w2)
        _require_positive("R", R)
        _require_positive("m", m)
        _require_positive("hbar", hbar)
        scale = hbar / (4.0 * m * R**2)
        return cls(N=N, R=R, m=m, hbar=hbar, omega1=w1 * scale, omega2=w2 * scale)

    def swapped(self) -> "OscillatorParams":
        """Same setup with the two trap frequencies exchanged."""
        return replace(self, omega1=self.omega2, omega2=self.omega1)


@dataclass(frozen=True)
class QuantumNumbers:
    """Quasi-radial index n_theta and angular index L labeling one state."""

    n_theta: int
    L: int

    def __post_init__(self):
        if not isinstance(self.n_theta, int) or isinstance(self.n_theta, bool) or self.n_theta < 0:
            raise DomainError(f"n_theta must be a nonnegative integer, got {self.n_theta!r}")
        if not isinstance(self.L, int) or isinstance(self.L, bool):
            raise DomainError(f"L must be an integer, got {self.L!r}")


@dataclass(frozen=True)
class EuclideanParams:
    """Flat-space oscillator with an inverse-square (centrifugal-like) admixture chi."""

    N: int
    omega: float
    chi: float
    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not isinstance(self.N, int) or isinstance(self.N, bool) or self.N < 2:
            raise DomainError(f"dimension N must be an integer >= 2, got {self.N!r}")
        _require_nonnegative("omega", self.omega)
        _require_positive("chi", self.chi)
        _require_positive("m", self.m)
        _require_positive("hbar", self.hbar)


def reduce_L(N: int, L: int) -> int:
    """Angular index actually used by the formulas.

    On the 2-sphere any integer L is allowed and only |L| enters (everything
    depends on L through (L + N/2 - 1)^2 = L^2 there); for N >= 3 negative L
    is rejected.
    """
    if N == 2:
        return abs(L)
    if L < 0:
        raise DomainError(f"L must be >= 0 for N >= 3, got {L}")
    return L


def half_index(N: int, L: int) -> float:
    """The combination L + N/2 - 1 with the N=2 sign convention applied."""
    return reduce_L(N, L) + 0.5 * N - 1.0


def mu(params: OscillatorParams, L: int, k: int) -> float:
    """Effective weight exponent sqrt((L + N/2 - 1)^2 + w_k^2) for trap k."""
    return math.hypot(half_index(params.N, L), params.coupling(k))


def potential_theta(params: OscillatorParams, theta: float) -> float:
    """Latitudinal potential, tan^2/cot^2 form.

    At a pole where the corresponding frequency is nonzero the potential is
    reported as +infinity rather than raising.
    """
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta must lie in [0, pi], got {theta!r}")
    c1 = 2.0 * params.m * params.omega1**2 * params.R**2
    c2 = 2.0 * params.m * params.omega2**2 * params.R**2
    if theta == 0.0:
        return math.inf if c2 > 0.0 else 0.0
    if theta == math.pi:
        return math.inf if c1 > 0.0 else 0.0
    t2 = math.tan(0.5 * theta) ** 2
    return c1 * t2 + c2 / t2


def potential_theta_alt(params: OscillatorParams, theta: float) -> float:
    """Algebraically equivalent sec^2/csc^2 form of the potential, for cross-checks."""
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta must lie in [0, pi], got {theta!r}")
    c1 = 2.0 * params.m * params.omega1**2 * params.R**2
    c2 = 2.0 * params.m * params.omega2**2 * params.R**2
    if theta == 0.0:
        return math.inf if c2 > 0.0 else 0.0
    if theta == math.pi:
        return math.inf if c1 > 0.0 else 0.0
    half = 0.5 * theta
    return c1 / math.cos(half) ** 2 + c2 / math.sin(half) ** 2 - (c1 + c2)


def lambda_of_energy(params: OscillatorParams, E: float) -> float:
    """Auxiliary spectral parameter of the hypergeometric reduction.

    Diagnostic: at an eigenvalue it equals n_theta + (mu_L1 + mu_L2)/2.
    """
    eps = E / params.energy_unit
    radicand = (params.N - 1.0) ** 2 + params.w1**2 + params.w2**2 + 4.0 * eps
    if radicand < 0.0:
        raise DomainError(f"energy {E!r} below the admissible range (negative radicand)")
    return -0.5 + 0.5 * math.sqrt(radicand)


def big_lambda(eparams: EuclideanParams, L: int) -> float:
    """Effective flat-space angular quantum number sqrt((L+N/2-1)^2 + chi^2) - 1/2."""
    return math.hypot(half_index(eparams.N, L), eparams.chi) - 0.5


def finite_radius_params(eparams: EuclideanParams, R: float) -> OscillatorParams:
    """Spherical setup whose large-R limit is the given flat-space oscillator.

    omega1 is kept independent of R while omega2 = hbar * chi / (4 m R^2),
    so the second coupling stays pinned at w2 = chi for every radius.
    """
    _require_positive("R", R)
    omega2 = eparams.hbar * eparams.chi / (4.0 * eparams.m * R**2)
    return OscillatorParams(N=eparams.N, R=R, m=eparams.m, hbar=eparams.hbar,
                            omega1=eparams.omega, omega2=omega2)
