"""Stratified equilibrium of an ideal gas whose scale height grows linearly with z.

Internal units: H0 = g = rho0 = 1 unless set otherwise; z points upward and
the background obeys dp/dz = -g rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import ddz

__all__ = [
    "ALPHA_ZERO_TOL",
    "AtmosphereParams",
    "Grid1D",
    "BackgroundProfile",
    "StabilityReport",
    "StabilityError",
    "build_profile",
    "check_stability",
    "require_stable",
    "hydrostatic_residual",
    "nonideal_xi",
    "STANDARD_ATMOSPHERE_PRESETS",
]

#: below this |alpha H0| the isothermal closed forms are used
ALPHA_ZERO_TOL = 1e-12

# Approximate slopes of a standard atmosphere over its near-linear layers:
# alpha*H at the layer base, and the layer extent in km.
STANDARD_ATMOSPHERE_PRESETS = {
    "troposphere_0_10km": -0.2,
    "lower_stratosphere_10_20km": 0.0,
    "upper_stratosphere_30_45km": 0.1,
}


@dataclass(frozen=True)
class AtmosphereParams:
    """Gas constants and the linear scale-height law H(z) = H0 + alphaH0 * z."""

    gamma: float = 1.4
    alphaH0: float = 0.0
    h: float = 6.0
    g: float = 1.0
    H0: float = 1.0
    rho0: float = 1.0

    def __post_init__(self):
        for name in ("gamma", "alphaH0", "h", "g", "H0", "rho0"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.gamma <= 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")
        for name in ("g", "H0", "h", "rho0"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        # eta is linear in z, so checking the top of the domain suffices
        eta_top = 1.0 + self.alphaH0 * self.h / self.H0
        if eta_top <= 0.0:
            raise ValueError(
                f"scale height not positive on [0, h]: eta(h) = {eta_top:.6g} "
                f"(alphaH0={self.alphaH0}, h={self.h})"
            )

    @property
    def alpha(self) -> float:
        """Slope of eta(z) = 1 + alpha z, in 1/length."""
        return self.alphaH0 / self.H0

    @property
    def isothermal(self) -> bool:
        return abs(self.alphaH0) < ALPHA_ZERO_TOL

    @property
    def nu(self) -> float:
        """Static stability gamma - 1 + gamma dH/dz (constant for a linear law)."""
        return self.gamma - 1.0 + self.gamma * self.alphaH0


@dataclass(frozen=True)
class Grid1D:
    n: int
    h: float
    z: np.ndarray = field(repr=False)
    dz: float

    @classmethod
    def uniform(cls, h: float, n: int) -> "Grid1D":
        if int(n) != n or n < 16:
            raise ValueError(f"grid needs an integer n >= 16, got {n}")
        n = int(n)
        z = np.linspace(0.0, h, n)
        z.setflags(write=False)
        return cls(n=n, h=float(h), z=z, dz=h / (n - 1))

    def same_as(self, other: "Grid1D") -> bool:
        return self is other or (self.n == other.n and self.h == other.h)


@dataclass(frozen=True)
class BackgroundProfile:
    """Equilibrium fields sampled on a grid.

    ``w`` is the weight exp(int_0^z dz'/2H) that maps physical perturbations
    to the symmetrized variables.
    """

    params: AtmosphereParams
    grid: Grid1D
    H: np.ndarray = field(repr=False)
    eta: np.ndarray = field(repr=False)
    nu: np.ndarray = field(repr=False)
    rho_bar: np.ndarray = field(repr=False)
    p_bar: np.ndarray = field(repr=False)
    w: np.ndarray = field(repr=False)

    @property
    def z(self) -> np.ndarray:
        return self.grid.z

    def as_columns(self) -> dict:
        return {
            "z": self.z,
            "H": self.H,
            "eta": self.eta,
            "nu": self.nu,
            "rho_bar": self.rho_bar,
            "p_bar": self.p_bar,
            "w": self.w,
        }


def _inv_scale_height_integral(params: AtmosphereParams, z):
    """int_0^z dz'/H(z') in closed form."""
    z = np.asarray(z, dtype=float)
    if params.isothermal:
        return z / params.H0
    return np.log1p(params.alpha * z) / params.alphaH0


def build_profile(params: AtmosphereParams, n: int) -> BackgroundProfile:
    """Sample the equilibrium state of ``params`` on ``n`` uniform points."""
    grid = Grid1D.uniform(params.h, n)
    z = grid.z
    eta = 1.0 + params.alpha * z if not params.isothermal else np.ones_like(z)
    if np.any(eta <= 0.0):
        raise ValueError("scale height not positive on the grid")
    H = params.H0 * eta
    integral = _inv_scale_height_integral(params, z)
    rho_bar = params.rho0 / eta * np.exp(-integral)
    p_bar = rho_bar * params.g * H
    w = np.exp(0.5 * integral)
    dH = params.alphaH0 if not params.isothermal else 0.0
    nu = np.full_like(z, params.gamma - 1.0 + params.gamma * dH)
    arrays = [eta, H, rho_bar, p_bar, w, nu]
    for a in arrays:
        a.setflags(write=False)
    return BackgroundProfile(params, grid, H=H, eta=eta, nu=nu, rho_bar=rho_bar, p_bar=p_bar, w=w)


@dataclass(frozen=True)
class StabilityReport:
    passed: bool
    min_nu: float
    z_min: float

    def __str__(self):
        state = "stable" if self.passed else "unstable"
        return f"{state}: min nu = {self.min_nu:.6g} at z = {self.z_min:.6g}"


class StabilityError(ValueError):
    """Background violates the static-stability criterion nu > 0."""

    def __init__(self, report: StabilityReport):
        super().__init__(str(report))
        self.report = report


def check_stability(profile: BackgroundProfile) -> StabilityReport:
    i = int(np.argmin(profile.nu))
    nu_min = float(profile.nu[i])
    return StabilityReport(passed=bool(np.all(profile.nu > 0.0)), min_nu=nu_min, z_min=float(profile.z[i]))


def require_stable(profile: BackgroundProfile) -> None:
    report = check_stability(profile)
    if not report.passed:
        raise StabilityError(report)


def hydrostatic_residual(profile: BackgroundProfile) -> float:
    """max |dp/dz + g rho| / max |g rho| with the 4th-order derivative."""
    g_rho = profile.params.g * profile.rho_bar
    res = ddz(profile.p_bar, profile.grid.dz) + g_rho
    return float(np.max(np.abs(res)) / np.max(np.abs(g_rho)))


def nonideal_xi(A: float, B: float, g: float, H: float) -> float:
    """Exponent xi of the extra exp(xi z) factor for a non-ideal fluid.

    ``A`` and ``B`` are the leading-order coefficients of the excess internal
    energy; both vanish for an ideal gas, giving xi = 0.
    """
    denom = 2.0 * H * (g * H - B)
    if g * H == B or denom == 0.0:
        raise ValueError("singular input: g*H equals B")
    return -(A * g * H + B) / denom
