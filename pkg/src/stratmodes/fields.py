"""Perturbation fields on the grid and the physical <-> symmetrized change of variables."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .background import BackgroundProfile, Grid1D

__all__ = [
    "FieldState",
    "PhysicalState",
    "PulseKind",
    "PulseSpec",
    "to_transformed",
    "to_physical",
    "make_pulse",
    "GridMismatch",
]


class GridMismatch(ValueError):
    pass


def _check_grid(a: Grid1D, b: Grid1D):
    if not a.same_as(b):
        raise GridMismatch(f"grid mismatch: n={a.n}, h={a.h} vs n={b.n}, h={b.h}")


def _as_field(x, grid: Grid1D, name: str) -> np.ndarray:
    arr = np.array(x, dtype=float)
    if arr.shape != (grid.n,):
        raise ValueError(f"{name} has shape {arr.shape}, expected ({grid.n},)")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FieldState:
    """Symmetrized vertical velocity ``Uz``, pressure ``P`` and entropy-like ``Phi``."""

    grid: Grid1D
    Uz: np.ndarray = field(repr=False)
    P: np.ndarray = field(repr=False)
    Phi: np.ndarray = field(repr=False)
    t: float = 0.0

    def __post_init__(self):
        for name in ("Uz", "P", "Phi"):
            object.__setattr__(self, name, _as_field(getattr(self, name), self.grid, name))

    @classmethod
    def zeros(cls, grid: Grid1D, t: float = 0.0) -> "FieldState":
        z = np.zeros(grid.n)
        return cls(grid, z, z, z, t)

    def __add__(self, other: "FieldState") -> "FieldState":
        _check_grid(self.grid, other.grid)
        return FieldState(self.grid, self.Uz + other.Uz, self.P + other.P, self.Phi + other.Phi, self.t)

    def __sub__(self, other: "FieldState") -> "FieldState":
        _check_grid(self.grid, other.grid)
        return FieldState(self.grid, self.Uz - other.Uz, self.P - other.P, self.Phi - other.Phi, self.t)

    def __mul__(self, c: float) -> "FieldState":
        return FieldState(self.grid, c * self.Uz, c * self.P, c * self.Phi, self.t)

    __rmul__ = __mul__

    def at_time(self, t: float) -> "FieldState":
        return replace(self, t=float(t))

    def l2_norm(self) -> float:
        """Plain discrete L2 norm of the stacked (Uz, P, Phi) samples."""
        from .numerics import integrate

        dz = self.grid.dz
        return float(np.sqrt(integrate(self.Uz**2 + self.P**2 + self.Phi**2, dz)))

    def as_columns(self) -> dict:
        return {"z": self.grid.z, "Uz": self.Uz, "P": self.P, "Phi": self.Phi}


@dataclass(frozen=True)
class PhysicalState:
    grid: Grid1D
    Vz: np.ndarray = field(repr=False)
    p_prime: np.ndarray = field(repr=False)
    phi_prime: np.ndarray = field(repr=False)
    rho_prime: np.ndarray = field(repr=False)
    t: float = 0.0

    def __post_init__(self):
        for name in ("Vz", "p_prime", "phi_prime", "rho_prime"):
            object.__setattr__(self, name, _as_field(getattr(self, name), self.grid, name))

    @classmethod
    def from_pressure_density(cls, grid, Vz, p_prime, rho_prime, profile: BackgroundProfile, t=0.0):
        """Build from velocity, excess pressure and excess density."""
        gamma = profile.params.gamma
        phi = np.asarray(p_prime) - gamma * profile.p_bar / profile.rho_bar * np.asarray(rho_prime)
        return cls(grid, Vz, p_prime, phi, rho_prime, t)

    def as_columns(self) -> dict:
        return {
            "z": self.grid.z,
            "Vz": self.Vz,
            "p_prime": self.p_prime,
            "phi_prime": self.phi_prime,
            "rho_prime": self.rho_prime,
        }


def to_transformed(phys: PhysicalState, profile: BackgroundProfile) -> FieldState:
    _check_grid(phys.grid, profile.grid)
    w = profile.w
    return FieldState(phys.grid, phys.Vz / w, phys.p_prime * w, phys.phi_prime * w, phys.t)


def to_physical(state: FieldState, profile: BackgroundProfile) -> PhysicalState:
    _check_grid(state.grid, profile.grid)
    w = profile.w
    p = state.P / w
    phi = state.Phi / w
    rho = (p - phi) * profile.rho_bar / (profile.params.gamma * profile.p_bar)
    return PhysicalState(state.grid, state.Uz * w, p, phi, rho, state.t)


class PulseKind(str, Enum):
    GAUSSIAN = "gaussian"
    DERIVATIVE = "gaussian_derivative"

    @classmethod
    def parse(cls, s) -> "PulseKind":
        if isinstance(s, cls):
            return s
        s = str(s).strip().lower()
        if s in ("derivative", "b"):
            return cls.DERIVATIVE
        if s == "a":
            return cls.GAUSSIAN
        return cls(s)


@dataclass(frozen=True)
class PulseSpec:
    """Gaussian of width ``beta`` (in units of H0) centred at ``z0``, or its z-derivative."""

    kind: PulseKind = PulseKind.GAUSSIAN
    amplitude: float = 1.0
    beta: float = 0.3
    z0: float = 3.0

    def __post_init__(self):
        object.__setattr__(self, "kind", PulseKind.parse(self.kind))
        if not self.beta > 0.0:
            raise ValueError(f"pulse width beta must be positive, got {self.beta}")


def make_pulse(spec: PulseSpec, grid: Grid1D, H0: float = 1.0) -> np.ndarray:
    s = grid.z - spec.z0
    width2 = spec.beta**2 * H0**2
    gauss = np.exp(-(s**2) / width2)
    if spec.kind is PulseKind.GAUSSIAN:
        return spec.amplitude * gauss
    return -2.0 * spec.amplitude * gauss * s / (H0 * spec.beta**2)
