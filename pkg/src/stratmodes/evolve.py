"""Linear 1-D time evolution of the symmetrized (Uz, P, Phi) system."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .background import BackgroundProfile, require_stable
from .fields import FieldState, _check_grid
from .numerics import ddz_sbp

__all__ = ["EvolveConfig", "EvolveResult", "rhs", "max_sound_speed", "stable_dt", "step", "run", "CFLViolation"]

BOUNDARIES = ("impermeable", "pressure_release_top")


class CFLViolation(ValueError):
    pass


@dataclass(frozen=True)
class EvolveConfig:
    t_end: float = 10.0
    cfl: float = 0.4
    output_every: int = 100
    boundary: str = "impermeable"

    def __post_init__(self):
        if not 0.0 < self.cfl <= 0.9:
            raise ValueError(f"cfl must lie in (0, 0.9], got {self.cfl}")
        if not self.t_end > 0.0:
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if int(self.output_every) < 1:
            raise ValueError("output_every must be >= 1")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}, got {self.boundary!r}")


def _coefficients(profile: BackgroundProfile):
    p = profile.params
    g, H0, rho0 = p.gamma, p.H0, p.rho0
    eta = profile.eta
    return {
        "uP": (g - 2.0) / (2.0 * g * H0 * rho0),
        "uPz": eta / rho0,
        "uPhi": 1.0 / (g * H0 * rho0),
        "pUz": g * p.g * H0 * rho0,
        "pU": p.g * rho0 * (g - 2.0) / (2.0 * eta),
        "phiU": profile.nu / eta * p.g * rho0,
    }


def _rhs_arrays(U, P, Phi, c, dz):
    dU = c["uP"] * P - c["uPz"] * ddz_sbp(P, dz) + c["uPhi"] * Phi
    dP = -c["pUz"] * ddz_sbp(U, dz) - c["pU"] * U
    dPhi = -c["phiU"] * U
    return dU, dP, dPhi


def rhs(state: FieldState, profile: BackgroundProfile) -> FieldState:
    """Time derivative of ``state`` under the linear generator, no boundary enforcement."""
    _check_grid(state.grid, profile.grid)
    dU, dP, dPhi = _rhs_arrays(state.Uz, state.P, state.Phi, _coefficients(profile), profile.grid.dz)
    return FieldState(state.grid, dU, dP, dPhi, state.t)


def max_sound_speed(profile: BackgroundProfile) -> float:
    p = profile.params
    return float(np.sqrt(p.gamma * p.g * np.max(profile.H)))


def stable_dt(profile: BackgroundProfile, cfl: float) -> float:
    return cfl * profile.grid.dz / max_sound_speed(profile)


def _enforce(U, P, boundary):
    U[0] = 0.0
    if boundary == "impermeable":
        U[-1] = 0.0
    else:
        P[-1] = 0.0


def _rk4(U, P, Phi, c, dz, dt, boundary):
    def f(u, p, phi):
        du, dp, dphi = _rhs_arrays(u, p, phi, c, dz)
        _enforce(du, dp, boundary)
        return du, dp, dphi

    k1 = f(U, P, Phi)
    k2 = f(U + 0.5 * dt * k1[0], P + 0.5 * dt * k1[1], Phi + 0.5 * dt * k1[2])
    k3 = f(U + 0.5 * dt * k2[0], P + 0.5 * dt * k2[1], Phi + 0.5 * dt * k2[2])
    k4 = f(U + dt * k3[0], P + dt * k3[1], Phi + dt * k3[2])
    out = []
    for x, a, b, cc, d in zip((U, P, Phi), k1, k2, k3, k4):
        out.append(x + dt / 6.0 * (a + 2.0 * b + 2.0 * cc + d))
    _enforce(out[0], out[1], boundary)
    return out


def step(state: FieldState, profile: BackgroundProfile, dt: float, boundary: str = "impermeable", cfl_max: float = 0.9):
    """Advance ``state`` by one classical RK4 step of size ``dt``.

    The boundary condition is imposed strongly at every stage: Uz = 0 at both
    ends (impermeable) or Uz(0) = 0 and P(h) = 0 (pressure_release_top).
    """
    _check_grid(state.grid, profile.grid)
    if boundary not in BOUNDARIES:
        raise ValueError(f"boundary must be one of {BOUNDARIES}, got {boundary!r}")
    limit = stable_dt(profile, cfl_max)
    if not 0.0 < dt <= limit:
        raise CFLViolation(f"dt = {dt:.6g} exceeds the CFL limit {limit:.6g} (cfl = {cfl_max})")
    U, P, Phi = (np.array(a) for a in (state.Uz, state.P, state.Phi))
    _enforce(U, P, boundary)
    U, P, Phi = _rk4(U, P, Phi, _coefficients(profile), profile.grid.dz, dt, boundary)
    return FieldState(state.grid, U, P, Phi, state.t + dt)


@dataclass
class EvolveResult:
    snapshots: list = field(default_factory=list)
    energy: list = field(default_factory=list)
    dt: float = 0.0
    nsteps: int = 0

    @property
    def times(self):
        return np.array([s.t for s in self.snapshots])


def run(initial: FieldState, profile: BackgroundProfile, config: EvolveConfig = EvolveConfig()) -> EvolveResult:
    """Integrate to ``config.t_end`` and keep a snapshot every ``output_every`` steps.

    The step is shrunk so that the last step lands on t_end; the final state is
    always recorded.
    """
    from .energetics import transformed_energy

    _check_grid(initial.grid, profile.grid)
    require_stable(profile)
    nsteps = max(1, math.ceil(config.t_end / stable_dt(profile, config.cfl) - 1e-9))
    dt = config.t_end / nsteps
    c = _coefficients(profile)
    dz = profile.grid.dz
    U, P, Phi = (np.array(a) for a in (initial.Uz, initial.P, initial.Phi))
    _enforce(U, P, config.boundary)
    t0 = initial.t
    result = EvolveResult(dt=dt, nsteps=nsteps)

    def record(i):
        snap = FieldState(initial.grid, U, P, Phi, t0 + i * dt)
        result.snapshots.append(snap)
        result.energy.append((snap.t, transformed_energy(snap, profile)))

    record(0)
    for i in range(1, nsteps + 1):
        U, P, Phi = _rk4(U, P, Phi, c, dz, dt, config.boundary)
        if i % config.output_every == 0 or i == nsteps:
            record(i)
    return result
