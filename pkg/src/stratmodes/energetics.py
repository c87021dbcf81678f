"""Energy functionals and the energy scalar product in symmetrized variables.

In the symmetrized variables the weights are
    U:   rho0 / eta        (= rho_bar w^2)
    P:   1 / (gamma g H0 rho0)
    Phi: 1 / (nu gamma g H0 rho0)
which makes the symmetrized energy equal the physical one sample by sample.
"""

from __future__ import annotations

import numpy as np

from .background import BackgroundProfile, StabilityError, check_stability
from .fields import FieldState, PhysicalState, _check_grid
from .numerics import integrate

__all__ = [
    "physical_energy",
    "physical_energy_parts",
    "transformed_energy",
    "energy_parts",
    "inner_product",
    "normalized_cross",
    "energy_budget",
    "selfadjointness_defect",
    "selfadjointness_residual",
    "boundary_flux",
]


def _stable_or_raise(profile):
    report = check_stability(profile)
    if not report.passed:
        raise StabilityError(report)


def _weights(profile: BackgroundProfile):
    p = profile.params
    base = p.gamma * p.g * p.H0 * p.rho0
    return p.rho0 / profile.eta, 1.0 / base, 1.0 / (profile.nu * base)


def physical_energy_parts(phys: PhysicalState, profile: BackgroundProfile):
    """(kinetic, barotropic, thermal) energy per unit horizontal area."""
    _check_grid(phys.grid, profile.grid)
    _stable_or_raise(profile)
    g = profile.params.gamma
    dz = profile.grid.dz
    kin = 0.5 * integrate(profile.rho_bar * phys.Vz**2, dz)
    baro = 0.5 * integrate(phys.p_prime**2 / (g * profile.p_bar), dz)
    therm = 0.5 * integrate(phys.phi_prime**2 / (g * profile.nu * profile.p_bar), dz)
    return kin, baro, therm


def physical_energy(phys: PhysicalState, profile: BackgroundProfile) -> float:
    return float(sum(physical_energy_parts(phys, profile)))


def inner_product(a: FieldState, b: FieldState, profile: BackgroundProfile) -> float:
    _check_grid(a.grid, b.grid)
    _check_grid(a.grid, profile.grid)
    wu, wp, wphi = _weights(profile)
    integrand = wu * a.Uz * b.Uz + wp * a.P * b.P + wphi * a.Phi * b.Phi
    return integrate(integrand, profile.grid.dz)


def energy_parts(state: FieldState, profile: BackgroundProfile):
    _check_grid(state.grid, profile.grid)
    _stable_or_raise(profile)
    wu, wp, wphi = _weights(profile)
    dz = profile.grid.dz
    return (
        0.5 * integrate(wu * state.Uz**2, dz),
        0.5 * integrate(wp * state.P**2, dz),
        0.5 * integrate(wphi * state.Phi**2, dz),
    )


def transformed_energy(state: FieldState, profile: BackgroundProfile) -> float:
    return float(sum(energy_parts(state, profile)))


def normalized_cross(a: FieldState, b: FieldState, profile: BackgroundProfile) -> float:
    """<a, b> / (|a| |b|) in the energy norm; 0 if either vanishes."""
    na = np.sqrt(inner_product(a, a, profile))
    nb = np.sqrt(inner_product(b, b, profile))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return inner_product(a, b, profile) / (na * nb)


def energy_budget(state: FieldState, split, profile: BackgroundProfile) -> dict:
    """Row of the energy log: total, its three parts, both modes and their cross term.

    E_total = E_acoustic + E_entropy + cross holds exactly.
    """
    kin, baro, therm = energy_parts(state, profile)
    return {
        "t": state.t,
        "E_total": kin + baro + therm,
        "E_kinetic": kin,
        "E_baro": baro,
        "E_thermal": therm,
        "E_acoustic": transformed_energy(split.acoustic, profile),
        "E_entropy": transformed_energy(split.entropy, profile),
        "cross": inner_product(split.acoustic, split.entropy, profile),
    }


def boundary_flux(a: FieldState, b: FieldState) -> float:
    """-(P_a U_b + P_b U_a) evaluated between the bottom and top of the domain."""
    f = a.P * b.Uz + b.P * a.Uz
    return float(-(f[-1] - f[0]))


def selfadjointness_defect(a: FieldState, b: FieldState, profile: BackgroundProfile) -> float:
    """<L a, b> + <a, L b> for the 1-D generator L (no boundary enforcement).

    A skew-adjoint L makes this vanish; otherwise it equals ``boundary_flux``.
    """
    from .evolve import rhs

    return inner_product(rhs(a, profile), b, profile) + inner_product(a, rhs(b, profile), profile)


def selfadjointness_residual(a: FieldState, b: FieldState, profile: BackgroundProfile) -> float:
    return abs(selfadjointness_defect(a, b, profile))
