"""Time-independent links between field components inside each mode."""

from __future__ import annotations

import numpy as np

from .background import BackgroundProfile, StabilityError, check_stability
from .numerics import cumtrapz0, ddz

__all__ = [
    "entropy_phi_from_p",
    "acoustic_p_from_phi",
    "acoustic_p_from_R",
    "acoustic_velocity_highk",
]


def entropy_phi_from_p(P0, profile: BackgroundProfile) -> np.ndarray:
    """Phi of the stationary mode carrying pressure ``P0``.

    Phi0 = (-(gamma-2)/2 + gamma H0 eta d/dz) P0
    """
    p = profile.params
    P0 = np.asarray(P0, dtype=float)
    return -(p.gamma - 2.0) / 2.0 * P0 + p.gamma * p.H0 * profile.eta * ddz(P0, profile.grid.dz)


def acoustic_p_from_R(R, profile: BackgroundProfile) -> np.ndarray:
    """Acoustic pressure ((gamma-2)/(2 eta) + gamma H0 d/dz) R, with R = eta Phi_a / nu."""
    p = profile.params
    R = np.asarray(R, dtype=float)
    return (p.gamma - 2.0) / (2.0 * profile.eta) * R + p.gamma * p.H0 * ddz(R, profile.grid.dz)


def acoustic_p_from_phi(Phi_a, profile: BackgroundProfile) -> np.ndarray:
    """Pressure shared by both acoustic branches with entropy-like field ``Phi_a``.

    The bracket acts on (eta/nu) Phi_a, which makes the acoustic subspace the
    orthogonal complement of the stationary one under the energy product.
    """
    report = check_stability(profile)
    if not report.passed:
        raise StabilityError(report)
    R = profile.eta / profile.nu * np.asarray(Phi_a, dtype=float)
    return acoustic_p_from_R(R, profile)


def acoustic_velocity_highk(Phi_branch, branch: int, profile: BackgroundProfile) -> np.ndarray:
    """Short-wave estimate of Uz for acoustic branch 1 or 2 over an isothermal gas.

    Only meaningful when the pulse spectrum sits at k_z H0 >> 1.
    """
    p = profile.params
    if not p.isothermal:
        raise ValueError("high-k velocity relation holds only for an isothermal background (alphaH0 = 0)")
    if branch not in (1, 2):
        raise ValueError(f"branch must be 1 or 2, got {branch!r}")
    coef = p.g * p.gamma**2 / (8.0 * p.rho0 * (p.gamma - 1.0) * (p.gamma * p.g * p.H0) ** 1.5)
    sign = -1.0 if branch == 1 else 1.0
    return sign * coef * cumtrapz0(np.asarray(Phi_branch, dtype=float), profile.grid.dz)
