"""Dispersion roots of the isothermal 3-D linear system."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .background import AtmosphereParams

__all__ = ["DispersionRoots", "omega_roots", "omega_sweep", "acoustic_group_speed", "buoyancy_frequency"]


@dataclass(frozen=True)
class DispersionRoots:
    k: tuple
    omega0: float
    omega12: tuple
    omega34: tuple


def _require_isothermal(params):
    if not params.isothermal:
        raise ValueError("closed-form dispersion roots exist only for alphaH0 = 0")


def _squared_roots(kx, ky, kz, params):
    H = params.H0
    kh2 = np.asarray(kx, dtype=float) ** 2 + np.asarray(ky, dtype=float) ** 2
    big = kh2 + np.asarray(kz, dtype=float) ** 2 + 1.0 / (4.0 * H**2)
    cut = 4.0 * (params.gamma - 1.0) / (params.gamma**2 * H**2) * kh2
    # big^2 - cut >= 0 for gamma > 1; clip rounding only
    inner = np.sqrt(np.maximum(big**2 - cut, 0.0))
    scale = params.gamma * params.g * H / 2.0
    w12 = scale * (big + inner)
    # (big - inner) = cut / (big + inner) avoids cancellation
    w34 = scale * cut / (big + inner)
    return w12, w34


def omega_roots(kx, ky, kz, params: AtmosphereParams) -> DispersionRoots:
    _require_isothermal(params)
    w12, w34 = _squared_roots(kx, ky, kz, params)
    o1 = float(np.sqrt(w12))
    o3 = float(np.sqrt(w34))
    return DispersionRoots(k=(float(kx), float(ky), float(kz)), omega0=0.0, omega12=(o1, -o1), omega34=(o3, -o3))


def omega_sweep(kx, ky, kz, params: AtmosphereParams):
    """Vectorised positive roots (omega1, omega3) over arrays of wavevectors."""
    _require_isothermal(params)
    w12, w34 = _squared_roots(kx, ky, kz, params)
    return np.sqrt(w12), np.sqrt(w34)


def acoustic_group_speed(kz, params: AtmosphereParams):
    """d omega_1 / d kz for purely vertical propagation."""
    _require_isothermal(params)
    c2 = params.gamma * params.g * params.H0
    kz = np.asarray(kz, dtype=float)
    omega = np.sqrt(c2 * (kz**2 + 1.0 / (4.0 * params.H0**2)))
    return c2 * kz / omega


def buoyancy_frequency(params: AtmosphereParams) -> float:
    """Large-horizontal-wavenumber limit of omega_3."""
    return float(np.sqrt((params.gamma - 1.0) * params.g / (params.gamma * params.H0)))
