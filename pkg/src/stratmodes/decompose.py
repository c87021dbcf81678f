"""Unique acoustic / entropy split of an instantaneous 1-D perturbation.

The pivot is R = (eta/nu) Phi_a, which solves

    (1 + 2 H0 eta' - 4 H0^2 eta^2 d2/dz2) R = (2 eta/gamma^2) (2 Phi + (gamma-2 - 2 gamma H0 eta d/dz) P)

Dividing by -4 H0^2 eta^2 gives R'' - q R = D, whose homogeneous solutions R1,
R2 have unit Wronskian, so variation of parameters needs no extra normalisation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .background import BackgroundProfile, require_stable
from .fields import FieldState, _check_grid
from .numerics import cumtrapz0, ddz, second_difference, solve_tridiagonal
from .relations import acoustic_p_from_R

__all__ = [
    "HomogeneousPair",
    "ModeSplit",
    "homogeneous_solutions",
    "eq25_rhs",
    "rhs_D",
    "potential_q",
    "operator_residual",
    "solve_R_quadrature",
    "solve_R_bvp",
    "fit_constants",
    "decompose",
]


@dataclass(frozen=True)
class HomogeneousPair:
    R1: np.ndarray = field(repr=False)
    R2: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class ModeSplit:
    acoustic: FieldState
    entropy: FieldState

    @property
    def total(self) -> FieldState:
        return self.acoustic + self.entropy

    def as_columns(self) -> dict:
        a, e = self.acoustic, self.entropy
        return {"z": a.grid.z, "Uz_a": a.Uz, "P_a": a.P, "Phi_a": a.Phi, "P_0": e.P, "Phi_0": e.Phi}


def homogeneous_solutions(profile: BackgroundProfile) -> HomogeneousPair:
    p = profile.params
    z = profile.z
    if p.isothermal:
        R1 = np.exp(-z / (2.0 * p.H0))
        R2 = 2.0 * p.H0 * np.sinh(z / (2.0 * p.H0))
        return HomogeneousPair(R1, R2)
    if abs(1.0 + p.alphaH0) < 1e-12:
        raise ValueError("singular parameter: alphaH0 = -1 makes the second homogeneous solution undefined")
    log_eta = np.log1p(p.alpha * z)
    R1 = np.exp(-log_eta / (2.0 * p.alphaH0))
    R2 = p.H0 * R1 * np.expm1((1.0 + 1.0 / p.alphaH0) * log_eta) / (1.0 + p.alphaH0)
    return HomogeneousPair(R1, R2)


def potential_q(profile: BackgroundProfile) -> np.ndarray:
    """q(z) in R'' = q R + D."""
    p = profile.params
    deta = 0.0 if p.isothermal else p.alpha
    return (1.0 + 2.0 * p.H0 * deta) / (4.0 * p.H0**2 * profile.eta**2)


def eq25_rhs(P, Phi, profile: BackgroundProfile) -> np.ndarray:
    """Right-hand side of the R equation in operator form."""
    p = profile.params
    g, H0, eta = p.gamma, p.H0, profile.eta
    P = np.asarray(P, dtype=float)
    bracket = 2.0 * np.asarray(Phi, dtype=float) + (g - 2.0) * P - 2.0 * g * H0 * eta * ddz(P, profile.grid.dz)
    return 2.0 * eta / g**2 * bracket


def rhs_D(P, Phi, profile: BackgroundProfile) -> np.ndarray:
    """Source D of the normalised equation R'' - q R = D."""
    p = profile.params
    g, H0, eta = p.gamma, p.H0, profile.eta
    P = np.asarray(P, dtype=float)
    bracket = 2.0 * np.asarray(Phi, dtype=float) + (g - 2.0) * P - 2.0 * g * H0 * eta * ddz(P, profile.grid.dz)
    return -bracket / (2.0 * H0**2 * eta * g**2)


def operator_residual(R, profile: BackgroundProfile, rhs=None) -> np.ndarray:
    """Three-point discretisation of the left operator applied to ``R`` minus ``rhs``.

    End samples are NaN.
    """
    p = profile.params
    deta = 0.0 if p.isothermal else p.alpha
    R = np.asarray(R, dtype=float)
    lhs = (1.0 + 2.0 * p.H0 * deta) * R - 4.0 * p.H0**2 * profile.eta**2 * second_difference(R, profile.grid.dz)
    return lhs if rhs is None else lhs - rhs


def fit_constants(Rp, pair: HomogeneousPair, r_lo: float, r_hi: float):
    """C1, C2 so that Rp + C1 R1 + C2 R2 takes values r_lo, r_hi at the ends."""
    # R1(0) = 1, R2(0) = 0
    c1 = r_lo - Rp[0]
    c2 = (r_hi - Rp[-1] - c1 * pair.R1[-1]) / pair.R2[-1]
    return float(c1), float(c2)


def solve_R_quadrature(
    D, profile: BackgroundProfile, C1: float = 0.0, C2: float = 0.0, pair=None, end_correction: bool = True
) -> np.ndarray:
    """Variation-of-parameters solution with cumulative trapezoid integrals.

    The end-corrected trapezoid is fourth order; pass ``end_correction=False``
    for the plain second-order rule.
    """
    pair = pair or homogeneous_solutions(profile)
    D = np.asarray(D, dtype=float)
    dz = profile.grid.dz
    R1, R2 = pair.R1, pair.R2
    I1 = cumtrapz0(R1 * D, dz, end_correction)
    I2 = cumtrapz0(R2 * D, dz, end_correction)
    return R2 * I1 - R1 * I2 + C1 * R1 + C2 * R2


def _parse_bc(bc):
    if bc is None or bc == "dirichlet_zero":
        return 0.0, 0.0
    if isinstance(bc, tuple) and len(bc) == 3 and bc[0] == "match_values":
        return float(bc[1]), float(bc[2])
    if isinstance(bc, tuple) and len(bc) == 2:
        return float(bc[0]), float(bc[1])
    raise ValueError(f"unknown boundary condition {bc!r}")


def solve_R_bvp(D, profile: BackgroundProfile, bc="dirichlet_zero", scheme: str = "numerov") -> np.ndarray:
    """Solve R'' - q R = D with Dirichlet end values by a tridiagonal solve.

    ``scheme="central"`` is the plain second-order three-point stencil;
    ``scheme="numerov"`` keeps the three-point structure at fourth order.
    ``bc`` is ``"dirichlet_zero"`` or ``("match_values", r_lo, r_hi)``.
    """
    r_lo, r_hi = _parse_bc(bc)
    D = np.asarray(D, dtype=float)
    dz2 = profile.grid.dz**2
    q = potential_q(profile)
    n = profile.grid.n
    if scheme == "central":
        lower = np.ones(n)
        upper = np.ones(n)
        diag = -2.0 - dz2 * q
        rhs = dz2 * D
    elif scheme == "numerov":
        s = dz2 / 12.0
        lower = 1.0 - s * q
        upper = 1.0 - s * q
        diag = -2.0 - 10.0 * s * q
        rhs = np.zeros(n)
        rhs[1:-1] = s * (D[:-2] + 10.0 * D[1:-1] + D[2:])
    else:
        raise ValueError(f"unknown BVP scheme {scheme!r}")
    # row i couples R[i-1], R[i], R[i+1]; for numerov the off-diagonal weights
    # belong to the neighbouring sample
    lo = lower[:-2]
    up = upper[2:]
    d = diag[1:-1]
    b = rhs[1:-1].copy()
    b[0] -= lo[0] * r_lo
    b[-1] -= up[-1] * r_hi
    lo_full = np.concatenate(([0.0], lo[1:]))
    up_full = np.concatenate((up[:-1], [0.0]))
    interior = solve_tridiagonal(lo_full, d, up_full, b)
    return np.concatenate(([r_lo], interior, [r_hi]))


def decompose(
    total: FieldState,
    profile: BackgroundProfile,
    method: str = "bvp",
    bc="dirichlet_zero",
    scheme: str = "numerov",
) -> ModeSplit:
    """Split ``total`` into its summed acoustic part and its stationary part.

    All of Uz goes to the acoustic part; the stationary mode carries no velocity.
    """
    _check_grid(total.grid, profile.grid)
    require_stable(profile)
    D = rhs_D(total.P, total.Phi, profile)
    if method == "bvp":
        R = solve_R_bvp(D, profile, bc=bc, scheme=scheme)
    elif method == "quadrature":
        pair = homogeneous_solutions(profile)
        Rp = solve_R_quadrature(D, profile, pair=pair)
        c1, c2 = fit_constants(Rp, pair, *_parse_bc(bc))
        R = Rp + c1 * pair.R1 + c2 * pair.R2
    else:
        raise ValueError(f"unknown decomposition method {method!r}")
    Phi_a = profile.nu / profile.eta * R
    P_a = acoustic_p_from_R(R, profile)
    zero = np.zeros(total.grid.n)
    acoustic = FieldState(total.grid, total.Uz, P_a, Phi_a, total.t)
    entropy = FieldState(total.grid, zero, total.P - P_a, total.Phi - Phi_a, total.t)
    return ModeSplit(acoustic, entropy)
