"""Acoustic / entropy mode decomposition over a gas with linearly varying scale height."""

from .background import AtmosphereParams, BackgroundProfile, Grid1D, build_profile, check_stability
from .decompose import ModeSplit, decompose
from .fields import FieldState, PhysicalState, PulseSpec, make_pulse, to_physical, to_transformed
from .relations import acoustic_p_from_phi, entropy_phi_from_p

__all__ = [
    "AtmosphereParams",
    "BackgroundProfile",
    "Grid1D",
    "build_profile",
    "check_stability",
    "ModeSplit",
    "decompose",
    "FieldState",
    "PhysicalState",
    "PulseSpec",
    "make_pulse",
    "to_physical",
    "to_transformed",
    "acoustic_p_from_phi",
    "entropy_phi_from_p",
]

__version__ = "0.1.0"
