import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratmodes.background import AtmosphereParams, StabilityError, build_profile
from stratmodes.decompose import decompose
from stratmodes.energetics import (
    boundary_flux,
    energy_budget,
    energy_parts,
    inner_product,
    normalized_cross,
    physical_energy,
    selfadjointness_defect,
    selfadjointness_residual,
    transformed_energy,
)
from stratmodes.fields import FieldState, PhysicalState, PulseSpec, make_pulse, to_physical, to_transformed
from stratmodes.numerics import integrate

from conftest import PAPER_ALPHAS, observed_order, record_criterion, smooth_field
from test_decompose import pure_acoustic, pure_entropy

coeffs = st.lists(st.floats(-3, 3), min_size=3, max_size=3)


def _state(prof, cu, cp, cf):
    z = prof.z
    return FieldState(prof.grid, smooth_field(z, cu, 6.0), smooth_field(z, cp, 6.0), smooth_field(z, cf, 6.0))


def test_zero_energy(profile_cache):
    prof = profile_cache(0.1, 64)
    zero = FieldState.zeros(prof.grid)
    assert transformed_energy(zero, prof) == 0.0
    assert physical_energy(to_physical(zero, prof), prof) == 0.0


def test_kinetic_only():
    prof = build_profile(AtmosphereParams(alphaH0=0.1, h=6.0), 101)
    z0 = np.zeros(101)
    # V = rho_bar^-1/2 makes the kinetic density 1/2
    phys = PhysicalState(prof.grid, 1.0 / np.sqrt(prof.rho_bar), z0, z0, z0)
    assert physical_energy(phys, prof) == pytest.approx(3.0, rel=1e-14)


def test_kinetic_only_unit_density():
    # a huge scale height leaves rho_bar = 1 to ~1e-11 on [0, 6]
    prof = build_profile(AtmosphereParams(H0=1e12, h=6.0), 101)
    z0 = np.zeros(101)
    phys = PhysicalState(prof.grid, np.ones(101), z0, z0, z0)
    assert physical_energy(phys, prof) == pytest.approx(3.0, rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(coeffs, coeffs, coeffs, st.sampled_from(PAPER_ALPHAS))
def test_physical_equals_transformed(cu, cp, cf, alpha):
    prof = build_profile(AtmosphereParams(alphaH0=alpha), 200)
    s = _state(prof, cu, cp, cf)
    e_t = transformed_energy(s, prof)
    e_p = physical_energy(to_physical(s, prof), prof)
    assert e_p == pytest.approx(e_t, rel=1e-10, abs=1e-300)
    phys = to_physical(s, prof)
    assert transformed_energy(to_transformed(phys, prof), prof) == pytest.approx(e_p, rel=1e-10, abs=1e-300)


def test_isothermal_weights_reduce_to_constants(profile_cache):
    prof = profile_cache(0.0, 300)
    s = _state(prof, [1, 2, 3], [0.5, -1, 1], [2, 0, -1])
    g, H, rho0, grav = 1.4, 1.0, 1.0, 1.0
    dz = prof.grid.dz
    oracle = 0.5 * integrate(
        rho0 * s.Uz**2 + s.P**2 / (g * grav * H * rho0) + s.Phi**2 / (g * (g - 1) * grav * H * rho0), dz
    )
    assert transformed_energy(s, prof) == pytest.approx(oracle, rel=1e-14)


def test_inner_product_basic(profile_cache):
    prof = profile_cache(0.1, 128)
    a = _state(prof, [1, 0, 2], [0, 1, 1], [3, 1, 0])
    b = _state(prof, [0, 2, 1], [1, -1, 0], [0, 1, 2])
    assert inner_product(a, FieldState.zeros(prof.grid), prof) == 0.0
    assert inner_product(a, b, prof) == pytest.approx(inner_product(b, a, prof), rel=1e-14)
    assert inner_product(a + 2.0 * b, b, prof) == pytest.approx(inner_product(a, b, prof) + 2 * inner_product(b, b, prof))
    assert inner_product(a, a, prof) == pytest.approx(2 * transformed_energy(a, prof))


@settings(max_examples=30, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_positive_definite(cu, cp, cf):
    prof = build_profile(AtmosphereParams(alphaH0=-0.1), 100)
    s = _state(prof, cu, cp, cf)
    if s.l2_norm() > 0:
        assert inner_product(s, s, prof) > 0


def test_energy_requires_stability():
    prof = build_profile(AtmosphereParams(alphaH0=-0.3, h=3.0), 64)
    with pytest.raises(StabilityError):
        transformed_energy(FieldState.zeros(prof.grid), prof)


@pytest.mark.parametrize("alpha", PAPER_ALPHAS)
def test_modes_orthogonal(profile_cache, alpha):
    prof = profile_cache(alpha, 4096)
    total = pure_entropy(prof, z0=2.7) + pure_acoustic(prof, "derivative", z0=3.3)
    split = decompose(total, prof)
    c = normalized_cross(split.acoustic, split.entropy, prof)
    budget = energy_budget(total, split, prof)
    assert budget["E_total"] == pytest.approx(budget["E_acoustic"] + budget["E_entropy"] + budget["cross"], rel=1e-12)
    if alpha == 0.0:
        assert abs(c) < 1e-6
        assert abs(budget["cross"]) < 1e-6 * budget["E_total"]
    else:
        record_criterion(f"[INFO] normalized acoustic/entropy cross term at alphaH0={alpha}: {c:.3e}")
        assert np.isfinite(c)


def test_energy_parts_sum(profile_cache):
    prof = profile_cache(0.1, 128)
    s = _state(prof, [1, 0, 2], [0, 1, 1], [3, 1, 0])
    assert sum(energy_parts(s, prof)) == pytest.approx(transformed_energy(s, prof))


# --- skew-adjointness of the generator ------------------------------------------


def test_selfadjoint_zero(profile_cache):
    prof = profile_cache(0.0, 64)
    z = FieldState.zeros(prof.grid)
    assert selfadjointness_residual(z, z, prof) == 0.0


@pytest.mark.parametrize("alpha", PAPER_ALPHAS)
def test_selfadjoint_compact_pulses(alpha):
    prof = build_profile(AtmosphereParams(alphaH0=alpha), 1024)
    a = pure_acoustic(prof, z0=2.5, beta=0.3)
    a = FieldState(prof.grid, make_pulse(PulseSpec(z0=3.1, beta=0.2), prof.grid), a.P, a.Phi)
    b = pure_entropy(prof, "derivative", z0=3.4)
    b = FieldState(prof.grid, make_pulse(PulseSpec(kind="derivative", z0=2.8), prof.grid), b.P, b.Phi)
    scale = np.sqrt(inner_product(a, a, prof) * inner_product(b, b, prof))
    assert selfadjointness_residual(a, b, prof) < 1e-9 * scale


def _impermeable_pair(prof):
    z, h = prof.z, prof.grid.h
    a = FieldState(prof.grid, np.sin(np.pi * z / h) * (1 + z), np.cos(z) + 0.3, np.exp(-z / 3))
    b = FieldState(prof.grid, np.sin(2 * np.pi * z / h), 1.0 + 0.1 * z**2, np.sin(z))
    return a, b


@pytest.mark.parametrize("alpha", PAPER_ALPHAS)
def test_selfadjoint_impermeable_decays(alpha):
    res = []
    for n in (128, 256, 512, 1024):
        prof = build_profile(AtmosphereParams(alphaH0=alpha), n)
        a, b = _impermeable_pair(prof)
        assert abs(boundary_flux(a, b)) < 1e-13
        res.append(selfadjointness_residual(a, b, prof))
    assert np.all(observed_order(res) > 1.9)


@pytest.mark.parametrize("alpha", PAPER_ALPHAS)
def test_selfadjoint_matches_boundary_flux(alpha):
    errs = []
    for n in (128, 256, 512, 1024):
        prof = build_profile(AtmosphereParams(alphaH0=alpha), n)
        z = prof.z
        a = FieldState(prof.grid, np.cos(z) + 0.5, np.exp(-z / 4), np.sin(z))
        b = FieldState(prof.grid, 1.0 + 0.2 * z, np.cos(0.7 * z), np.ones_like(z))
        flux = boundary_flux(a, b)
        assert abs(flux) > 0.1
        errs.append(abs(selfadjointness_defect(a, b, prof) - flux))
    assert np.all(observed_order(errs) > 1.9)
