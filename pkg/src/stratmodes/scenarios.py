"""Reproducible scenario runs behind the command-line interface.

Each runner returns its numbers in a dict and, when ``cfg.out`` is set, writes
``config.resolved`` plus CSV (and optionally SVG) files into that directory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import svg
from .background import AtmosphereParams, StabilityError, StabilityReport, build_profile, check_stability
from .decompose import decompose
from .dispersion import omega_sweep
from .energetics import energy_budget
from .evolve import EvolveConfig, run, stable_dt
from .fields import FieldState, PulseKind, PulseSpec, make_pulse
from .io import read_csv, write_csv, write_rows
from .relations import acoustic_p_from_phi, entropy_phi_from_p

__all__ = [
    "SCENARIOS",
    "ScenarioConfig",
    "profile_for",
    "run_entropy_only",
    "run_sound_only",
    "run_zero_total_entropy",
    "run_evolve_verify",
    "run_dispersion_sweep",
    "run_profile_dump",
    "run_decompose_file",
    "run_scenario",
]

SCENARIOS = (
    "entropy_only",
    "sound_only",
    "zero_total_entropy",
    "evolve_verify",
    "dispersion_sweep",
    "profile_dump",
    "decompose_file",
)

FIGURE_ALPHAS = (-0.1, 0.0, 0.1)
_DEFAULT_ALPHAS = {
    "entropy_only": FIGURE_ALPHAS,
    "sound_only": FIGURE_ALPHAS,
    "zero_total_entropy": FIGURE_ALPHAS,
    "profile_dump": FIGURE_ALPHAS,
    "evolve_verify": (0.0,),
    "dispersion_sweep": (0.0,),
    "decompose_file": (0.0,),
}
_BOTH_KINDS = (PulseKind.GAUSSIAN, PulseKind.DERIVATIVE)


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    gamma: float = 1.4
    alpha_h0: tuple | None = None
    n: int = 4096
    h: float = 6.0
    z0: float = 3.0
    beta: float = 0.3
    amplitude: float = 1.0
    kind: tuple | None = None
    method: str = "bvp"
    out: str | None = None
    svg: bool = False
    t_end: float = 10.0
    cfl: float = 0.4
    output_every: int | None = None
    boundary: str = "impermeable"
    kmax: float = 20.0
    nk: int = 41
    field: str | None = None

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}")
        alphas = self.alpha_h0 if self.alpha_h0 is not None else _DEFAULT_ALPHAS[self.scenario]
        object.__setattr__(self, "alpha_h0", tuple(float(a) for a in alphas))
        kinds = self.kind if self.kind is not None else _BOTH_KINDS
        if isinstance(kinds, (str, PulseKind)):
            kinds = (kinds,)
        object.__setattr__(self, "kind", tuple(PulseKind.parse(k) for k in kinds))
        if self.method not in ("bvp", "quadrature"):
            raise ValueError(f"method must be bvp or quadrature, got {self.method!r}")
        if self.scenario == "decompose_file" and not self.field:
            raise ValueError("decompose needs an input field CSV")

    def pulse(self, kind) -> PulseSpec:
        return PulseSpec(kind=kind, amplitude=self.amplitude, beta=self.beta, z0=self.z0)

    def resolved(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "out":
                continue
            if f.name == "kind":
                v = ",".join(k.value for k in v)
            elif f.name == "alpha_h0":
                v = ",".join(repr(a) for a in v)
            out[f.name] = v
        return out


def profile_for(cfg: ScenarioConfig, alpha: float, n: int | None = None, h: float | None = None):
    """Stability gate, then profile construction.

    nu is constant for a linear scale height, so it is checked from the
    constants before the profile-positivity check can mask it.
    """
    nu = cfg.gamma - 1.0 + cfg.gamma * alpha
    if not nu > 0.0:
        raise StabilityError(StabilityReport(passed=False, min_nu=nu, z_min=0.0))
    params = AtmosphereParams(gamma=cfg.gamma, alphaH0=alpha, h=cfg.h if h is None else h)
    profile = build_profile(params, cfg.n if n is None else n)
    report = check_stability(profile)
    if not report.passed:
        raise StabilityError(report)
    return profile


def _outdir(cfg):
    if cfg.out is None:
        return None
    d = Path(cfg.out)
    d.mkdir(parents=True, exist_ok=True)
    lines = "".join(f"{k} = {v}\n" for k, v in cfg.resolved().items())
    (d / "config.resolved").write_text(lines)
    return d


def _col(name, alpha):
    return f"{name}(aH0={alpha!r})"


def _rel(part: FieldState, whole: FieldState) -> float:
    return part.l2_norm() / whole.l2_norm()


def _emit_figure(d, cfg, stem, z, curves, names, title):
    columns = {"z": z}
    for alpha, arrays in curves.items():
        for name, arr in zip(names, arrays):
            columns[_col(name, alpha)] = arr
    write_csv(d / f"{stem}.csv", columns, cfg.resolved())
    if cfg.svg:
        for j, name in enumerate(names):
            series = {f"aH0={a:g}": arrays[j] for a, arrays in curves.items()}
            svg.line_plot(d / f"{stem}_{name}.svg", z, series, title=f"{title}: {name}", ylabel=name)


def run_entropy_only(cfg: ScenarioConfig) -> dict:
    d = _outdir(cfg)
    curves, leaks = {}, {}
    z = None
    for kind in cfg.kind:
        per_alpha = {}
        for alpha in cfg.alpha_h0:
            prof = profile_for(cfg, alpha)
            z = prof.z
            P0 = make_pulse(cfg.pulse(kind), prof.grid)
            Phi0 = entropy_phi_from_p(P0, prof)
            total = FieldState(prof.grid, np.zeros_like(P0), P0, Phi0)
            split = decompose(total, prof, method=cfg.method)
            leaks[(kind.value, alpha)] = _rel(split.acoustic, total)
            per_alpha[alpha] = (P0, Phi0)
        curves[kind.value] = per_alpha
        if d is not None:
            _emit_figure(d, cfg, f"entropy_only_{kind.value}", z, per_alpha, ("P0", "Phi0"), "entropy mode")
    if d is not None:
        rows = [(k, a, v) for (k, a), v in leaks.items()]
        write_rows(d / "leaks.csv", ("kind", "alphaH0", "acoustic_leak"), rows, cfg.resolved())
    return {"z": z, "curves": curves, "leaks": leaks}


def run_sound_only(cfg: ScenarioConfig) -> dict:
    d = _outdir(cfg)
    curves, leaks = {}, {}
    z = None
    for kind in cfg.kind:
        per_alpha = {}
        for alpha in cfg.alpha_h0:
            prof = profile_for(cfg, alpha)
            z = prof.z
            Phi_a = make_pulse(cfg.pulse(kind), prof.grid)
            P_a = acoustic_p_from_phi(Phi_a, prof)
            total = FieldState(prof.grid, np.zeros_like(P_a), P_a, Phi_a)
            split = decompose(total, prof, method=cfg.method)
            leaks[(kind.value, alpha)] = _rel(split.entropy, total)
            per_alpha[alpha] = (P_a, Phi_a)
        curves[kind.value] = per_alpha
        if d is not None:
            _emit_figure(d, cfg, f"sound_only_{kind.value}", z, per_alpha, ("P_a", "Phi_a"), "sound")
    if d is not None:
        rows = [(k, a, v) for (k, a), v in leaks.items()]
        write_rows(d / "leaks.csv", ("kind", "alphaH0", "entropy_leak"), rows, cfg.resolved())
    return {"z": z, "curves": curves, "leaks": leaks}


def run_zero_total_entropy(cfg: ScenarioConfig) -> dict:
    d = _outdir(cfg)
    curves, checks = {}, {}
    z = None
    for kind in cfg.kind:
        per_alpha = {}
        for alpha in cfg.alpha_h0:
            prof = profile_for(cfg, alpha)
            z = prof.z
            P0 = make_pulse(cfg.pulse(kind), prof.grid)
            Phi0 = entropy_phi_from_p(P0, prof)
            Phi_a = -Phi0
            P_a = acoustic_p_from_phi(Phi_a, prof)
            zero = np.zeros_like(P0)
            acoustic = FieldState(prof.grid, zero, P_a, Phi_a)
            entropy = FieldState(prof.grid, zero, P0, Phi0)
            total = acoustic + entropy
            split = decompose(total, prof, method=cfg.method)
            scale = max(np.max(np.abs(Phi0)), np.max(np.abs(Phi_a)))
            checks[(kind.value, alpha)] = {
                "max_total_phi": float(np.max(np.abs(total.Phi)) / scale),
                "split_error": max(
                    _rel(split.acoustic - acoustic, acoustic),
                    _rel(split.entropy - entropy, entropy),
                ),
            }
            per_alpha[alpha] = (P_a, P0, Phi0)
        curves[kind.value] = per_alpha
        if d is not None:
            _emit_figure(d, cfg, f"zero_entropy_{kind.value}", z, per_alpha, ("P_a", "P_0", "Phi_0"), "zero total entropy")
    if d is not None:
        rows = [(k, a, v["max_total_phi"], v["split_error"]) for (k, a), v in checks.items()]
        write_rows(d / "checks.csv", ("kind", "alphaH0", "max_total_phi", "split_error"), rows, cfg.resolved())
    return {"z": z, "curves": curves, "checks": checks}


def mixed_initial_state(cfg: ScenarioConfig, prof, kind=None) -> FieldState:
    """Entropy pulse plus an acoustic pulse of the same shape, no velocity."""
    kind = kind or cfg.kind[0]
    shape = make_pulse(cfg.pulse(kind), prof.grid)
    P0 = shape
    Phi0 = entropy_phi_from_p(P0, prof)
    Phi_a = shape
    P_a = acoustic_p_from_phi(Phi_a, prof)
    return FieldState(prof.grid, np.zeros_like(shape), P0 + P_a, Phi0 + Phi_a)


def run_evolve_verify(cfg: ScenarioConfig) -> dict:
    d = _outdir(cfg)
    results = {}
    for alpha in cfg.alpha_h0:
        prof = profile_for(cfg, alpha)
        initial = mixed_initial_state(cfg, prof)
        every = cfg.output_every
        if every is None:
            nsteps = math.ceil(cfg.t_end / stable_dt(prof, cfg.cfl) - 1e-9)
            every = max(1, math.ceil(nsteps / 20))
        econf = EvolveConfig(t_end=cfg.t_end, cfl=cfg.cfl, output_every=every, boundary=cfg.boundary)
        res = run(initial, prof, econf)
        splits = [decompose(s, prof, method=cfg.method) for s in res.snapshots]
        e0 = splits[0].entropy
        budget = [energy_budget(s, sp, prof) for s, sp in zip(res.snapshots, splits)]
        E0 = budget[0]["E_total"]
        drift_rows = [
            (b["t"], _rel(sp.entropy - e0, e0), abs(b["E_total"] - E0) / E0) for b, sp in zip(budget, splits)
        ]
        results[alpha] = {"budget": budget, "drift": drift_rows, "dt": res.dt, "nsteps": res.nsteps}
        if d is not None:
            sub = d if len(cfg.alpha_h0) == 1 else d / f"aH0={alpha!r}"
            frames = sub / "frames"
            frames.mkdir(parents=True, exist_ok=True)
            for i, snap in enumerate(res.snapshots):
                comments = {**cfg.resolved(), "t": repr(snap.t), "frame_alphaH0": repr(alpha)}
                write_csv(frames / f"frame_{i:04d}.csv", snap.as_columns(), comments)
            header = ("t", "E_total", "E_kinetic", "E_baro", "E_thermal", "E_acoustic", "E_entropy", "cross")
            write_rows(sub / "energy.csv", header, [[b[k] for k in header] for b in budget], cfg.resolved())
            write_rows(sub / "drift.csv", ("t", "entropy_drift", "energy_drift"), drift_rows, cfg.resolved())
    return results


def run_dispersion_sweep(cfg: ScenarioConfig) -> dict:
    if any(a != 0.0 for a in cfg.alpha_h0):
        raise ValueError("dispersion roots are defined only for alphaH0 = 0")
    d = _outdir(cfg)
    params = AtmosphereParams(gamma=cfg.gamma, alphaH0=0.0, h=cfg.h)
    k = np.linspace(0.0, cfg.kmax, cfg.nk)
    KX, KZ = np.meshgrid(k, k, indexing="ij")
    kx, kz = KX.ravel(), KZ.ravel()
    ky = np.zeros_like(kx)
    o1, o3 = omega_sweep(kx, ky, kz, params)
    columns = {"kx": kx, "ky": ky, "kz": kz, "omega1": o1, "omega3": o3}
    if d is not None:
        write_csv(d / "dispersion.csv", columns, cfg.resolved())
    return columns


def run_profile_dump(cfg: ScenarioConfig) -> dict:
    d = _outdir(cfg)
    out = {}
    for alpha in cfg.alpha_h0:
        prof = profile_for(cfg, alpha)
        out[alpha] = prof
        if d is not None:
            write_csv(d / f"profile_aH0={alpha!r}.csv", prof.as_columns(), cfg.resolved())
    return out


def run_decompose_file(cfg: ScenarioConfig) -> dict:
    cols = read_csv(cfg.field)
    missing = {"z", "Uz", "P", "Phi"} - set(cols)
    if missing:
        raise ValueError(f"field CSV lacks columns {sorted(missing)}")
    z = cols["z"]
    n = len(z)
    if n < 16 or z[0] != 0.0:
        raise ValueError("field CSV must start at z = 0 with at least 16 samples")
    dz = np.diff(z)
    if np.max(np.abs(dz - dz.mean())) > 1e-9 * max(1.0, z[-1]):
        raise ValueError("field CSV grid is not uniform")
    alpha = cfg.alpha_h0[0]
    cfg = replace(cfg, n=n, h=float(z[-1]))
    prof = profile_for(cfg, alpha)
    total = FieldState(prof.grid, cols["Uz"], cols["P"], cols["Phi"])
    split = decompose(total, prof, method=cfg.method)
    d = _outdir(cfg)
    if d is not None:
        write_csv(d / "split.csv", split.as_columns(), cfg.resolved())
    return {"split": split, "profile": prof}


_RUNNERS = {
    "entropy_only": run_entropy_only,
    "sound_only": run_sound_only,
    "zero_total_entropy": run_zero_total_entropy,
    "evolve_verify": run_evolve_verify,
    "dispersion_sweep": run_dispersion_sweep,
    "profile_dump": run_profile_dump,
    "decompose_file": run_decompose_file,
}


def run_scenario(cfg: ScenarioConfig) -> dict:
    return _RUNNERS[cfg.scenario](cfg)
