"""Command-line entry point: ``stratmodes <subcommand> [flags]``.

Config files hold flat ``key = value`` lines (``#`` starts a comment); keys are
the long flag names with dashes or underscores. Flags given on the command
line override file values.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .background import StabilityError
from .evolve import CFLViolation
from .numerics import NumericalFailure
from .scenarios import ScenarioConfig, run_scenario

SUBCOMMANDS = {
    "profile": "profile_dump",
    "dispersion": "dispersion_sweep",
    "entropy-only": "entropy_only",
    "sound-only": "sound_only",
    "zero-entropy": "zero_total_entropy",
    "evolve": "evolve_verify",
    "decompose": "decompose_file",
    "run": None,
}

EXIT_USAGE, EXIT_INPUT, EXIT_STABILITY, EXIT_NUMERICAL = 2, 3, 4, 5


def _floats(s):
    return tuple(float(v) for v in str(s).split(",") if v.strip())


def _bool(s):
    if isinstance(s, bool):
        return s
    v = str(s).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _kinds(s):
    return tuple(v.strip() for v in str(s).split(",") if v.strip())


# key -> parser for values read from a config file or the command line
_KEYS = {
    "gamma": float,
    "alpha_h0": _floats,
    "n": int,
    "h": float,
    "z0": float,
    "beta": float,
    "amplitude": float,
    "kind": _kinds,
    "method": str,
    "out": str,
    "svg": _bool,
    "t_end": float,
    "cfl": float,
    "output_every": int,
    "boundary": str,
    "kmax": float,
    "nk": int,
    "field": str,
    "scenario": str,
}


def read_config(path) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _KEYS[key](val)
    return values


def _add_common(p: argparse.ArgumentParser):
    g = p.add_argument_group("scenario parameters")
    g.add_argument("--config", help="key = value config file")
    g.add_argument("--gamma", type=float)
    g.add_argument("--alpha-h0", dest="alpha_h0", type=_floats, help="comma-separated list of alpha*H0")
    g.add_argument("--n", type=int, help="grid samples")
    g.add_argument("--h", type=float, help="domain height in units of H0")
    g.add_argument("--z0", type=float)
    g.add_argument("--beta", type=float)
    g.add_argument("--amplitude", type=float)
    g.add_argument("--kind", type=_kinds, help="gaussian, derivative, or both comma-separated")
    g.add_argument("--method", choices=("bvp", "quadrature"))
    g.add_argument("--out", help="output directory")
    g.add_argument("--svg", action="store_const", const=True, default=None)
    g.add_argument("--t-end", dest="t_end", type=float)
    g.add_argument("--cfl", type=float)
    g.add_argument("--output-every", dest="output_every", type=int)
    g.add_argument("--boundary", choices=("impermeable", "pressure_release_top"))
    g.add_argument("--kmax", type=float)
    g.add_argument("--nk", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stratmodes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        if name == "decompose":
            p.add_argument("field", help="FieldState CSV (z,Uz,P,Phi)")
        _add_common(p)
    return parser


def resolve_config(args) -> ScenarioConfig:
    values = read_config(args.config) if args.config else {}
    for key in _KEYS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    scenario = SUBCOMMANDS[args.command]
    if scenario is not None:
        values["scenario"] = scenario
    elif "scenario" not in values:
        raise ValueError("'run' needs a config file with a scenario key")
    if "out" not in values:
        values["out"] = str(Path("runs") / values["scenario"])
    return ScenarioConfig(**values)


def _fail(code, category, message):
    message = " ".join(str(message).split())
    print(f"error: {category}: {message}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        run_scenario(cfg)
    except StabilityError as exc:
        r = exc.report
        return _fail(EXIT_STABILITY, "stability", f"min_nu={r.min_nu!r} z={r.z_min!r}")
    except (NumericalFailure, CFLViolation) as exc:
        return _fail(EXIT_NUMERICAL, "numerical", exc)
    except (ValueError, OSError, TypeError) as exc:
        return _fail(EXIT_INPUT, "input", exc)
    print(cfg.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
