"""Command-line entry point: ``shearwaves <subcommand> [--config FILE] [--out DIR] [flags]``.

Every :class:`ScenarioConfig` field has a flag (``--gamma``, ``--B0``,
``--n-nodes`` ...); flags override values from ``--config``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..coeffs import compute_coefficients
from ..errors import ShearWavesError
from .config import FIELD_NAMES, ScenarioConfig, load_config, parse_value
from .io import fmt
from .scenarios import run_scenario

SUBCOMMANDS = {
    "simulate-full": "full",
    "simulate-dysthe": "dysthe",
    "compare": "compare",
    "stability-map": "stability-map",
    "reconstruct-check": "reconstruct-check",
    "energy-check": "energy-check",
    "coeffs": None,
}


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value configuration file")
    p.add_argument("--out", help="output directory (sets output_dir)")
    for name in FIELD_NAMES:
        if name in ("kind", "output_dir"):
            continue
        p.add_argument(_flag(name), dest=name, default=None, metavar=name.upper(), help=f"override {name}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shearwaves",
        description="Deep-water waves on a constant-vorticity current: full solver, envelope model and diagnostics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "simulate-full": "march the full Euler system",
        "simulate-dysthe": "march the Hamiltonian Dysthe envelope equation",
        "compare": "run both models and log the relative L2 error",
        "stability-map": "sweep the sideband growth rate over (gamma, lambda)",
        "reconstruct-check": "envelope/surface round trip through the normal-form flow",
        "energy-check": "conservation diagnostics of both solvers",
        "coeffs": "print the model coefficient table",
    }
    for name, text in helps.items():
        _add_config_flags(sub.add_parser(name, help=text, description=text))
    return parser


def config_from_args(args: argparse.Namespace, kind) -> ScenarioConfig:
    overrides = {}
    for name in FIELD_NAMES:
        raw = getattr(args, name, None)
        if raw is not None:
            overrides[name] = parse_value(name, raw)
    if kind is not None:
        overrides["kind"] = kind
    if args.out is not None:
        overrides["output_dir"] = args.out
    if args.config:
        return load_config(args.config, **overrides)
    if "A0" not in overrides and "B0" not in overrides:
        overrides["B0"] = 0.002
    return ScenarioConfig(**overrides)


def _print_coeffs(cfg: ScenarioConfig, stream) -> None:
    c = compute_coefficients(cfg.params())
    stream.write(f"# g={fmt(cfg.g)} gamma={fmt(cfg.gamma)} k0={fmt(cfg.k0)}\n")
    for key, value in c.as_dict().items():
        stream.write(f"{key:>10s} = {fmt(value)}\n")


def _summary(result, stream) -> None:
    for k, v in result.extra.items():
        if k == "rows":
            stream.write(f"rows = {len(v)}\n")
        elif isinstance(v, float):
            stream.write(f"{k} = {fmt(v)}\n")
    g = result.growth
    if g is not None:
        if g.found:
            stream.write(f"growth_rate = {fmt(g.rate)} (window {g.t_start:g}..{g.t_end:g}, {g.n_points} samples)\n")
        else:
            stream.write(f"growth_rate = none ({g.reason})\n")
    if result.records:
        last = result.records[-1]
        stream.write(f"t_final = {fmt(last.time)}\n")
    for f in result.files:
        stream.write(f"wrote {f}\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    kind = SUBCOMMANDS[args.command]
    try:
        cfg = config_from_args(args, kind)
        if kind is None:
            _print_coeffs(cfg, sys.stdout)
            return 0
        result = run_scenario(cfg, out=Path(cfg.output_dir))
    except ShearWavesError as exc:
        key = getattr(exc, "key", None)
        where = f" [{key}]" if key else ""
        sys.stderr.write(f"shearwaves: error{where}: {exc}\n")
        return 2
    _summary(result, sys.stdout)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
