"""Configuration, scenario orchestration, CSV I/O and the command-line interface."""

from .config import ScenarioConfig, config_to_text, load_config, parse_config_text, write_config
from .io import (
    read_envelope_snapshot,
    read_series,
    read_stability_map,
    read_surface_snapshot,
    write_envelope_snapshot,
    write_series,
    write_stability_map,
    write_surface_snapshot,
)
from .scenarios import (
    DiagnosticsRecord,
    GrowthFit,
    RunResult,
    energy_check,
    l2_rel_err,
    measure_growth,
    reconstruct_check,
    run_compare,
    run_dysthe,
    run_full,
    run_scenario,
    run_stability_map,
)

__all__ = [
    "ScenarioConfig",
    "config_to_text",
    "load_config",
    "parse_config_text",
    "write_config",
    "read_envelope_snapshot",
    "read_series",
    "read_stability_map",
    "read_surface_snapshot",
    "write_envelope_snapshot",
    "write_series",
    "write_stability_map",
    "write_surface_snapshot",
    "DiagnosticsRecord",
    "GrowthFit",
    "RunResult",
    "energy_check",
    "l2_rel_err",
    "measure_growth",
    "reconstruct_check",
    "run_compare",
    "run_dysthe",
    "run_full",
    "run_scenario",
    "run_stability_map",
]
