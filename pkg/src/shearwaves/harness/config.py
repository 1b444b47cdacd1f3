"""Scenario configuration: a flat ``key = value`` text format.

Lines starting with ``#`` and blank lines are ignored. Keys are the field
names of :class:`ScenarioConfig`; lists (``snapshot_times``,
``gamma_values``) are comma separated. Exactly one of ``A0`` and ``B0`` is
given; the other is derived from the amplitude relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional

from ..coeffs import PhysicalParams, a0_from_b0, b0_from_a0
from ..envelope import VARIANTS
from ..errors import ConfigurationError
from ..spectral import SpectralGrid

RUN_KINDS = ("full", "dysthe", "compare", "stability-map", "reconstruct-check", "energy-check")
RECONSTRUCTION_MODES = ("full", "partial")

#: Keys a config file must define.
REQUIRED_KEYS = ("gamma", "k0")


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to reproduce one experiment.

    Attributes
    ----------
    g, gamma, k0 : float
        Gravity, vorticity and carrier wavenumber (``k0`` integer valued).
    A0, B0 : float or None
        Surface or envelope amplitude; exactly one is set by the user.
    lambda_pert : int
        Sideband wavenumber of the initial modulation.
    perturbation : float
        Relative depth of the modulation ``u = B0 (1 + perturbation cos)``.
    n_nodes, dt, t_end, dno_order : numerics of the time march.
    output_interval : float
        Time between diagnostics records.
    snapshot_times : tuple of float
        Times at which field snapshots are written.
    variant : str
        Envelope model variant.
    zero_mode_correction : bool
        Add the periodic-cell carrier shift to the envelope model (off by
        default; see :func:`shearwaves.coeffs.zero_mode_shift`).
    reconstruction : str
        ``full`` (normal-form flow) or ``partial`` (first harmonics only).
    kind : str
        Run kind, one of :data:`RUN_KINDS`.
    gamma_values, lambda_max, lambda_step : stability-map sweep.
    output_dir : str
    """

    g: float = 1.0
    gamma: float = 0.0
    k0: float = 10.0
    A0: Optional[float] = None
    B0: Optional[float] = None
    lambda_pert: int = 1
    perturbation: float = 0.1
    n_nodes: int = 512
    dt: float = 0.005
    t_end: float = 1000.0
    dno_order: int = 6
    output_interval: float = 5.0
    snapshot_times: tuple = field(default_factory=tuple)
    variant: str = "narrowband"
    zero_mode_correction: bool = False
    reconstruction: str = "full"
    kind: str = "compare"
    gamma_values: tuple = (-2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0)
    lambda_max: float = 20.0
    lambda_step: float = 0.01
    output_dir: str = "out"

    def __post_init__(self):
        if (self.A0 is None) == (self.B0 is None):
            raise ConfigurationError("exactly one of A0 and B0 must be given", key="A0")
        for key in ("A0", "B0"):
            v = getattr(self, key)
            if v is not None and not v > 0:
                raise ConfigurationError(f"{key} must be positive", key=key)
        if not self.dt > 0:
            raise ConfigurationError("dt must be positive", key="dt")
        if not self.t_end >= 0:
            raise ConfigurationError("t_end must be non-negative", key="t_end")
        if not self.output_interval > 0:
            raise ConfigurationError("output_interval must be positive", key="output_interval")
        if self.kind not in RUN_KINDS:
            raise ConfigurationError(f"kind must be one of {RUN_KINDS}", key="kind")
        if self.variant not in VARIANTS:
            raise ConfigurationError(f"variant must be one of {VARIANTS}", key="variant")
        if self.reconstruction not in RECONSTRUCTION_MODES:
            raise ConfigurationError(f"reconstruction must be one of {RECONSTRUCTION_MODES}", key="reconstruction")
        if self.dno_order < 0:
            raise ConfigurationError("dno_order must be non-negative", key="dno_order")
        if self.lambda_pert < 1:
            raise ConfigurationError("lambda_pert must be a positive integer", key="lambda_pert")
        if not (self.lambda_max > 0 and self.lambda_step > 0):
            raise ConfigurationError("lambda_max and lambda_step must be positive", key="lambda_step")
        # Validates g, gamma and k0.
        self.params()
        SpectralGrid(self.n_nodes)

    # --------------------------------------------------------------- derived
    def params(self) -> PhysicalParams:
        return PhysicalParams(g=self.g, gamma=self.gamma, k0=self.k0)

    def grid(self) -> SpectralGrid:
        return SpectralGrid(self.n_nodes)

    @property
    def amplitude_B0(self) -> float:
        return self.B0 if self.B0 is not None else float(b0_from_a0(self.A0, self.params()))

    @property
    def amplitude_A0(self) -> float:
        return self.A0 if self.A0 is not None else float(a0_from_b0(self.B0, self.params()))

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))

    @property
    def sample_every(self) -> int:
        return max(1, int(round(self.output_interval / self.dt)))

    def with_updates(self, **changes) -> "ScenarioConfig":
        """Copy with some fields replaced; setting one amplitude clears the other."""
        if "A0" in changes and changes["A0"] is not None:
            changes.setdefault("B0", None)
        if "B0" in changes and changes["B0"] is not None:
            changes.setdefault("A0", None)
        return replace(self, **changes)


_INT_KEYS = {"lambda_pert", "n_nodes", "dno_order"}
_FLOAT_KEYS = {"g", "gamma", "k0", "A0", "B0", "perturbation", "dt", "t_end", "output_interval", "lambda_max", "lambda_step"}
_LIST_KEYS = {"snapshot_times", "gamma_values"}
_STR_KEYS = {"variant", "reconstruction", "kind", "output_dir"}
_BOOL_KEYS = {"zero_mode_correction"}
_TRUE = ("1", "true", "yes", "on")
_FALSE = ("0", "false", "no", "off")
FIELD_NAMES = tuple(f.name for f in fields(ScenarioConfig))


def parse_value(key: str, text: str):
    """Convert the text of one entry to the type of field ``key``."""
    text = text.strip()
    try:
        if key in _INT_KEYS:
            f = float(text)
            if f != int(f):
                raise ValueError(text)
            return int(f)
        if key in _FLOAT_KEYS:
            if key in ("A0", "B0") and text.lower() in ("", "none"):
                return None
            return float(text)
        if key in _LIST_KEYS:
            return tuple(float(t) for t in text.split(",") if t.strip())
        if key in _STR_KEYS:
            return text
        if key in _BOOL_KEYS:
            if text.lower() in _TRUE:
                return True
            if text.lower() in _FALSE:
                return False
            raise ValueError(text)
    except ValueError as exc:
        raise ConfigurationError(f"bad value for {key}: {text!r}", key=key) from exc
    raise ConfigurationError(f"unknown configuration key {key!r}", key=key)


def parse_config_text(text: str, require=REQUIRED_KEYS) -> dict:
    """Parse flat ``key = value`` text into a dict of typed values."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected key = value, got {raw!r}", key=line)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in FIELD_NAMES:
            raise ConfigurationError(f"line {lineno}: unknown configuration key {key!r}", key=key)
        if key in out:
            raise ConfigurationError(f"line {lineno}: duplicate key {key!r}", key=key)
        out[key] = parse_value(key, value)
    for key in require:
        if key not in out:
            raise ConfigurationError(f"missing required key {key!r}", key=key)
    if "A0" not in out and "B0" not in out:
        raise ConfigurationError("missing required key 'B0' (or 'A0')", key="B0")
    return out


def load_config(path, **overrides) -> ScenarioConfig:
    """Read a config file; ``overrides`` (e.g. from the command line) win."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"{path}: cannot read config ({exc.strerror})", key="config") from exc
    values = parse_config_text(text)
    values.update({k: v for k, v in overrides.items() if v is not None})
    if overrides.get("A0") is not None:
        values.pop("B0", None)
    if overrides.get("B0") is not None:
        values.pop("A0", None)
    return ScenarioConfig(**values)


def _format(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ",".join(format(v, ".17g") for v in value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def config_to_text(cfg: ScenarioConfig) -> str:
    """Deterministic flat-text rendering (round-trips through :func:`parse_config_text`)."""
    lines = []
    for name in FIELD_NAMES:
        value = getattr(cfg, name)
        if name in ("A0", "B0") and value is None:
            continue
        lines.append(f"{name} = {_format(value)}")
    return "\n".join(lines) + "\n"


def write_config(cfg: ScenarioConfig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(config_to_text(cfg))
    return path
