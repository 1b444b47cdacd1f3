"""Experiment orchestration: full-vs-envelope comparison, growth fits, sweeps.

Each ``run_*`` function takes a :class:`ScenarioConfig`, performs one
sequential computation and, when ``out`` is given, writes its CSV files into
that directory. Results are returned as plain dataclasses for programmatic use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from scipy import fft as sfft

from ..coeffs import bf_growth_rate, compute_coefficients
from ..envelope import EnvelopeSolver, action, modulated_envelope, sideband_amplitude
from ..errors import NumericError
from ..euler import EulerSolver, SurfaceState, zeta_to_xi
from ..normalform import NormalFormFlow, envelope_to_surface, partial_reconstruct, surface_to_envelope
from .config import ScenarioConfig, write_config
from .io import write_envelope_snapshot, write_series, write_stability_map, write_surface_snapshot

NAN = float("nan")


@dataclass
class DiagnosticsRecord:
    """One row of a diagnostics time series (unused fields stay NaN)."""

    time: float
    l2_rel_err: float = NAN
    H_full: float = NAN
    H_reduced: float = NAN
    I_momentum: float = NAN
    M_action: float = NAN
    max_eta: float = NAN
    sideband_amplitudes: tuple = ()


@dataclass
class GrowthFit:
    """Least-squares exponential rate over the linear-growth window."""

    rate: float
    t_start: float
    t_end: float
    n_points: int
    found: bool
    reason: str = ""


@dataclass
class RunResult:
    """Output of a scenario: diagnostics, final fields and files written."""

    config: ScenarioConfig
    records: list = field(default_factory=list)
    growth: Optional[GrowthFit] = None
    final_surface: Optional[SurfaceState] = None
    final_envelope: Optional[np.ndarray] = None
    files: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records], dtype=float)


# ------------------------------------------------------------------ metrics
def l2_rel_err(grid, eta_f: np.ndarray, eta_w: np.ndarray) -> float:
    """``||eta_f - eta_w||_2 / ||eta_f||_2`` by trapezoidal quadrature."""
    num = grid.integrate((eta_f - eta_w) ** 2)
    den = grid.integrate(eta_f**2)
    if num == 0.0:
        return 0.0
    return float(np.sqrt(num / den))


def measure_growth(
    times,
    amplitudes,
    carrier=None,
    start_factor: float = 3.0,
    stop_fraction: float = 1.0 / 3.0,
) -> GrowthFit:
    """Fit ``log|u_lam|(t)`` by least squares over the linear-growth window.

    The window opens when the sideband first reaches ``start_factor`` times
    its initial value and closes when it first reaches ``stop_fraction`` of
    the carrier amplitude (or at the end of the series when ``carrier`` is
    None). A missing window is reported with ``found=False``.
    """
    t = np.asarray(times, dtype=float)
    a = np.asarray(amplitudes, dtype=float)
    if t.size < 3 or a[0] <= 0:
        return GrowthFit(NAN, NAN, NAN, 0, False, "series too short")
    above = np.nonzero(a >= start_factor * a[0])[0]
    if above.size == 0:
        return GrowthFit(NAN, NAN, NAN, 0, False, "sideband never grew by the start factor")
    i0 = int(above[0])
    if carrier is None:
        i1 = t.size - 1
    else:
        c = np.broadcast_to(np.asarray(carrier, dtype=float), a.shape)
        stop = np.nonzero((a >= stop_fraction * c) & (np.arange(a.size) >= i0))[0]
        if stop.size == 0:
            return GrowthFit(NAN, t[i0], NAN, 0, False, "sideband never reached the carrier fraction")
        i1 = int(stop[0])
    if i1 - i0 + 1 < 3:
        return GrowthFit(NAN, t[i0], t[i1], i1 - i0 + 1, False, "window holds fewer than three samples")
    slope = np.polyfit(t[i0 : i1 + 1], np.log(a[i0 : i1 + 1]), 1)[0]
    return GrowthFit(float(slope), float(t[i0]), float(t[i1]), i1 - i0 + 1, True)


# ------------------------------------------------------------------ helpers
def initial_envelope(cfg: ScenarioConfig, grid) -> np.ndarray:
    return modulated_envelope(cfg.amplitude_B0, cfg.lambda_pert, grid, cfg.perturbation)


def reconstruct_eta(u, grid, params, mode: str, ds: float, flow: Optional[NormalFormFlow] = None) -> np.ndarray:
    """Surface elevation from an envelope, by full or partial reconstruction."""
    if mode == "partial":
        return partial_reconstruct(u, grid, params).eta
    return envelope_to_surface(u, grid, params, ds, flow).eta


def initial_surface(cfg: ScenarioConfig, grid, flow=None) -> SurfaceState:
    """Full reconstruction of the modulated envelope, mapped to ``(eta, xi)``."""
    params = cfg.params()
    cstate = envelope_to_surface(initial_envelope(cfg, grid), grid, params, cfg.dt, flow)
    return zeta_to_xi(cstate, params)


def _context(cfg, exc: NumericError, solver: str) -> NumericError:
    err = NumericError(f"{solver} solver failed in scenario gamma={cfg.gamma:g}, k0={cfg.k0:g}: {exc}")
    err.step, err.time = exc.step, exc.time
    return err


def _snapshot_steps(cfg: ScenarioConfig) -> dict:
    return {int(round(t / cfg.dt)): t for t in cfg.snapshot_times if 0 <= t <= cfg.t_end}


def _finish(result: RunResult, out, stem: str) -> RunResult:
    if out is not None:
        out = Path(out)
        result.files.append(write_config(result.config, out / f"{stem}_config.txt"))
        result.files.append(write_series(out / f"{stem}_series.csv", result.records))
    return result


Progress = Optional[Callable[[str, float], None]]


# ------------------------------------------------------------------ scenarios
def run_dysthe(cfg: ScenarioConfig, out=None, progress: Progress = None, keep_fields: bool = False) -> RunResult:
    """March the envelope equation, log action/Hamiltonian and fit the sideband growth.

    With ``keep_fields`` the sampled Fourier coefficients are kept in
    ``result.extra["u_hat"]`` keyed by step index.
    """
    grid, params = cfg.grid(), cfg.params()
    coeffs = compute_coefficients(params)
    solver = EnvelopeSolver(grid, params, coeffs, cfg.variant, zero_mode_correction=cfg.zero_mode_correction)
    u0 = initial_envelope(cfg, grid)
    res = RunResult(cfg)
    snaps = _snapshot_steps(cfg)
    lam = cfg.lambda_pert
    times, side, carrier = [], [], []
    kept = res.extra.setdefault("u_hat", {}) if keep_fields else None

    def record(step, t, uh):
        u = sfft.ifft(uh, norm="forward")
        if kept is not None:
            kept[step] = uh.copy()
        amp = sideband_amplitude(uh, lam)
        times.append(t)
        side.append(amp)
        carrier.append(abs(uh[0]))
        res.records.append(
            DiagnosticsRecord(t, H_reduced=solver.hamiltonian(u), M_action=action(u, grid), sideband_amplitudes=(amp,))
        )
        if step in snaps and out is not None:
            res.files.append(write_envelope_snapshot(Path(out) / f"envelope_t{snaps[step]:g}.csv", grid.x, u))
        if progress is not None:
            progress("dysthe", t)

    try:
        u = _march_with_snapshots(solver.run, u0, cfg, record, snaps)
    except NumericError as exc:
        raise _context(cfg, exc, "envelope") from exc
    res.final_envelope = u
    res.growth = measure_growth(times, side, carrier)
    return _finish(res, out, "dysthe")


def _march_with_snapshots(run, x0, cfg, record, snaps):
    # Records every output interval, at every snapshot step and at the end.
    every, n_total = cfg.sample_every, cfg.n_steps

    def cb(step, t, *fields):
        if step % every == 0 or step in snaps or step == n_total:
            record(step, step * cfg.dt, *fields)

    return run(x0, cfg.dt, n_total, sample_every=1, callback=cb)


def run_full(cfg: ScenarioConfig, out=None, progress: Progress = None) -> RunResult:
    """March the full Euler system from the fully reconstructed initial surface."""
    grid, params = cfg.grid(), cfg.params()
    solver = EulerSolver(grid, params, cfg.dno_order)
    state0 = initial_surface(cfg, grid)
    res = RunResult(cfg)
    snaps = _snapshot_steps(cfg)

    def record(step, t, eh, xh):
        st = SurfaceState(grid, grid.to_physical(eh), grid.to_physical(xh), t)
        res.records.append(
            DiagnosticsRecord(
                t,
                H_full=solver.energy(st),
                I_momentum=solver.momentum(st),
                max_eta=float(np.max(st.eta)),
            )
        )
        if step in snaps and out is not None:
            res.files.append(write_surface_snapshot(Path(out) / f"surface_t{snaps[step]:g}.csv", grid.x, st.eta, st.xi))
        if progress is not None:
            progress("full", t)

    try:
        res.final_surface = _march_with_snapshots(solver.run, state0, cfg, record, snaps)
    except NumericError as exc:
        raise _context(cfg, exc, "full") from exc
    return _finish(res, out, "full")


def run_compare(cfg: ScenarioConfig, out=None, progress: Progress = None) -> RunResult:
    """Run the full solver and the envelope model side by side.

    Both start from the same modulated envelope: the full solver from its
    full reconstruction, the envelope solver from ``u`` itself. At each
    output time the envelope is reconstructed (``cfg.reconstruction``) and
    the relative L2 distance to the full-solver elevation is logged.
    """
    grid, params = cfg.grid(), cfg.params()
    flow = NormalFormFlow(grid, params)
    env = run_dysthe(cfg, progress=progress, keep_fields=True)
    env_by_step = {int(round(r.time / cfg.dt)): r for r in env.records}
    u_hist = env.extra.pop("u_hat")

    solver = EulerSolver(grid, params, cfg.dno_order)
    state0 = zeta_to_xi(envelope_to_surface(initial_envelope(cfg, grid), grid, params, cfg.dt, flow), params)
    res = RunResult(cfg)
    snaps = _snapshot_steps(cfg)

    def record(step, t, eh, xh):
        st = SurfaceState(grid, grid.to_physical(eh), grid.to_physical(xh), t)
        u = sfft.ifft(u_hist[step], norm="forward")
        eta_w = reconstruct_eta(u, grid, params, cfg.reconstruction, cfg.dt, flow)
        er = env_by_step[step]
        res.records.append(
            DiagnosticsRecord(
                t,
                l2_rel_err=l2_rel_err(grid, st.eta, eta_w),
                H_full=solver.energy(st),
                H_reduced=er.H_reduced,
                I_momentum=solver.momentum(st),
                M_action=er.M_action,
                max_eta=float(np.max(st.eta)),
                sideband_amplitudes=er.sideband_amplitudes,
            )
        )
        if step in snaps and out is not None:
            o = Path(out)
            res.files.append(write_surface_snapshot(o / f"surface_t{snaps[step]:g}.csv", grid.x, st.eta, st.xi))
            res.files.append(write_envelope_snapshot(o / f"envelope_t{snaps[step]:g}.csv", grid.x, u))
        if progress is not None:
            progress("compare", t)

    try:
        res.final_surface = _march_with_snapshots(solver.run, state0, cfg, record, snaps)
    except NumericError as exc:
        raise _context(cfg, exc, "full") from exc
    res.final_envelope = env.final_envelope
    res.growth = env.growth
    return _finish(res, out, "compare")


def stability_rows(cfg: ScenarioConfig) -> list:
    """``(gamma, lambda, Gamma, sigma/omega0)`` over the configured sweep."""
    lam = np.arange(1, int(round(cfg.lambda_max / cfg.lambda_step)) + 1) * cfg.lambda_step
    rows = []
    B0 = cfg.amplitude_B0
    for gam in cfg.gamma_values:
        p = cfg.with_updates(gamma=float(gam)).params()
        gr = bf_growth_rate(lam, B0, p)
        rows.extend(zip([float(gam)] * lam.size, lam, gr.Gamma, gr.sigma_over_omega0))
    return rows


def run_stability_map(cfg: ScenarioConfig, out=None) -> RunResult:
    """Sweep ``(gamma, lambda)`` through the growth-rate formula."""
    res = RunResult(cfg)
    rows = stability_rows(cfg)
    res.extra["rows"] = rows
    if out is not None:
        res.files.append(write_config(cfg, Path(out) / "stability_config.txt"))
        res.files.append(write_stability_map(Path(out) / "stability_map.csv", rows))
    return res


def reconstruct_check(cfg: ScenarioConfig, out=None) -> RunResult:
    """Round trip envelope -> surface -> envelope and full-vs-partial difference."""
    grid, params = cfg.grid(), cfg.params()
    flow = NormalFormFlow(grid, params)
    u = initial_envelope(cfg, grid)
    full = envelope_to_surface(u, grid, params, cfg.dt, flow)
    part = partial_reconstruct(u, grid, params)
    back = surface_to_envelope(full, params, cfg.dt, flow)
    k0 = int(round(cfg.k0))
    ch = grid.to_spectral(full.eta)
    res = RunResult(cfg)
    res.extra.update(
        roundtrip_max_err=float(np.max(np.abs(back - u))),
        full_minus_partial_l2=l2_rel_err(grid, full.eta, part.eta),
        first_harmonic=float(2 * abs(ch[k0])),
        second_harmonic=float(2 * abs(ch[2 * k0])) if 2 * k0 < grid.nyquist else NAN,
        A0=cfg.amplitude_A0,
    )
    if out is not None:
        o = Path(out)
        res.files.append(write_config(cfg, o / "reconstruct_config.txt"))
        res.files.append(write_surface_snapshot(o / "surface_full.csv", grid.x, full.eta, zeta_to_xi(full, params).xi))
        res.files.append(write_surface_snapshot(o / "surface_partial.csv", grid.x, part.eta, zeta_to_xi(part, params).xi))
        res.files.append(write_envelope_snapshot(o / "envelope_roundtrip.csv", grid.x, back))
    return res


def energy_check(cfg: ScenarioConfig, out=None, progress: Progress = None) -> RunResult:
    """Conservation of the full solver at ``dt`` and ``dt/2`` and of the envelope solver."""
    res = RunResult(cfg)
    drifts = {}
    for label, c in (("dt", cfg), ("dt/2", cfg.with_updates(dt=cfg.dt / 2))):
        r = run_full(c, progress=progress)
        H = r.column("H_full")
        I = r.column("I_momentum")
        drifts[label] = (float(np.max(np.abs(H - H[0])) / abs(H[0])), float(np.max(np.abs(I - I[0])) / abs(I[0])))
        if label == "dt":
            res.records = r.records
    env = run_dysthe(cfg, progress=progress)
    M = env.column("M_action")
    Hr = env.column("H_reduced")
    res.extra.update(
        H_drift=drifts["dt"][0],
        I_drift=drifts["dt"][1],
        H_drift_half=drifts["dt/2"][0],
        I_drift_half=drifts["dt/2"][1],
        H_ratio=drifts["dt"][0] / drifts["dt/2"][0] if drifts["dt/2"][0] > 0 else math.inf,
        M_drift=float(np.max(np.abs(M - M[0])) / M[0]),
        H_reduced_drift=float(np.max(np.abs(Hr - Hr[0])) / abs(Hr[0])),
    )
    return _finish(res, out, "energy")


def run_scenario(cfg: ScenarioConfig, out=None, progress: Progress = None) -> RunResult:
    """Dispatch on ``cfg.kind``."""
    kind = cfg.kind
    if kind == "full":
        return run_full(cfg, out, progress)
    if kind == "dysthe":
        return run_dysthe(cfg, out, progress)
    if kind == "compare":
        return run_compare(cfg, out, progress)
    if kind == "stability-map":
        return run_stability_map(cfg, out)
    if kind == "reconstruct-check":
        return reconstruct_check(cfg, out)
    return energy_check(cfg, out, progress)
