import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shearwaves import SpectralGrid
from shearwaves.errors import ConfigurationError
from shearwaves.harness import (
    DiagnosticsRecord,
    energy_check,
    l2_rel_err,
    load_config,
    measure_growth,
    reconstruct_check,
    run_compare,
    run_dysthe,
    run_full,
    run_scenario,
    run_stability_map,
)
from shearwaves.harness.config import ScenarioConfig, config_to_text, parse_config_text, write_config
from shearwaves.harness.io import (
    SERIES_COLUMNS,
    read_envelope_snapshot,
    read_series,
    read_stability_map,
    read_surface_snapshot,
    write_envelope_snapshot,
    write_series,
    write_surface_snapshot,
)


def small(**kw):
    base = dict(gamma=-1.0, k0=4.0, B0=0.01, n_nodes=32, dt=0.02, t_end=1.0, output_interval=0.2)
    base.update(kw)
    return ScenarioConfig(**base)


# ------------------------------------------------------------------ config
def test_config_round_trip(tmp_path):
    cfg = small(snapshot_times=(0.4, 1.0), zero_mode_correction=True, variant="moving-frame")
    path = write_config(cfg, tmp_path / "c.txt")
    assert load_config(path) == cfg
    assert config_to_text(load_config(path)) == config_to_text(cfg)


def test_missing_required_key_is_named():
    with pytest.raises(ConfigurationError) as ei:
        parse_config_text("gamma = 1\nB0 = 0.002\n")
    assert ei.value.key == "k0"


def test_missing_amplitude_is_reported():
    with pytest.raises(ConfigurationError) as ei:
        parse_config_text("gamma = 1\nk0 = 10\n")
    assert ei.value.key == "B0"


def test_amplitude_rule():
    with pytest.raises(ConfigurationError):
        ScenarioConfig(gamma=0.0, k0=10.0)
    with pytest.raises(ConfigurationError):
        ScenarioConfig(gamma=0.0, k0=10.0, A0=0.005, B0=0.002)
    cfg = ScenarioConfig(gamma=0.0, k0=10.0, B0=0.002)
    assert cfg.amplitude_A0 == pytest.approx(5.030e-3, rel=1e-3)
    assert cfg.with_updates(A0=0.01).B0 is None


@pytest.mark.parametrize("text, value", [("true", True), ("On", True), ("1", True), ("no", False), ("0", False)])
def test_bool_parsing(text, value):
    d = parse_config_text(f"gamma = 0\nk0 = 10\nB0 = 0.002\nzero_mode_correction = {text}\n")
    assert d["zero_mode_correction"] is value


@pytest.mark.parametrize(
    "line, key",
    [
        ("zero_mode_correction = maybe", "zero_mode_correction"),
        ("n_nodes = 1.5", "n_nodes"),
        ("colour = red", "colour"),
        ("variant = wide", "variant"),
        ("dt = -1", "dt"),
        ("n_nodes = 30", None),
    ],
)
def test_bad_entries_raise(tmp_path, line, key):
    p = tmp_path / "c.txt"
    p.write_text(f"gamma = 0\nk0 = 10\nB0 = 0.002\n{line}\n")
    with pytest.raises(ConfigurationError) as ei:
        load_config(p)
    if key is not None:
        assert ei.value.key == key


def test_duplicate_key_rejected():
    with pytest.raises(ConfigurationError):
        parse_config_text("gamma = 0\ngamma = 1\nk0 = 10\nB0 = 0.002\n")


def test_unreadable_config(tmp_path):
    with pytest.raises(ConfigurationError):
        load_config(tmp_path / "missing.txt")


# ------------------------------------------------------------------ io
@given(st.lists(st.floats(allow_nan=False, allow_infinity=False, width=64), min_size=3, max_size=3))
def test_surface_snapshot_round_trip_is_bitwise(tmp_path_factory, vals):
    path = tmp_path_factory.mktemp("snap") / "s.csv"
    x = np.array(vals)
    write_surface_snapshot(path, x, -x, 2 * x)
    a, b, c = read_surface_snapshot(path)
    assert np.array_equal(a, x) and np.array_equal(b, -x) and np.array_equal(c, 2 * x)


def test_envelope_snapshot_round_trip(tmp_path, rng):
    x = np.linspace(0, 1, 8)
    u = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    write_envelope_snapshot(tmp_path / "u.csv", x, u)
    x2, u2 = read_envelope_snapshot(tmp_path / "u.csv")
    assert np.array_equal(x2, x) and np.array_equal(u2, u)


def test_series_header_and_round_trip(tmp_path):
    recs = [DiagnosticsRecord(0.0, 0.1, 1.0, 2.0, 3.0, 4.0, 5.0), DiagnosticsRecord(1.0)]
    path = write_series(tmp_path / "s.csv", recs)
    assert path.read_text().splitlines()[0] == ",".join(SERIES_COLUMNS)
    d = read_series(path)
    assert d["H_reduced"][0] == 2.0 and np.isnan(d["l2_rel_err"][1])


def test_wrong_header_rejected(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ConfigurationError):
        read_surface_snapshot(p)


# ------------------------------------------------------------------ metrics
def test_l2_of_identical_fields_is_zero():
    g = SpectralGrid(16)
    assert l2_rel_err(g, np.cos(g.x), np.cos(g.x)) == 0.0
    assert l2_rel_err(g, np.cos(g.x), np.zeros(16)) == pytest.approx(1.0, rel=1e-14)


def test_measure_growth_recovers_synthetic_rate():
    t = np.arange(0, 1000, 1.0)
    a = 1e-5 * np.exp(0.004 * t)
    fit = measure_growth(t, a, carrier=np.full(t.size, 1e-3))
    assert fit.found
    assert fit.rate == pytest.approx(0.004, rel=1e-10)
    assert a[t == fit.t_start][0] >= 3e-5


def test_measure_growth_reports_missing_window():
    t = np.arange(0, 100.0)
    fit = measure_growth(t, 1e-5 * np.exp(-0.01 * t), carrier=np.full(t.size, 1e-2))
    assert not fit.found and fit.reason


# ------------------------------------------------------------------ scenarios
def test_stability_map_rows(tmp_path):
    cfg = small(kind="stability-map", gamma_values=(0.0, 4.0), B0=0.002, k0=10.0, lambda_max=2.0, lambda_step=0.5)
    res = run_stability_map(cfg, tmp_path)
    d = read_stability_map(tmp_path / "stability_map.csv")
    assert len(res.extra["rows"]) == 8
    assert list(d["lambda"][:4]) == [0.5, 1.0, 1.5, 2.0]
    assert np.all(d["Gamma"][d["gamma"] == 4.0] < 0)
    assert d["sigma_over_omega0"][(d["gamma"] == 0.0) & (d["lambda"] == 1.0)][0] > 0


def test_dysthe_run_conserves_action(tmp_path):
    res = run_dysthe(small(kind="dysthe", snapshot_times=(0.5,)), tmp_path)
    M = res.column("M_action")
    assert np.max(np.abs(M - M[0])) / M[0] < 1e-12
    assert res.records[-1].time == pytest.approx(1.0)
    assert (tmp_path / "envelope_t0.5.csv").exists()


def test_full_run_is_deterministic(tmp_path):
    cfg = small(kind="full", snapshot_times=(1.0,))
    run_full(cfg, tmp_path / "a")
    run_full(cfg, tmp_path / "b")
    for name in ("full_series.csv", "surface_t1.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_compare_starts_in_agreement(tmp_path):
    res = run_compare(small(), tmp_path)
    err = res.column("l2_rel_err")
    assert err[0] < 1e-12
    assert np.all(np.isfinite(err)) and err[-1] < 0.05
    assert (tmp_path / "compare_series.csv").exists()


def test_compare_partial_reconstruction_differs_at_start():
    res = run_compare(small(reconstruction="partial", t_end=0.2))
    assert res.column("l2_rel_err")[0] > 1e-4


def test_rest_like_snapshot_zero_perturbation(tmp_path):
    res = run_dysthe(small(kind="dysthe", perturbation=0.0, t_end=0.4))
    amps = [r.sideband_amplitudes[0] for r in res.records]
    assert max(amps) < 1e-15
    assert not res.growth.found


def test_reconstruct_check(tmp_path):
    res = reconstruct_check(small(kind="reconstruct-check", B0=0.002), tmp_path)
    assert res.extra["roundtrip_max_err"] < 1e-12
    assert res.extra["first_harmonic"] == pytest.approx(res.extra["A0"], rel=0.2)
    assert (tmp_path / "surface_full.csv").exists()


def test_energy_check():
    res = energy_check(small(kind="energy-check", t_end=0.4, n_nodes=64))
    assert res.extra["H_drift"] < 1e-8
    assert res.extra["M_drift"] < 1e-12


def test_run_scenario_dispatch():
    cfg = small(kind="stability-map", lambda_max=1.0, lambda_step=0.5, gamma_values=(0.0,))
    assert len(run_scenario(cfg).extra["rows"]) == 2
