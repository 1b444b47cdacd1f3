import numpy as np
import pytest
import scipy.optimize
from hypothesis import given, settings
from hypothesis import strategies as st

from shearwaves import (
    CanonicalState,
    FlowState,
    NormalFormFlow,
    PhysicalParams,
    SpectralGrid,
    a0_from_b0,
    envelope_to_surface,
    functionals,
    k3_rhs,
    partial_reconstruct,
    surface_to_envelope,
)
from shearwaves.errors import UsageError
from shearwaves.normalform import (
    cohomological_residual,
    h3_spectral,
    k3_physical,
    random_lowmode_state,
)

GRID = SpectralGrid(64)
X = GRID.x
GAMMAS = [-2.0, -1.0, 0.0, 1.0, 2.0]


def P(gamma=0.0, k0=10):
    return PhysicalParams(g=1.0, gamma=gamma, k0=k0)


def _state(seed, amp=0.05):
    return random_lowmode_state(GRID, np.random.default_rng(seed), kmax=6, amp=amp)


def test_eta_flow_example():
    de, dz = k3_rhs(FlowState(GRID, np.cos(X), np.zeros(GRID.n)), P(0.0))
    assert np.allclose(de, -0.5 * np.cos(2 * X), atol=1e-14)
    assert np.allclose(dz, 0.0, atol=1e-14)


@pytest.mark.parametrize("gam", GAMMAS)
def test_rest_is_fixed(gam):
    de, dz = k3_rhs(FlowState(GRID, np.zeros(GRID.n), np.zeros(GRID.n)), P(gam))
    assert not de.any() and not dz.any()


@given(st.integers(0, 2**32 - 1), st.sampled_from(GAMMAS), st.floats(-3, 3).filter(lambda t: abs(t) > 0.1))
def test_rhs_is_quadratic(seed, gam, t):
    s = _state(seed)
    p = P(gam, k0=1)
    de, dz = k3_rhs(s, p)
    de2, dz2 = k3_rhs(FlowState(GRID, t * s.eta, t * s.zeta), p)
    assert np.allclose(de2, t**2 * de, atol=1e-13 * t**2 * np.max(np.abs(de)) + 1e-18)
    assert np.allclose(dz2, t**2 * dz, atol=1e-13 * t**2 * np.max(np.abs(dz)) + 1e-18)


@given(st.integers(0, 2**32 - 1), st.sampled_from(GAMMAS))
def test_transcribed_rhs_matches_generic_gradient(seed, gam):
    s = _state(seed)
    flow = NormalFormFlow(GRID, P(gam, k0=1))
    eh, zh = GRID.to_spectral(s.eta), GRID.to_spectral(s.zeta)
    a = flow.rhs_spectral(eh, zh)
    b = flow.rhs_generic(eh, zh)
    for x, y in zip(a, b):
        assert np.max(np.abs(x - y)) <= 1e-12 * max(np.max(np.abs(y)), 1e-300)


@pytest.mark.parametrize("gam", [-2.0, -1.0, 1.0, 2.0])
def test_k3_physical_matches_triad_sum(gam):
    for seed in range(4):
        f = functionals(_state(seed), P(gam, k0=1))
        assert f["K3_physical"] == pytest.approx(f["K3_spectral"], rel=1e-9)


@pytest.mark.parametrize("gam", GAMMAS)
def test_functionals_cross_checks(gam):
    f = functionals(_state(7), P(gam, k0=1))
    assert f["H2_diagonal"] == pytest.approx(f["H2"], rel=1e-11)
    assert f["H3_physical"] == pytest.approx(f["H3"], rel=1e-10)
    assert f["H3_z"] == pytest.approx(f["H3"], rel=1e-10)
    assert f["K3_z"] == pytest.approx(f["K3_spectral"], rel=1e-9)
    assert f["min_denominator"] > 0


def test_functionals_vanish_at_rest():
    rest = CanonicalState.rest(GRID)
    f = functionals(rest, P(-1.0))
    for key in ("H2", "H3", "K3_physical", "K3_spectral"):
        assert f[key] == 0.0


def test_functionals_refuse_large_grids():
    big = SpectralGrid(128)
    with pytest.raises(UsageError):
        functionals(CanonicalState.rest(big), P())


@given(st.integers(0, 2**32 - 1), st.sampled_from(GAMMAS))
def test_h3_is_odd(seed, gam):
    s = _state(seed)
    p = P(gam, k0=1)
    neg = FlowState(GRID, -s.eta, -s.zeta)
    assert h3_spectral(neg, p) == pytest.approx(-h3_spectral(s, p), rel=1e-12)


@pytest.mark.parametrize("gam", GAMMAS)
def test_cohomological_identity(gam):
    for seed in range(3):
        r = cohomological_residual(_state(seed), P(gam, k0=1), h=1e-4)
        assert r["rel"] <= 1e-6


@pytest.mark.parametrize("gam", [-2.0, 0.0, 2.0])
def test_k3_conserved_and_mean_free_along_flow(gam):
    p = P(gam, k0=1)
    # Amplitude kept small enough that the flow stays resolved on 64 nodes.
    s0 = _state(11, amp=0.025)
    flow = NormalFormFlow(GRID, p)
    k0 = k3_physical(s0, p)
    s = s0
    for _ in range(10):
        s = flow.integrate(s, s.s - 0.1, 0.005)
        assert abs(GRID.to_spectral(s.eta)[0]) < 1e-12
        assert abs(np.mean(s.zeta)) < 1e-12
    assert s.s == pytest.approx(-1.0)
    assert k3_physical(s, p) == pytest.approx(k0, rel=1e-8)


def _burgers_exact(f0, s, x):
    # Characteristics of v_s = -v v_x: v(x, s) = f0(x - s v).
    v = np.empty_like(x)
    for i, xi in enumerate(x):
        v[i] = scipy.optimize.brentq(lambda w: w - f0(xi - s * w), -1.0, 1.0, xtol=1e-15)
    return v


def test_burgers_reduction_at_zero_vorticity():
    amp = 0.3
    eta0 = amp * np.cos(X)  # H cos = sin, so eta-tilde starts as amp sin x
    zeta0 = 0.1 * np.cos(2 * X)
    flow = NormalFormFlow(GRID, P(0.0))
    out = flow.integrate(FlowState(GRID, eta0, zeta0, 0.0), 1.0, 0.002)
    et = GRID.apply_symbol(out.eta, "H")
    exact = _burgers_exact(lambda y: amp * np.sin(y), 1.0, X)
    assert np.max(np.abs(et - exact)) < 1e-9
    # zeta-tilde is carried along the same characteristics (up to its mean).
    zt = GRID.apply_symbol(out.zeta, "H")
    foot = X - 1.0 * exact
    carried = 0.1 * np.sin(2 * foot)
    assert np.max(np.abs((zt - zt.mean()) - (carried - carried.mean()))) < 1e-8


def test_flow_ds_must_be_positive():
    from shearwaves.errors import ConfigurationError

    with pytest.raises(ConfigurationError):
        NormalFormFlow(GRID, P()).integrate(_state(0), -1.0, 0.0)


def test_flow_blowup_raises():
    from shearwaves.errors import NumericError

    flow = NormalFormFlow(GRID, P(0.0), blowup_factor=1.5)
    with pytest.raises(NumericError):
        flow.integrate(FlowState(GRID, 2.0 * np.cos(X), np.zeros(GRID.n)), 3.0, 0.01)


def test_partial_reconstruction_of_uniform_envelope():
    p = P(-1.0)
    B0 = 0.002
    cs = partial_reconstruct(np.full(GRID.n, B0 + 0j), GRID, p)
    eh = GRID.to_spectral(cs.eta)
    assert 2 * abs(eh[p.k0]) == pytest.approx(a0_from_b0(B0, p), rel=1e-12)
    eh[p.k0] = 0.0
    assert np.max(np.abs(eh)) < 1e-16


def test_zero_envelope_maps_to_rest():
    cs = envelope_to_surface(np.zeros(GRID.n, complex), GRID, P(1.0), 0.05)
    assert not cs.eta.any() and not cs.zeta.any()
    u = surface_to_envelope(CanonicalState.rest(GRID), P(1.0), 0.05)
    assert not u.any()


@pytest.mark.parametrize("B0", [1e-3, 5e-4])
def test_bound_harmonic_matches_stokes(B0):
    p = P(0.0)
    cs = envelope_to_surface(np.full(GRID.n, B0 + 0j), GRID, p, 0.01)
    eh = GRID.to_spectral(cs.eta)
    A0 = 2 * abs(eh[p.k0])
    # Second-order Stokes wave: 1/2 k0 A0^2 cos(2 k0 x).
    assert 2 * eh[2 * p.k0].real == pytest.approx(0.5 * p.k0 * A0**2, rel=10 * p.k0 * A0)


@pytest.mark.parametrize("gam", [-2.0, 0.0, 2.0])
def test_bound_harmonic_differs_from_partial_at_second_order(gam):
    p = P(gam)
    diffs = []
    for B0 in (1e-3, 5e-4):
        u = np.full(GRID.n, B0 + 0j)
        full = envelope_to_surface(u, GRID, p, 0.01)
        part = partial_reconstruct(u, GRID, p)
        diffs.append(np.max(np.abs(full.eta - part.eta)))
    assert diffs[0] / diffs[1] == pytest.approx(4.0, rel=0.05)


@pytest.mark.parametrize("gam", [-2.0, 2.0])
def test_round_trip(gam):
    p = P(gam)
    rng = np.random.default_rng(3)
    u = 0.002 * (1 + 0.1 * np.cos(X)) + 2e-4 * rng.standard_normal() * np.exp(2j * X)
    cs = envelope_to_surface(u, GRID, p, 0.01)
    back = surface_to_envelope(cs, p, 0.01)
    assert np.max(np.abs(back - u)) < 1e-10 * np.max(np.abs(u))
