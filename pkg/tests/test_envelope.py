import numpy as np
import pytest
import scipy.fft as sfft
from hypothesis import given
from hypothesis import strategies as st

from shearwaves import (
    DnoExpansion,
    EnvelopeSolver,
    PhysicalParams,
    SpectralGrid,
    compute_coefficients,
    energy_full,
    reduced_hamiltonian,
    stokes_envelope,
    zeta_to_xi,
)
from shearwaves.coeffs import zero_mode_shift
from shearwaves.envelope import VARIANTS, action, modulated_envelope, sideband_amplitude
from shearwaves.errors import ConfigurationError
from shearwaves.normalform import envelope_to_surface

GRID = SpectralGrid(64)
X = GRID.x


def P(gamma=0.0):
    return PhysicalParams(g=1.0, gamma=gamma, k0=10)


def _random_envelope(rng, B0=0.002, kmax=4):
    u = np.full(GRID.n, B0, complex)
    for k in range(1, kmax + 1):
        u += 0.1 * B0 * (rng.standard_normal() + 1j * rng.standard_normal()) * np.exp(1j * k * X)
        u += 0.1 * B0 * (rng.standard_normal() + 1j * rng.standard_normal()) * np.exp(-1j * k * X)
    return u


def test_unknown_variant_rejected():
    with pytest.raises(ConfigurationError):
        EnvelopeSolver(GRID, P(), variant="bogus")


@pytest.mark.parametrize("variant", VARIANTS)
@pytest.mark.parametrize("gam", [-2.0, 0.0, 1.0])
def test_stokes_solution_preserved(variant, gam):
    p = P(gam)
    sol = EnvelopeSolver(GRID, p, variant=variant)
    u0 = stokes_envelope(0.002, 0.0, GRID, p, variant=variant)
    out = sol.run(u0, 0.05, 200)
    ref = stokes_envelope(0.002, 10.0, GRID, p, variant=variant)
    assert np.max(np.abs(out - ref)) < 1e-12


@pytest.mark.parametrize("gam", [-2.0, 1.0])
def test_corrected_stokes_solution_preserved(gam):
    p = P(gam)
    sol = EnvelopeSolver(GRID, p, zero_mode_correction=True)
    out = sol.run(stokes_envelope(0.002, 0.0, GRID, p), 0.05, 200)
    ref = stokes_envelope(0.002, 10.0, GRID, p, zero_mode_correction=True)
    assert np.max(np.abs(out - ref)) < 1e-12


def test_phase_invariance(rng):
    p = P(-1.0)
    sol = EnvelopeSolver(GRID, p)
    u0 = _random_envelope(rng)
    th = np.exp(0.7j)
    a = sol.run(th * u0, 0.05, 100)
    b = th * sol.run(u0, 0.05, 100)
    assert np.max(np.abs(a - b)) < 1e-14


@pytest.mark.parametrize("variant", VARIANTS)
@pytest.mark.parametrize("corr", [False, True])
def test_rhs_is_hamiltonian_gradient(variant, corr, rng):
    p = P(-2.0)
    sol = EnvelopeSolver(GRID, p, variant=variant, zero_mode_correction=corr)
    u = _random_envelope(rng)
    v = _random_envelope(rng, B0=1.0)
    h = 1e-7 * 0.002
    dH = (sol.hamiltonian(u + h * v) - sol.hamiltonian(u - h * v)) / (2 * h)
    pred = 2.0 * GRID.integrate(np.real(np.conj(v) * sol.dysthe_rhs(u)))
    assert dH == pytest.approx(pred, rel=1e-6)


@pytest.mark.parametrize("gam", [-2.0, 0.0, 2.0])
def test_action_and_hamiltonian_conserved(gam, rng):
    p = P(gam)
    sol = EnvelopeSolver(GRID, p)
    u0 = modulated_envelope(0.002, 1.0, GRID, 0.1)
    out = sol.run(u0, 0.05, 2000)
    assert sol.action(out) == pytest.approx(sol.action(u0), rel=1e-11)
    assert sol.hamiltonian(out) == pytest.approx(sol.hamiltonian(u0), rel=1e-10)


def test_time_step_convergence_is_fourth_order():
    p = P(-2.0)
    grid = SpectralGrid(32)
    u0 = 0.02 * (1 + 0.3 * np.cos(grid.x)) + 0j
    T = 5.0
    ref = EnvelopeSolver(grid, p).run(u0, T / 800, 800)
    errs = [np.max(np.abs(EnvelopeSolver(grid, p).run(u0, T / n, n) - ref)) for n in (50, 100, 200)]
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(orders > 3.5)


def test_action_value():
    assert action(np.full(GRID.n, 0.5 + 0j), GRID) == pytest.approx(0.5 * np.pi, rel=1e-14)


def test_sideband_amplitude():
    u = 0.002 + 3e-4 * np.exp(1j * X) + 4e-4 * np.exp(-1j * X)
    uh = sfft.fft(u, norm="forward")
    assert sideband_amplitude(uh, 1) == pytest.approx(5e-4, rel=1e-12)


def test_stokes_rejects_nonpositive_amplitude():
    with pytest.raises(ConfigurationError):
        stokes_envelope(0.0, 0.0, GRID, P())


@given(st.floats(-3, 3))
def test_reduced_hamiltonian_of_uniform_state(gam):
    p = P(gam)
    c = compute_coefficients(p)
    B = 0.002
    u = np.full(GRID.n, B + 0j)
    H = reduced_hamiltonian(u, GRID, p, c)
    expected = 2 * np.pi * (c.Omega0 * B**2 + 0.5 * c.beta0 * B**4)
    assert H == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("gam", [-2.0, 2.0])
def test_zero_mode_shift_matches_full_energy(gam):
    # Independent route: full-system energy of the normal-form preimage of a
    # uniform envelope is a B^2 + c B^4 with carrier shift 2 c Omega0 / a.
    grid = SpectralGrid(128)
    p = P(gam)
    c = compute_coefficients(p)
    dno = DnoExpansion(grid, 6)
    Bs = np.array([2e-4, 4e-4, 6e-4, 8e-4, 1e-3])
    E = []
    for B in Bs:
        cs = envelope_to_surface(np.full(grid.n, B, complex), grid, p, 0.002)
        E.append(energy_full(zeta_to_xi(cs, p), p, dno))
    A = np.vstack([Bs**2, Bs**4, Bs**6]).T
    a2, a4, _ = np.linalg.lstsq(A, np.array(E), rcond=None)[0]
    beta_eff = 2 * a4 / a2 * c.Omega0
    assert beta_eff - c.beta0 == pytest.approx(zero_mode_shift(p), rel=0.02)
