import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shearwaves import (
    Omega,
    PhysicalParams,
    a,
    a0_from_b0,
    b0_from_a0,
    bf_growth_rate,
    compute_coefficients,
    omega,
    quartic_kernels,
    steepness,
)
from shearwaves.coeffs import A_kernel, S_kernel, zero_mode_shift
from shearwaves.errors import ConfigurationError, DomainError


def P(gamma=0.0, k0=10, g=1.0):
    return PhysicalParams(g=g, gamma=gamma, k0=k0)


def test_dispersion_gamma_zero():
    p = P()
    assert omega(10, p) == pytest.approx(math.sqrt(10), rel=1e-15)
    assert Omega(10, p) == pytest.approx(math.sqrt(10), rel=1e-15)


def test_dispersion_gamma_minus_two():
    p = P(-2.0)
    assert omega(10, p) == pytest.approx(3.31662479, rel=1e-8)
    assert Omega(10, p) == pytest.approx(2.31662479, rel=1e-8)


@pytest.mark.parametrize("gam", [-2.0, 0.5, 3.0])
def test_omega_negative_k_flips_sign_only(gam):
    p = P(gam)
    assert Omega(-7, p) == pytest.approx(-gam / 2 + omega(7, p), rel=1e-15)


def test_a_at_zero_is_domain_error():
    with pytest.raises(DomainError):
        a(0, P())


def test_params_validation():
    with pytest.raises(ConfigurationError):
        PhysicalParams(g=-1.0, gamma=0.0, k0=10)
    with pytest.raises(ConfigurationError):
        PhysicalParams(g=1.0, gamma=0.0, k0=0)


def test_coefficients_irrotational_limits():
    c = compute_coefficients(P())
    assert c.beta0 == pytest.approx(1000.0, rel=1e-12)
    assert c.beta3 == pytest.approx(100.0, rel=1e-12)


def test_beta0_gamma_minus_two():
    assert compute_coefficients(P(-2.0)).beta0 == pytest.approx(1.9236272e3, rel=1e-7)


def test_beta_assembly_from_ladder():
    for gam in (-2.0, 0.0, 1.5):
        c = compute_coefficients(P(gam))
        again = 8 * math.pi * (c.c0r - 0.5 * (c.c1r + c.c2r + c.c3r1))
        assert c.beta == again


@pytest.mark.parametrize("gam", [-3.0, -2.0, -1.0, -0.3, 0.0, 0.7, 1.0, 2.0, 3.0])
@pytest.mark.parametrize("k0", [3, 10, 25])
def test_leading_order_assembly(gam, k0):
    p = P(gam, k0)
    c = compute_coefficients(p)
    w0, W0 = p.omega0, p.Omega0
    lhs = c.c0l - 0.5 * (c.c1l + c.c2l + c.c3l)
    rhs = k0**3 * (w0 - gam) * (gam**2 + 4 * w0**2) / (8 * math.pi * w0 * W0 * (2 * w0 - gam))
    assert lhs == pytest.approx(rhs, rel=1e-10)
    assert 4 * math.pi * lhs == pytest.approx(c.beta0, rel=1e-10)


def test_group_velocity_and_dispersion():
    p = P(-2.0)
    c = compute_coefficients(p)
    h = 1e-4
    d1 = (Omega(10 + h, p) - Omega(10 - h, p)) / (2 * h)
    d2 = (Omega(10 + h, p) - 2 * Omega(10, p) + Omega(10 - h, p)) / h**2
    assert c.cg == pytest.approx(d1, rel=1e-8)
    assert -2 * c.disp2 == pytest.approx(d2, rel=1e-5)


def test_amplitude_relation():
    p = P()
    assert a0_from_b0(0.002, p) == pytest.approx(5.030e-3, rel=1e-3)
    assert a0_from_b0(0.0, p) == 0.0
    assert b0_from_a0(a0_from_b0(0.002, p), p) == pytest.approx(0.002, rel=1e-15)
    assert steepness(0.002, p) == pytest.approx(0.0503, abs=1e-4)


def test_growth_rate_irrotational_example():
    gr = bf_growth_rate(1.0, 0.002, P())
    assert gr.Gamma == pytest.approx(4.01e-3, rel=2e-3)
    assert gr.sigma == pytest.approx(3.98e-3, rel=2e-3)
    assert gr.unstable


def test_growth_rate_marginal_at_zero():
    gr = bf_growth_rate(0.0, 0.002, P())
    assert gr.alpha == 0.0 and gr.sigma == 0.0 and not gr.unstable


def test_growth_rate_stable_for_strong_positive_vorticity():
    lam = np.arange(1, 2001) * 0.01
    gr = bf_growth_rate(lam, 0.002, P(4.0))
    assert np.all(gr.Gamma <= 0) and np.all(gr.sigma == 0)


def test_growth_rate_rejects_nonpositive_amplitude():
    with pytest.raises(ConfigurationError):
        bf_growth_rate(1.0, 0.0, P())


def test_zero_mode_shift():
    assert zero_mode_shift(P(0.0)) == 0.0
    p = P(-2.0)
    c = compute_coefficients(p)
    assert zero_mode_shift(p) == pytest.approx(2 * math.pi * c.c3l, rel=1e-14)


ks = st.integers(-30, 30).filter(lambda k: k != 0)


@given(ks, ks, ks, st.floats(-3, 3))
def test_S_symmetry(k1, k2, k3, gam):
    p = P(gam)
    assert S_kernel(k1, k2, k3, p) == pytest.approx(S_kernel(k3, k2, k1, p), rel=1e-13, abs=1e-13)


@given(st.integers(1, 30), st.integers(1, 30), ks, st.floats(-3, 3))
def test_S_vanishes_for_opposite_signs(k1, k3, k2, gam):
    assert S_kernel(k1, k2, -k3, P(gam)) == 0.0


@given(ks, ks)
def test_sign_identity_on_triads(k1, k2):
    k3 = -(k1 + k2)
    if k3 == 0:
        return
    s1, s2, s3 = np.sign([k1, k2, k3])
    assert s1 * s2 + s1 * s3 + s2 * s3 == -1


def test_A_kernel_normalisation():
    p = P(-1.0)
    k = (3.0, -5.0, 2.0)
    expected = (S_kernel(*k, p) + S_kernel(k[2], k[0], k[1], p) - S_kernel(k[1], k[2], k[0], p)) / (8 * math.sqrt(math.pi))
    assert A_kernel(*k, p) == pytest.approx(expected, rel=1e-15)


def test_quartic_kernel_keys_and_sum():
    q = quartic_kernels(10.0, 11.0, 10.5, 10.5, P(-2.0))
    for key in ("S", "A", "D1", "D2", "D3", "T1_1", "T1_2", "T1_3", "T1", "T2_1", "T2_2", "T2_3", "T2", "T"):
        assert key in q
    assert q["T"] == pytest.approx(q["T1"] - 0.5 * q["T2"], rel=1e-14)
    assert q["T1"] == pytest.approx(q["T1_1"] + q["T1_2"] + q["T1_3"], rel=1e-14)


def test_resonant_denominator_raises():
    with pytest.raises(DomainError):
        quartic_kernels(10.0, 11.0, 10.0, 11.0, P(-2.0))


QUARTETS = [(0.3, -0.7, 1.1, -1.5), (1.0, 2.0, 0.5, 2.5), (-0.4, 0.9, 0.2, 0.3)]


@pytest.mark.parametrize("gam", [-2.0, -1.0, 0.0, 1.0, 2.0])
@pytest.mark.parametrize("lam", QUARTETS)
def test_expansion_residuals_are_second_order(gam, lam):
    from shearwaves.coeffs import expansion_residuals

    p = P(gam)
    res = [expansion_residuals(lam, eps, p) for eps in (1e-2, 1e-3, 1e-4)]
    for key in res[0]:
        r = [abs(x[key]) for x in res]
        for hi, lo in zip(r[:-1], r[1:]):
            assert np.log10(hi / lo) >= 1.6


def test_expansion_residuals_reject_bad_quartet():
    from shearwaves.coeffs import expansion_residuals

    with pytest.raises(ConfigurationError):
        expansion_residuals((1.0, 1.0, 1.0, 0.0), 1e-3, P())
