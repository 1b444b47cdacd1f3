"""Hamiltonian Dysthe envelope equation with constant vorticity.

The envelope ``u(x, t)`` lives on the same periodic grid as the surface, with
the small parameter absorbed into ``u`` and ``x``. The fixed-frame equation is

    i u_t = L(D) u + beta0 |u|^2 u - i beta |u|^2 u_x - beta3 u |D| |u|^2

where ``L`` is one of

* ``narrowband``: ``Omega0 + cg l - disp2 l^2 + disp3 l^3`` (Taylor expansion
  of the dispersion relation about ``k0``),
* ``full-dispersion``: ``Omega(k0 + l)``,
* ``moving-frame``: ``-disp2 l^2 + disp3 l^3`` (frame moving at the group
  velocity, carrier phase removed).

Time stepping uses the exact exponential of ``-i L`` and RK4 in the
integrating-factor (Lawson) form for the cubic terms.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np
from scipy import fft as sfft

from .coeffs import ModelCoefficients, Omega, PhysicalParams, compute_coefficients, zero_mode_shift
from .errors import ConfigurationError, NumericError
from .spectral import SpectralGrid

VARIANTS = ("narrowband", "full-dispersion", "moving-frame")


def _check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise ConfigurationError(f"unknown envelope variant {variant!r}; expected one of {VARIANTS}", key="variant")
    return variant


def linear_symbol(grid: SpectralGrid, params: PhysicalParams, coeffs: ModelCoefficients, variant: str = "narrowband"):
    """Dispersion symbol ``L(l)`` on the full FFT wavenumbers (Nyquist zeroed)."""
    _check_variant(variant)
    lam = grid.k
    c = coeffs
    if variant == "narrowband":
        L = c.Omega0 + c.cg * lam - c.disp2 * lam**2 + c.disp3 * lam**3
    elif variant == "full-dispersion":
        L = Omega(params.k0 + lam, params)
    else:
        L = -c.disp2 * lam**2 + c.disp3 * lam**3
    L = np.asarray(L, dtype=float).copy()
    L[grid.nyquist] = 0.0
    return L


class EnvelopeSolver:
    """Integrating-factor RK4 solver for the Hamiltonian Dysthe equation.

    Parameters
    ----------
    grid : SpectralGrid
    params : PhysicalParams
    coeffs : ModelCoefficients, optional
        Computed from ``params`` when omitted.
    variant : str
        ``narrowband`` (default), ``full-dispersion`` or ``moving-frame``.
    blowup_factor : float
        Abort when ``max|u|`` exceeds this multiple of its initial value.
    zero_mode_correction : bool
        Add ``C <|u|^2> u`` with ``C`` from :func:`zero_mode_shift`, the
        carrier self-interaction the periodic full equations carry beyond
        ``beta0``. It only rotates the global phase (``<|u|^2>`` is
        conserved). Off by default.
    """

    def __init__(
        self,
        grid: SpectralGrid,
        params: PhysicalParams,
        coeffs: Optional[ModelCoefficients] = None,
        variant: str = "narrowband",
        blowup_factor: float = 10.0,
        zero_mode_correction: bool = False,
    ):
        self.grid = grid
        self.params = params
        self.coeffs = coeffs if coeffs is not None else compute_coefficients(params)
        self.variant = _check_variant(variant)
        self.blowup_factor = blowup_factor
        self.zero_mode_correction = bool(zero_mode_correction)
        self.shift = zero_mode_shift(params) if zero_mode_correction else 0.0
        self.L = linear_symbol(grid, params, self.coeffs, variant)
        k = grid.k.copy()
        k[grid.nyquist] = 0.0
        self._ik = 1j * k
        self._absk = np.abs(k)
        self._props: dict = {}

    # ------------------------------------------------------------------ rhs
    def cubic_spectral(self, u_hat: np.ndarray) -> np.ndarray:
        """Fourier coefficients of ``beta0|u|^2 u - i beta|u|^2 u_x - beta3 u|D||u|^2``.

        Every binary product is alias-free on the 3/2 grid.
        """
        grid, c = self.grid, self.coeffs
        up = grid.pad_complex(u_hat)
        rho_hat = grid.unpad_complex(up * np.conj(up))
        rhop = grid.pad_complex(rho_hat)
        uxp = grid.pad_complex(self._ik * u_hat)
        drhop = grid.pad_complex(self._absk * rho_hat)
        out = grid.unpad_complex(c.beta0 * rhop * up - 1j * c.beta * rhop * uxp - c.beta3 * up * drhop)
        if self.shift:
            out = out + self.shift * rho_hat[0].real * u_hat
        return out

    def _tendency(self, u_hat):
        # Nonlinear part of u_t (the linear part is carried by the propagator).
        return -1j * self.cubic_spectral(u_hat)

    def dysthe_rhs(self, u: np.ndarray) -> np.ndarray:
        """Right-hand side of ``i u_t = ...`` in physical space."""
        grid = self.grid
        u = grid.check(np.asarray(u, dtype=complex), "u")
        uh = sfft.fft(u, norm="forward")
        out = sfft.ifft(self.L * uh + self.cubic_spectral(uh), norm="forward")
        if not np.all(np.isfinite(out)):
            raise NumericError("non-finite envelope right-hand side")
        return out

    # ------------------------------------------------------------- stepping
    def _propagators(self, h):
        key = float(h)
        if key not in self._props:
            self._props[key] = (np.exp(-0.5j * h * self.L), np.exp(-1j * h * self.L))
        return self._props[key]

    def step_spectral(self, u_hat: np.ndarray, h: float) -> np.ndarray:
        """One Lawson RK4 step on Fourier coefficients."""
        E2, E = self._propagators(h)
        N = self._tendency
        k1 = N(u_hat)
        uh2 = E2 * u_hat
        k2 = N(uh2 + 0.5 * h * E2 * k1)
        k3 = N(uh2 + 0.5 * h * k2)
        uf = E * u_hat
        k4 = N(uf + h * E2 * k3)
        return uf + h / 6.0 * (E * k1 + 2.0 * E2 * (k2 + k3) + k4)

    def step(self, u: np.ndarray, dt: float) -> np.ndarray:
        if not dt > 0:
            raise ConfigurationError("dt must be positive", key="dt")
        u = self.grid.check(np.asarray(u, dtype=complex), "u")
        out = sfft.ifft(self.step_spectral(sfft.fft(u, norm="forward"), dt), norm="forward")
        if not np.all(np.isfinite(out)):
            raise NumericError("non-finite envelope", step=1)
        return out

    def run(
        self,
        u0: np.ndarray,
        dt: float,
        n_steps: int,
        sample_every: int = 0,
        callback: Optional[Callable[[int, float, np.ndarray], None]] = None,
        t0: float = 0.0,
        check_every: int = 20,
    ) -> np.ndarray:
        """March ``n_steps`` steps; ``callback(step, t, u_hat)`` every ``sample_every`` steps."""
        if not dt > 0:
            raise ConfigurationError("dt must be positive", key="dt")
        grid = self.grid
        u0 = grid.check(np.asarray(u0, dtype=complex), "u0")
        uh = sfft.fft(u0, norm="forward")
        top0 = float(np.max(np.abs(u0)))
        limit = self.blowup_factor * top0 if top0 > 0 else np.inf
        if callback is not None and sample_every > 0:
            callback(0, t0, uh)
        for n in range(1, n_steps + 1):
            uh = self.step_spectral(uh, dt)
            t = t0 + n * dt
            if not np.isfinite(uh.sum()):
                raise NumericError("non-finite envelope", step=n, time=t)
            if check_every and n % check_every == 0:
                top = np.max(np.abs(sfft.ifft(uh, norm="forward")))
                if top > limit:
                    raise NumericError(f"max|u| = {top:.3e} exceeds {self.blowup_factor} x initial", step=n, time=t)
            if callback is not None and sample_every > 0 and n % sample_every == 0:
                callback(n, t, uh)
        return sfft.ifft(uh, norm="forward")

    # ---------------------------------------------------------- diagnostics
    def hamiltonian(self, u: np.ndarray) -> float:
        return reduced_hamiltonian(u, self.grid, self.params, self.coeffs, self.variant, self.zero_mode_correction)

    def action(self, u: np.ndarray) -> float:
        return action(u, self.grid)


def _derivative(grid, u, order):
    k = grid.k.copy()
    k[grid.nyquist] = 0.0
    return sfft.ifft((1j * k) ** order * sfft.fft(u, norm="forward"), norm="forward")


def reduced_hamiltonian(
    u: np.ndarray,
    grid: SpectralGrid,
    params: PhysicalParams,
    coeffs: Optional[ModelCoefficients] = None,
    variant: str = "narrowband",
    zero_mode_correction: bool = False,
) -> float:
    """Trapezoid value of the reduced Hamiltonian of the envelope flow.

    For the narrowband variant the integrand is

        Omega0 |u|^2 + cg Im(conj(u) u_x) - disp2 |u_x|^2 + beta0/2 |u|^4
        - disp3 Im(conj(u) u_xxx) + beta/2 |u|^2 Im(conj(u) u_x)
        - beta3/2 |u|^2 |D| |u|^2 .

    The full-dispersion variant replaces the quadratic terms by
    ``conj(u) Omega(k0 + D) u``; the moving-frame variant drops the
    ``Omega0`` and ``cg`` terms. ``zero_mode_correction`` adds
    ``C M^2 / (4 pi)`` with ``M`` the action.
    """
    _check_variant(variant)
    c = coeffs if coeffs is not None else compute_coefficients(params)
    u = grid.check(np.asarray(u, dtype=complex), "u")
    rho = np.abs(u) ** 2
    ux = _derivative(grid, u, 1)
    uxxx = _derivative(grid, u, 3)
    j1 = np.imag(np.conj(u) * ux)
    if variant == "full-dispersion":
        L = linear_symbol(grid, params, c, variant)
        uh = sfft.fft(u, norm="forward")
        quad = 2.0 * np.pi * float(np.sum(L * np.abs(uh) ** 2))
    else:
        dens = -c.disp2 * np.abs(ux) ** 2 - c.disp3 * np.imag(np.conj(u) * uxxx)
        if variant == "narrowband":
            dens = dens + c.Omega0 * rho + c.cg * j1
        quad = float(grid.integrate(dens))
    drho = grid.apply_symbol(rho, "|D|")
    quart = 0.5 * c.beta0 * rho**2 + 0.5 * c.beta * rho * j1 - 0.5 * c.beta3 * rho * drho
    total = quad + float(grid.integrate(quart))
    if zero_mode_correction:
        total += zero_mode_shift(params) * action(u, grid) ** 2 / (4.0 * np.pi)
    return total


def action(u: np.ndarray, grid: SpectralGrid) -> float:
    """Wave action ``M = int |u|^2 dx``."""
    return float(grid.integrate(np.abs(u) ** 2))


def stokes_envelope(
    B0: float,
    t: float,
    grid: SpectralGrid,
    params: PhysicalParams,
    coeffs: Optional[ModelCoefficients] = None,
    variant: str = "narrowband",
    zero_mode_correction: bool = False,
) -> np.ndarray:
    """Uniform solution ``B0 exp(-i (Omega0 + beta0 B0^2) t)`` as a constant field.

    In the moving frame the carrier frequency ``Omega0`` is absent; with
    ``zero_mode_correction`` the rate gains ``C B0^2``.
    """
    if not B0 > 0:
        raise ConfigurationError("B0 must be positive", key="B0")
    _check_variant(variant)
    c = coeffs if coeffs is not None else compute_coefficients(params)
    base = c.Omega0
    if variant == "full-dispersion":
        base = float(Omega(params.k0, params))
    elif variant == "moving-frame":
        base = 0.0
    freq = base + c.beta0 * B0**2
    if zero_mode_correction:
        freq += zero_mode_shift(params) * B0**2
    return np.full(grid.n, B0 * np.exp(-1j * freq * t), dtype=complex)


def modulated_envelope(B0: float, lam: float, grid: SpectralGrid, depth: float = 0.1) -> np.ndarray:
    """Perturbed uniform envelope ``B0 (1 + depth cos(lam x))``."""
    return B0 * (1.0 + depth * np.cos(lam * grid.x)) + 0j


def sideband_amplitude(u_hat: np.ndarray, lam: int) -> float:
    """Combined amplitude ``sqrt(|u_lam|^2 + |u_-lam|^2)`` of the two sidebands."""
    lam = int(lam)
    return float(np.sqrt(np.abs(u_hat[lam]) ** 2 + np.abs(u_hat[-lam]) ** 2))
