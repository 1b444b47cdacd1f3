"""Full water-wave equations with constant vorticity in surface variables.

The state is the surface elevation ``eta`` and the trace ``xi`` of the
velocity potential. The evolution

    eta_t = G(eta) xi + gamma eta eta_x
    xi_t  = -g eta - xi_x^2/2 + (G(eta) xi + eta_x xi_x)^2 / (2 (1 + eta_x^2))
            + gamma eta xi_x + gamma dx^-1 G(eta) xi

is split into its linearisation about rest,

    eta_t = |D| xi,    xi_t = -g eta + gamma dx^-1 |D| xi,

which is advanced exactly mode by mode, and a nonlinear remainder handled by
fourth-order Runge-Kutta in the integrating-factor (Lawson) form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import fft as sfft

from .coeffs import PhysicalParams
from .dno import DnoExpansion
from .errors import ConfigurationError, NumericError
from .spectral import SpectralGrid

SQRT2 = np.sqrt(2.0)


@dataclass
class SurfaceState:
    """Surface elevation and velocity-potential trace at one instant."""

    grid: SpectralGrid
    eta: np.ndarray
    xi: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.eta = np.asarray(self.grid.check(self.eta, "eta"), dtype=float)
        self.xi = np.asarray(self.grid.check(self.xi, "xi"), dtype=float)

    @classmethod
    def rest(cls, grid: SpectralGrid, time: float = 0.0) -> "SurfaceState":
        return cls(grid, np.zeros(grid.n), np.zeros(grid.n), time)


@dataclass
class CanonicalState:
    """Surface elevation and canonical potential ``zeta``."""

    grid: SpectralGrid
    eta: np.ndarray
    zeta: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.eta = np.asarray(self.grid.check(self.eta, "eta"), dtype=float)
        self.zeta = np.asarray(self.grid.check(self.zeta, "zeta"), dtype=float)

    @classmethod
    def rest(cls, grid: SpectralGrid, time: float = 0.0) -> "CanonicalState":
        return cls(grid, np.zeros(grid.n), np.zeros(grid.n), time)


# ------------------------------------------------------------ variable changes
def xi_to_zeta(state: SurfaceState, params: PhysicalParams) -> CanonicalState:
    """``zeta = xi - (gamma/2) dx^-1 eta``."""
    grid = state.grid
    zeta = state.xi - 0.5 * params.gamma * grid.apply_symbol(state.eta, "dx^-1")
    return CanonicalState(grid, state.eta.copy(), zeta, state.time)


def zeta_to_xi(state: CanonicalState, params: PhysicalParams) -> SurfaceState:
    """Inverse of :func:`xi_to_zeta`."""
    grid = state.grid
    xi = state.zeta + 0.5 * params.gamma * grid.apply_symbol(state.eta, "dx^-1")
    return SurfaceState(grid, state.eta.copy(), xi, state.time)


def to_complex_z(state: CanonicalState, params: PhysicalParams) -> np.ndarray:
    """Symplectic coordinate ``z = (a(D) eta + i a(D)^-1 zeta)/sqrt(2)``."""
    grid = state.grid
    return (
        grid.apply_symbol(state.eta, "a", params) + 1j * grid.apply_symbol(state.zeta, "a^-1", params)
    ) / SQRT2


def from_complex_z(z: np.ndarray, grid: SpectralGrid, params: PhysicalParams, time: float = 0.0) -> CanonicalState:
    """Recover ``(eta, zeta)`` from ``z``: ``eta = sqrt2 a^-1 Re z``, ``zeta = sqrt2 a Im z``."""
    z = grid.check(z, "z")
    eta = SQRT2 * grid.apply_symbol(np.ascontiguousarray(z.real), "a^-1", params)
    zeta = SQRT2 * grid.apply_symbol(np.ascontiguousarray(z.imag), "a", params)
    return CanonicalState(grid, eta, zeta, time)


def quadratic_energy_diagonal(z: np.ndarray, grid: SpectralGrid, params: PhysicalParams) -> float:
    """``H2 = 2 pi sum_k Omega_k |z_k|^2`` (the diagonal form of the quadratic energy)."""
    from .coeffs import Omega

    zk = sfft.fft(z, norm="forward")
    W = Omega(grid.k, params)
    W[grid.nyquist] = 0.0
    return float(2.0 * np.pi * np.sum(W * np.abs(zk) ** 2))


def quadratic_energy(state: CanonicalState, params: PhysicalParams) -> float:
    """Quadratic part ``1/2 int [xi |D| xi + g eta^2]`` with ``xi = zeta + gamma/2 dx^-1 eta``."""
    grid = state.grid
    xi = state.zeta + 0.5 * params.gamma * grid.apply_symbol(state.eta, "dx^-1")
    return float(0.5 * grid.integrate(xi * grid.apply_symbol(xi, "|D|") + params.g * state.eta**2))


# ------------------------------------------------------------ conserved quantities
def energy_full(state, params: PhysicalParams, dno: DnoExpansion) -> float:
    """Total energy of a :class:`SurfaceState` or :class:`CanonicalState`.

    Non-canonical form ``1/2 int [xi G xi - gamma eta^2 xi_x + gamma^2/3 eta^3 + g eta^2]``;
    canonical form ``1/2 int [w G w - gamma eta^2 zeta_x - gamma^2/6 eta^3 + g eta^2]``
    with ``w = zeta + gamma/2 dx^-1 eta``. Trapezoidal quadrature.
    """
    if not isinstance(state, (CanonicalState, SurfaceState)):
        raise ConfigurationError("energy_full expects a SurfaceState or CanonicalState", key="state")
    grid = state.grid
    gam, g = params.gamma, params.g
    eta = state.eta
    if isinstance(state, CanonicalState):
        w = state.zeta + 0.5 * gam * grid.apply_symbol(eta, "dx^-1")
        zx = grid.apply_symbol(state.zeta, "dx")
        integrand = w * dno.apply(eta, w) - gam * eta**2 * zx - gam**2 / 6.0 * eta**3 + g * eta**2
    elif isinstance(state, SurfaceState):
        xi = state.xi
        xx = grid.apply_symbol(xi, "dx")
        integrand = xi * dno.apply(eta, xi) - gam * eta**2 * xx + gam**2 / 3.0 * eta**3 + g * eta**2
    value = 0.5 * grid.integrate(integrand)
    if not np.isfinite(value):
        raise NumericError("non-finite energy")
    return float(value)


def momentum(state: SurfaceState, params: PhysicalParams) -> float:
    """``I = int (eta xi_x - gamma/2 eta^2) dx``."""
    grid = state.grid
    if isinstance(state, CanonicalState):
        state = zeta_to_xi(state, params)
    xx = grid.apply_symbol(state.xi, "dx")
    return float(grid.integrate(state.eta * xx - 0.5 * params.gamma * state.eta**2))


def volume(state) -> float:
    """``V = int eta dx``."""
    return float(state.grid.integrate(state.eta))


# ------------------------------------------------------------ linear propagator
def linear_propagator(grid: SpectralGrid, params: PhysicalParams, h: float):
    """Exact per-mode propagator of the linearised ``(eta, xi)`` system.

    For each non-negative wavenumber the 2x2 generator is
    ``L = [[0, |k|], [-g, T]]`` with ``T = -i gamma sgn(k)``; writing
    ``L = T/2 I + A`` with ``A^2 = -w^2 I`` and
    ``w = sqrt(gamma^2 sgn(k)^2/4 + g|k|)`` gives
    ``exp(h L) = exp(h T/2) (cos(w h) I + sin(w h)/w A)``.

    Returns
    -------
    tuple of ndarray
        Entries ``(e11, e12, e21, e22)`` on the ``rfft`` wavenumbers, Nyquist
        entries zeroed.
    """
    k = grid.kr.copy()
    s = np.sign(k)
    T = -1j * params.gamma * s
    w = np.sqrt(0.25 * params.gamma**2 * s**2 + params.g * k)
    c = np.cos(w * h)
    sw = np.where(w > 0, np.sin(w * h) / np.where(w > 0, w, 1.0), h)
    ph = np.exp(0.5 * h * T)
    e11 = ph * (c - 0.5 * T * sw)
    e12 = ph * (k * sw)
    e21 = ph * (-params.g * sw)
    e22 = ph * (c + 0.5 * T * sw)
    for e in (e11, e12, e21, e22):
        e[grid.nyquist] = 0.0
    return e11, e12, e21, e22


def _apply_prop(E, a, b):
    e11, e12, e21, e22 = E
    return e11 * a + e12 * b, e21 * a + e22 * b


class EulerSolver:
    """Integrating-factor RK4 solver for the full surface equations.

    Parameters
    ----------
    grid : SpectralGrid
    params : PhysicalParams
    dno_order : int
        Truncation order of the Dirichlet-Neumann series.
    blowup_factor : float
        A run aborts when ``max|eta|`` exceeds this multiple of its initial
        value.
    """

    def __init__(self, grid: SpectralGrid, params: PhysicalParams, dno_order: int = 6, blowup_factor: float = 10.0):
        self.grid = grid
        self.params = params
        self.dno = DnoExpansion(grid, dno_order)
        self.blowup_factor = blowup_factor
        k = grid.kr.copy()
        k[grid.nyquist] = 0.0
        self._ik = 1j * k
        inv = np.zeros_like(self._ik)
        nz = k > 0
        inv[nz] = 1.0 / self._ik[nz]
        self._ik_inv = inv
        self._props: dict = {}

    # -------------------------------------------------------------- rhs
    def nonlinear_spectral(self, eta_hat: np.ndarray, xi_hat: np.ndarray):
        """Nonlinear remainder ``(N_eta, N_xi)`` as ``rfft`` coefficients."""
        grid, gam = self.grid, self.params.gamma
        ik = self._ik
        ep, xp, exp_ = grid.pad(np.stack([eta_hat, ik * xi_hat, ik * eta_hat]))
        g_terms, ep, xp = self.dno._expand(eta_hat, xi_hat, ep, xp)
        corr = np.zeros_like(g_terms[0])
        for gj in g_terms[1:]:
            corr = corr + gj
        Gxi = g_terms[0] + corr
        Gp = grid.pad(Gxi)
        num = Gp + exp_ * xp
        phys = -0.5 * xp * xp + 0.5 * num * num / (1.0 + exp_ * exp_) + gam * ep * xp
        adv, quad = grid.unpad(np.stack([ep * exp_, phys]))
        n_eta = corr + gam * adv
        n_eta[0] = 0.0
        n_xi = quad + gam * self._ik_inv * corr
        return n_eta, n_xi

    def rhs_full(self, state: SurfaceState):
        """Full right-hand side ``(eta_t, xi_t)`` in physical space."""
        grid, p = self.grid, self.params
        eh = grid.to_spectral(state.eta)
        xh = grid.to_spectral(state.xi)
        n_eta, n_xi = self.nonlinear_spectral(eh, xh)
        k = np.abs(self._ik)
        l_eta = k * xh
        l_xi = -p.g * eh - 1j * p.gamma * np.sign(k) * xh
        l_eta[grid.nyquist] = l_xi[grid.nyquist] = 0.0
        d_eta = grid.to_physical(l_eta + n_eta)
        d_xi = grid.to_physical(l_xi + n_xi)
        if not (np.all(np.isfinite(d_eta)) and np.all(np.isfinite(d_xi))):
            raise NumericError("non-finite right-hand side", time=state.time)
        return d_eta, d_xi

    # -------------------------------------------------------------- stepping
    def _propagators(self, h: float):
        key = float(h)
        if key not in self._props:
            self._props[key] = (
                linear_propagator(self.grid, self.params, 0.5 * h),
                linear_propagator(self.grid, self.params, h),
            )
        return self._props[key]

    def step_spectral(self, eta_hat, xi_hat, h: float):
        """One Lawson RK4 step on ``rfft`` coefficients."""
        Eh2, Eh = self._propagators(h)
        N = self.nonlinear_spectral
        k1e, k1x = N(eta_hat, xi_hat)
        he, hx = _apply_prop(Eh2, eta_hat, xi_hat)
        e1e, e1x = _apply_prop(Eh2, k1e, k1x)
        k2e, k2x = N(he + 0.5 * h * e1e, hx + 0.5 * h * e1x)
        k3e, k3x = N(he + 0.5 * h * k2e, hx + 0.5 * h * k2x)
        fe, fx = _apply_prop(Eh, eta_hat, xi_hat)
        t3e, t3x = _apply_prop(Eh2, k3e, k3x)
        k4e, k4x = N(fe + h * t3e, fx + h * t3x)
        s1e, s1x = _apply_prop(Eh, k1e, k1x)
        s2e, s2x = _apply_prop(Eh2, k2e + k3e, k2x + k3x)
        new_e = fe + h / 6.0 * (s1e + 2.0 * s2e + k4e)
        new_x = fx + h / 6.0 * (s1x + 2.0 * s2x + k4x)
        new_e[0] = 0.0
        return new_e, new_x

    def step(self, state: SurfaceState, dt: float) -> SurfaceState:
        """Advance a state by one step of size ``dt``."""
        if not dt > 0:
            raise ConfigurationError("dt must be positive", key="dt")
        grid = self.grid
        e, x = self.step_spectral(grid.to_spectral(state.eta), grid.to_spectral(state.xi), dt)
        if not (np.all(np.isfinite(e)) and np.all(np.isfinite(x))):
            raise NumericError("non-finite state", step=1, time=state.time + dt)
        return SurfaceState(grid, grid.to_physical(e), grid.to_physical(x), state.time + dt)

    def run(
        self,
        state: SurfaceState,
        dt: float,
        n_steps: int,
        sample_every: int = 0,
        callback: Optional[Callable[[int, float, np.ndarray, np.ndarray], None]] = None,
        check_every: int = 20,
    ) -> SurfaceState:
        """March ``n_steps`` steps of size ``dt``.

        Parameters
        ----------
        sample_every : int
            When positive, ``callback(step, t, eta_hat, xi_hat)`` is invoked
            at step 0 and every ``sample_every`` steps.
        check_every : int
            Interval (in steps) of the ``max|eta|`` blow-up test; finiteness
            is checked every step.

        Raises
        ------
        NumericError
            On non-finite values or runaway growth; carries the step index.
        """
        if not dt > 0:
            raise ConfigurationError("dt must be positive", key="dt")
        grid = self.grid
        e = grid.to_spectral(state.eta)
        x = grid.to_spectral(state.xi)
        t0 = state.time
        crest0 = float(np.max(np.abs(state.eta)))
        limit = self.blowup_factor * crest0 if crest0 > 0 else np.inf
        if callback is not None and sample_every > 0:
            callback(0, t0, e, x)
        for n in range(1, n_steps + 1):
            e, x = self.step_spectral(e, x, dt)
            t = t0 + n * dt
            if not np.isfinite(e.sum() + x.sum()):
                raise NumericError("non-finite state in full solver", step=n, time=t)
            if check_every and n % check_every == 0:
                crest = np.max(np.abs(grid.to_physical(e)))
                if crest > limit:
                    raise NumericError(
                        f"max|eta| = {crest:.3e} exceeds {self.blowup_factor} x initial crest", step=n, time=t
                    )
            if callback is not None and sample_every > 0 and n % sample_every == 0:
                callback(n, t, e, x)
        return SurfaceState(grid, grid.to_physical(e), grid.to_physical(x), t0 + n_steps * dt)

    # -------------------------------------------------------------- diagnostics
    def energy(self, state) -> float:
        return energy_full(state, self.params, self.dno)

    def momentum(self, state) -> float:
        return momentum(state, self.params)
