"""Third-order Birkhoff normal form for waves on constant vorticity.

The auxiliary cubic Hamiltonian ``K3`` generates a near-identity canonical
flow in a fictitious time ``s``

    d eta / ds = dK3/dzeta,     d zeta / ds = -dK3/deta,

which removes every cubic term from the water-wave Hamiltonian. Integrating
it from ``s = 0`` back to ``s = -1``, starting from the first-harmonic
fields built from an envelope ``u``, reconstructs the physical surface; the
forward integration maps a surface back to an envelope.

Notation: ``et = H eta``, ``zt = H zeta`` (Hilbert transform), so that
``d/dx zt = |D| zeta``, ``d/dx et = |D| eta`` and ``dx^-1 et = -|D|^-1 eta``.

Two routes to the flow are provided. :meth:`NormalFormFlow.rhs_spectral`
transcribes the closed-form right-hand sides term by term;
:meth:`NormalFormFlow.gradient_spectral` differentiates the 14-term physical
expression of ``K3`` generically from a table of (coefficient, operators)
triples. The functionals ``H2``, ``H3`` and ``K3`` are evaluated both in
physical space and by explicit triad sums over ``k1 + k2 + k3 = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import fft as sfft

from .coeffs import A_kernel, Omega, PhysicalParams, omega
from .dno import explicit_term
from .errors import ConfigurationError, NumericError, UsageError
from .euler import (
    CanonicalState,
    from_complex_z,
    quadratic_energy,
    quadratic_energy_diagonal,
    to_complex_z,
)
from .spectral import TWO_PI, SpectralGrid

#: Largest grid on which the O(N^2) triad-sum functionals are evaluated.
ORACLE_MAX_NODES = 64


@dataclass
class FlowState:
    """A point ``(eta, zeta)`` of the normal-form flow at flow time ``s``."""

    grid: SpectralGrid
    eta: np.ndarray
    zeta: np.ndarray
    s: float = 0.0

    def __post_init__(self):
        self.eta = np.asarray(self.grid.check(self.eta, "eta"), dtype=float)
        self.zeta = np.asarray(self.grid.check(self.zeta, "zeta"), dtype=float)

    @classmethod
    def from_canonical(cls, state: CanonicalState, s: float = 0.0) -> "FlowState":
        return cls(state.grid, state.eta.copy(), state.zeta.copy(), s)

    def to_canonical(self, time: float = 0.0) -> CanonicalState:
        return CanonicalState(self.grid, self.eta.copy(), self.zeta.copy(), time)


# Operator labels used by the physical K3 term table.
_ID, _H, _ABS, _DX, _DXINV, _NABSINV = "id", "H", "|D|", "dx", "dx^-1", "-|D|^-1"


def _k3_terms(gamma: float, g: float, variant_term11: str = "tilde"):
    """Rows ``(c, ((op, field), (op, field), (op, field)))`` with ``K3 = sum c int prod``.

    ``field`` is ``0`` for eta and ``1`` for zeta. ``variant_term11`` selects
    the last factor of the ``gamma^3/(8g)`` eta-cubic term: ``"tilde"`` for
    ``dx^-1 H eta`` and ``"plain"`` for ``dx^-1 eta``; only the first agrees
    with the triad-sum form and is the default.
    """
    G, g2 = gamma, g * g
    last11 = (_NABSINV, 0) if variant_term11 == "tilde" else (_DXINV, 0)
    E, Z = 0, 1
    return [
        (0.5, ((_H, E), (_H, E), (_ABS, Z))),
        (-G / 4.0, ((_ID, E), (_ID, E), (_H, E))),
        (G / (4.0 * g), ((_ID, Z), (_ID, Z), (_DX, E))),
        (-G / (2.0 * g), ((_ID, Z), (_H, E), (_ABS, Z))),
        (-(G**2) / (4.0 * g), ((_DXINV, E), (_DX, E), (_ID, Z))),
        (-(G**2) / (4.0 * g), ((_ID, E), (_H, E), (_H, Z))),
        (G**2 / (4.0 * g), ((_H, E), (_ABS, Z), (_DXINV, E))),
        (G**2 / (8.0 * g2), ((_ID, Z), (_ID, Z), (_ABS, Z))),
        (-(G**3) / (16.0 * g2), ((_ID, Z), (_ID, Z), (_H, E))),
        (-(G**3) / (8.0 * g2), ((_ID, Z), (_ABS, Z), (_DXINV, E))),
        (G**3 / (8.0 * g), ((_DXINV, E), (_ABS, E), last11)),
        (-(G**4) / (16.0 * g2), ((_ID, E), (_H, Z), (_DXINV, E))),
        (G**4 / (16.0 * g2), ((_H, E), (_ID, Z), (_DXINV, E))),
        (-(G**5) / (64.0 * g2), ((_H, E), (_DXINV, E), (_DXINV, E))),
    ]


class NormalFormFlow:
    """Right-hand side and RK4 integrator of the ``K3`` flow on a grid.

    Parameters
    ----------
    grid : SpectralGrid
    params : PhysicalParams
    blowup_factor : float
        Abort integration when ``max|eta|`` exceeds this multiple of its
        initial value.
    """

    def __init__(self, grid: SpectralGrid, params: PhysicalParams, blowup_factor: float = 10.0):
        self.grid = grid
        self.params = params
        self.blowup_factor = blowup_factor
        k = grid.kr.astype(float).copy()
        k[grid.nyquist] = 0.0
        nz = k > 0
        inv = np.zeros_like(k)
        inv[nz] = 1.0 / k[nz]
        self._sym = {
            _ID: np.where(np.arange(k.size) == grid.nyquist, 0.0, 1.0).astype(complex),
            _H: -1j * np.sign(k),
            _ABS: k.astype(complex),
            _DX: 1j * k,
            _DXINV: -1j * inv,
            _NABSINV: -inv.astype(complex),
        }

    # ----------------------------------------------------------- helpers
    def _prepare(self, eta_hat, zeta_hat):
        s = self._sym
        f = {
            "eta": eta_hat,
            "zeta": zeta_hat,
            "et": s[_H] * eta_hat,
            "zt": s[_H] * zeta_hat,
            "ztx": s[_ABS] * zeta_hat,
            "etx": s[_ABS] * eta_hat,
            "etax": s[_DX] * eta_hat,
            "zetax": s[_DX] * zeta_hat,
            "ie": s[_DXINV] * eta_hat,
            "iet": s[_NABSINV] * eta_hat,
        }
        pads = {name: self.grid.pad(c) for name, c in f.items()}
        return pads

    def _mul(self, p, a, b):
        return self.grid.unpad(p[a] * p[b])

    @staticmethod
    def _project(*cs):
        for c in cs:
            c[0] = 0.0
        return cs

    # ------------------------------------------------------ transcription
    def rhs_spectral(self, eta_hat: np.ndarray, zeta_hat: np.ndarray):
        """``(d eta/ds, d zeta/ds)`` as ``rfft`` coefficients, term by term.

        The mean of ``zeta`` is projected out on input and both outputs
        have zero mean.
        """
        zeta_hat = zeta_hat.copy()
        zeta_hat[0] = 0.0
        gam, g = self.params.gamma, self.params.g
        s = self._sym
        H, A, DX, DXI, AI = s[_H], s[_ABS], s[_DX], s[_DXINV], -s[_NABSINV]
        p = self._prepare(eta_hat, zeta_hat)
        m = lambda a, b: self._mul(p, a, b)  # noqa: E731

        deta = 0.5 * A * m("et", "et")
        dzeta = H * m("et", "ztx")
        if gam != 0.0:
            g2 = g * g
            deta = deta + gam / (2 * g) * (m("zeta", "etax") - m("et", "ztx") - A * m("zeta", "et"))
            deta = deta + gam**2 / (4 * g2) * (m("zeta", "ztx") + 0.5 * A * m("zeta", "zeta"))
            deta = deta + gam**2 / (4 * g) * (-m("ie", "etax") + H * m("eta", "et") + A * m("et", "ie"))
            deta = deta - gam**3 / (8 * g2) * (m("zeta", "et") + m("ztx", "ie") + A * m("zeta", "ie"))
            deta = deta + gam**4 / (16 * g2) * (H * m("eta", "ie") + m("et", "ie"))

            dzeta = dzeta + gam / 2 * (m("eta", "et") - 0.5 * H * m("eta", "eta"))
            dzeta = dzeta + gam / (2 * g) * (m("zeta", "zetax") - H * m("zeta", "ztx"))
            dzeta = dzeta - gam**2 / (4 * g) * (
                DX * m("zeta", "ie")
                + DXI * m("zeta", "etax")
                - m("zt", "et")
                + H * m("eta", "zt")
                - H * m("ztx", "ie")
                - DXI * m("ztx", "et")
            )
            dzeta = dzeta + gam**3 / (8 * g) * (
                DXI * m("etx", "iet") - A * m("ie", "iet") + AI * m("etx", "ie")
            )
            dzeta = dzeta - gam**3 / (16 * g2) * (H * m("zeta", "zeta") + 2 * DXI * m("zeta", "ztx"))
            dzeta = dzeta + gam**4 / (16 * g2) * (
                m("zt", "ie") - DXI * m("eta", "zt") + H * m("zeta", "ie") + DXI * m("zeta", "et")
            )
            dzeta = dzeta - gam**5 / (64 * g2) * (H * m("ie", "ie") + 2 * DXI * m("et", "ie"))
        return self._project(deta, dzeta)

    # ---------------------------------------------------- generic route
    def gradient_spectral(self, eta_hat: np.ndarray, zeta_hat: np.ndarray, variant_term11: str = "tilde"):
        """``(dK3/deta, dK3/dzeta)`` differentiated generically from the term table.

        For a term ``c int (A1 f1)(A2 f2)(A3 f3)`` the variation in factor
        ``i`` is ``c Ai^T[(Aj fj)(Ak fk)]`` with the adjoint symbol
        ``conj(Ai(k))``. The mean of ``zeta`` is projected out on input and
        the ``zeta``-gradient has zero mean.
        """
        zeta_hat = zeta_hat.copy()
        zeta_hat[0] = 0.0
        grid = self.grid
        fields = (eta_hat, zeta_hat)
        grads = [np.zeros_like(eta_hat), np.zeros_like(eta_hat)]
        cache = {}

        def factor(op, fld):
            key = (op, fld)
            if key not in cache:
                cache[key] = grid.pad(self._sym[op] * fields[fld])
            return cache[key]

        for c, facs in _k3_terms(self.params.gamma, self.params.g, variant_term11):
            if c == 0.0:
                continue
            vals = [factor(op, fld) for op, fld in facs]
            for i, (op, fld) in enumerate(facs):
                j, k = [q for q in range(3) if q != i]
                grads[fld] = grads[fld] + c * np.conj(self._sym[op]) * grid.unpad(vals[j] * vals[k])
        grads[1][0] = 0.0
        return grads[0], grads[1]

    def rhs_generic(self, eta_hat: np.ndarray, zeta_hat: np.ndarray):
        """Flow right-hand side built from :meth:`gradient_spectral`."""
        ge, gz = self.gradient_spectral(eta_hat, zeta_hat)
        return self._project(gz.copy(), -ge)

    # -------------------------------------------------------- physical
    def rhs(self, state: FlowState):
        """Physical-space ``(d eta/ds, d zeta/ds)``."""
        grid = state.grid
        de, dz = self.rhs_spectral(grid.to_spectral(state.eta), grid.to_spectral(state.zeta))
        out = grid.to_physical(de), grid.to_physical(dz)
        if not (np.all(np.isfinite(out[0])) and np.all(np.isfinite(out[1]))):
            raise NumericError(f"non-finite normal-form flow at s={state.s}")
        return out

    # --------------------------------------------------------- stepping
    def step_spectral(self, eta_hat, zeta_hat, h):
        """One classical RK4 step of size ``h`` (negative ``h`` integrates backward)."""
        f = self.rhs_spectral
        k1 = f(eta_hat, zeta_hat)
        k2 = f(eta_hat + 0.5 * h * k1[0], zeta_hat + 0.5 * h * k1[1])
        k3 = f(eta_hat + 0.5 * h * k2[0], zeta_hat + 0.5 * h * k2[1])
        k4 = f(eta_hat + h * k3[0], zeta_hat + h * k3[1])
        e = eta_hat + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        z = zeta_hat + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        return e, z

    def integrate(self, state: FlowState, s_end: float, ds: float = 0.005) -> FlowState:
        """RK4 from ``state.s`` to ``s_end`` with step magnitude close to ``ds``.

        The step count is ``ceil(|s_end - s| / ds)`` so that ``s_end`` is hit
        exactly.
        """
        if not ds > 0:
            raise ConfigurationError("ds must be positive", key="ds")
        grid = state.grid
        span = s_end - state.s
        eh = grid.to_spectral(state.eta)
        zh = grid.to_spectral(state.zeta)
        zh[0] = 0.0
        if span == 0.0:
            return FlowState(grid, grid.to_physical(eh), grid.to_physical(zh), state.s)
        n = int(np.ceil(abs(span) / ds - 1e-9))
        h = span / n
        top0 = float(np.max(np.abs(state.eta)))
        limit = self.blowup_factor * top0 if top0 > 0 else np.inf
        for i in range(1, n + 1):
            eh, zh = self.step_spectral(eh, zh, h)
            s = state.s + i * h
            if not (np.isfinite(eh.sum()) and np.isfinite(zh.sum())):
                raise NumericError(f"normal-form flow blew up at s={s:.6g}", step=i)
            if np.max(np.abs(grid.to_physical(eh))) > limit:
                raise NumericError(f"normal-form flow steepened beyond {self.blowup_factor} x at s={s:.6g}", step=i)
        return FlowState(grid, grid.to_physical(eh), grid.to_physical(zh), s_end)


def k3_rhs(state: FlowState, params: PhysicalParams):
    """``(d eta/ds, d zeta/ds)`` of the ``K3`` flow in physical space."""
    return NormalFormFlow(state.grid, params).rhs(state)


# ------------------------------------------------------------------ envelope <-> surface
def _carrier(grid: SpectralGrid, params: PhysicalParams):
    return np.exp(1j * params.k0 * grid.x)


def partial_reconstruct(u: np.ndarray, grid: SpectralGrid, params: PhysicalParams) -> CanonicalState:
    """First-harmonic surface ``eta = sqrt2 a^-1 Re(u e^{i k0 x})``, ``zeta = sqrt2 a Im(u e^{i k0 x})``."""
    u = grid.check(np.asarray(u, dtype=complex), "u")
    return from_complex_z(u * _carrier(grid, params), grid, params)


def envelope_to_surface(
    u: np.ndarray,
    grid: SpectralGrid,
    params: PhysicalParams,
    ds: float = 0.005,
    flow: Optional[NormalFormFlow] = None,
) -> CanonicalState:
    """Full reconstruction: seed with :func:`partial_reconstruct`, flow from ``s = 0`` to ``s = -1``."""
    seed = partial_reconstruct(u, grid, params)
    flow = flow if flow is not None else NormalFormFlow(grid, params)
    out = flow.integrate(FlowState.from_canonical(seed, 0.0), -1.0, ds)
    return out.to_canonical()


def surface_to_envelope(
    state: CanonicalState,
    params: PhysicalParams,
    ds: float = 0.005,
    flow: Optional[NormalFormFlow] = None,
) -> np.ndarray:
    """Forward transform: flow from ``s = -1`` to ``s = 0``, then demodulate ``u = z e^{-i k0 x}``."""
    grid = state.grid
    flow = flow if flow is not None else NormalFormFlow(grid, params)
    out = flow.integrate(FlowState.from_canonical(state, -1.0), 0.0, ds)
    z = to_complex_z(out.to_canonical(), params)
    return z * np.conj(_carrier(grid, params))


# ------------------------------------------------------------------ functionals
def _triple_integral(grid: SpectralGrid, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    # Exact for band-limited real fields: 2 pi sum_k (ab)_k conj(c_k).
    ab = grid.unpad(grid.pad(grid.to_spectral(a)) * grid.pad(grid.to_spectral(b)))
    cc = grid.to_spectral(c)
    w = np.full(ab.size, 2.0)
    w[0] = 1.0
    return float(TWO_PI * np.sum(w * np.real(ab * np.conj(cc))))


def k3_physical(state, params: PhysicalParams, variant_term11: str = "tilde") -> float:
    """Quadrature of the 14-term physical-space ``K3`` (mean of ``zeta`` removed)."""
    grid = state.grid
    flow = NormalFormFlow(grid, params)
    eh = grid.to_spectral(state.eta)
    zh = grid.to_spectral(state.zeta)
    zh[0] = 0.0
    fields = (eh, zh)
    total = 0.0
    for c, facs in _k3_terms(params.gamma, params.g, variant_term11):
        if c == 0.0:
            continue
        vals = [grid.to_physical(flow._sym[op] * fields[fld]) for op, fld in facs]
        total += c * _triple_integral(grid, *vals)
    return total


def h3_physical(state, params: PhysicalParams) -> float:
    """Cubic energy ``1/2 int xi G1(eta) xi - gamma/2 int eta^2 xi_x + gamma^2/6 int eta^3``.

    Here ``xi = zeta + gamma/2 dx^-1 eta``; this is the cubic part of the
    non-canonical energy, independent of the triad-sum route.
    """
    grid = state.grid
    gam = params.gamma
    eta = state.eta
    zeta = state.zeta - np.mean(state.zeta)
    xi = zeta + 0.5 * gam * grid.apply_symbol(eta, "dx^-1")
    g1 = explicit_term(grid, 1, eta, xi)
    xix = grid.apply_symbol(xi, "dx")
    val = 0.5 * float(grid.integrate(xi * g1))
    val -= 0.5 * gam * _triple_integral(grid, eta, eta, xix)
    val += gam**2 / 6.0 * _triple_integral(grid, eta, eta, eta)
    return val


def _triads(n: int):
    if n > ORACLE_MAX_NODES:
        raise UsageError(f"triad-sum functionals need n_nodes <= {ORACLE_MAX_NODES}, got {n}")
    h = n // 2
    ks = np.arange(-h + 1, h)
    k1, k2 = np.meshgrid(ks, ks, indexing="ij")
    k3 = -(k1 + k2)
    keep = (np.abs(k3) < h) & (k1 != 0) & (k2 != 0) & (k3 != 0)
    return k1[keep], k2[keep], k3[keep]


def _full_coeffs(f):
    return sfft.fft(np.asarray(f, dtype=float), norm="forward")


def h3_spectral(state, params: PhysicalParams) -> float:
    """Triad sum ``-pi sum (1 + s1 s3)(|k1||k3| z1 e2 z3 + i gamma k2/2 e1 z2 e3)``."""
    n = state.grid.n
    k1, k2, k3 = _triads(n)
    e = _full_coeffs(state.eta)
    z = _full_coeffs(state.zeta)
    e1, e2, e3 = e[k1 % n], e[k2 % n], e[k3 % n]
    z1, z2, z3 = z[k1 % n], z[k2 % n], z[k3 % n]
    s1, s3 = np.sign(k1), np.sign(k3)
    body = (1 + s1 * s3) * (np.abs(k1) * np.abs(k3) * z1 * e2 * z3 + 0.5j * params.gamma * k2 * e1 * z2 * e3)
    return float(np.real(-np.pi * np.sum(body)))


def k3_spectral(state, params: PhysicalParams) -> float:
    """Triad sum of ``K3`` in ``(eta, zeta)`` Fourier form."""
    n = state.grid.n
    gam, g = params.gamma, params.g
    k1, k2, k3 = _triads(n)
    e = _full_coeffs(state.eta)
    z = _full_coeffs(state.zeta)
    e1, e2, e3 = e[k1 % n], e[k2 % n], e[k3 % n]
    z1, z2, z3 = z[k1 % n], z[k2 % n], z[k3 % n]
    a1, a2, a3 = np.abs(k1), np.abs(k2), np.abs(k3)
    s1, s2, s3 = np.sign(k1), np.sign(k2), np.sign(k3)
    w2sq = omega(k2, params) ** 2
    w3sq = omega(k3, params) ** 2
    den = g * g * a1 * a3
    first = -(gam**4 / 8 + gam**2 / 2 * g * a2 + g * g * a1 * a3) / den * (
        -0.5 * gam * s2 * e1 * e2 * e3 + 1j * a2 * e1 * z2 * e3 - 2j * a3 * e1 * e2 * z3
    )
    second = gam * s2 / den * (
        2 * w3sq * a1 * a2 * z1 * z2 * e3 - w2sq * a1 * a3 * z1 * e2 * z3 + 0.5j * gam * s2 * a1 * a2 * a3 * z1 * z2 * z3
    )
    total = TWO_PI / 4j * np.sum((1 + s1 * s3) * (first + second))
    return float(np.real(total))


def _z_triads(state, params):
    n = state.grid.n
    k1, k2, k3 = _triads(n)
    zc = sfft.fft(to_complex_z(CanonicalState(state.grid, state.eta, state.zeta), params), norm="forward")
    # Continuous-transform normalisation: z(k) <-> sqrt(2 pi) z_k, int dk <-> sum.
    zc = np.sqrt(TWO_PI) * zc
    zb = np.conj(zc)
    A = A_kernel(k1.astype(float), k2.astype(float), k3.astype(float), params)
    return k1, k2, k3, zc, zb, A, n


def h3_z(state, params: PhysicalParams) -> float:
    """``H3`` from the symmetric kernel ``A123`` in the symplectic coordinate ``z``."""
    k1, k2, k3, zc, zb, A, n = _z_triads(state, params)
    i = lambda k: k % n  # noqa: E731
    mono = (
        zc[i(k1)] * zc[i(k2)] * zc[i(k3)]
        + zb[i(k1)] * zb[i(k2)] * zb[i(k3)]
        - zc[i(-k1)] * zc[i(-k2)] * zb[i(k3)]
        - zb[i(-k1)] * zb[i(-k2)] * zc[i(k3)]
    )
    return float(np.real(np.sum(A * mono)))


def k3_z(state, params: PhysicalParams):
    """``K3`` from ``A123`` and the frequency sums; returns ``(value, min |denominator|)``."""
    k1, k2, k3, zc, zb, A, n = _z_triads(state, params)
    i = lambda k: k % n  # noqa: E731
    d_plus = Omega(k1, params) + Omega(k2, params) + Omega(k3, params)
    d_mix = Omega(-k1, params) + Omega(-k2, params) - Omega(k3, params)
    m1 = zc[i(k1)] * zc[i(k2)] * zc[i(k3)] - zb[i(k1)] * zb[i(k2)] * zb[i(k3)]
    m2 = zc[i(-k1)] * zc[i(-k2)] * zb[i(k3)] - zb[i(-k1)] * zb[i(-k2)] * zc[i(k3)]
    active = A != 0
    dmin = float(min(np.min(np.abs(d_plus[active])), np.min(np.abs(d_mix[active])))) if active.any() else np.inf
    val = np.sum(np.where(active, A * m1 / d_plus - A * m2 / d_mix, 0.0)) / 1j
    return float(np.real(val)), dmin


def functionals(state, params: PhysicalParams) -> dict:
    """``H2``, ``H3``, ``K3_physical`` and ``K3_spectral`` with cross-check values.

    Extra keys: ``H2_diagonal`` (diagonal form on ``z``), ``H3_physical``
    (cubic part of the energy), ``H3_z`` and ``K3_z`` (symplectic-coordinate
    forms) and ``min_denominator`` (smallest frequency sum met in ``K3_z``).
    Triad sums require ``n_nodes <= 64``.
    """
    grid = state.grid
    if grid.n > ORACLE_MAX_NODES:
        raise UsageError(f"triad-sum functionals need n_nodes <= {ORACLE_MAX_NODES}, got {grid.n}")
    cstate = CanonicalState(grid, state.eta, state.zeta - np.mean(state.zeta))
    k3z, dmin = k3_z(cstate, params)
    return {
        "H2": quadratic_energy(cstate, params),
        "H2_diagonal": quadratic_energy_diagonal(to_complex_z(cstate, params), grid, params),
        "H3": h3_spectral(cstate, params),
        "H3_physical": h3_physical(cstate, params),
        "H3_z": h3_z(cstate, params),
        "K3_physical": k3_physical(cstate, params),
        "K3_spectral": k3_spectral(cstate, params),
        "K3_z": k3z,
        "min_denominator": dmin,
    }


def cohomological_residual(state, params: PhysicalParams, h: float = 1e-4) -> dict:
    """Centered difference of ``H2`` along the ``K3`` flow at ``s = 0`` against ``H3``.

    Returns ``dH2_ds``, ``H3`` (triad sum when the grid allows, else the
    physical cubic energy) and their relative difference.
    """
    grid = state.grid
    flow = NormalFormFlow(grid, params)
    eh = grid.to_spectral(state.eta)
    zh = grid.to_spectral(state.zeta)
    zh[0] = 0.0

    def h2(e, z):
        return quadratic_energy(CanonicalState(grid, grid.to_physical(e), grid.to_physical(z)), params)

    ep, zp = flow.step_spectral(eh, zh, h)
    em, zm = flow.step_spectral(eh, zh, -h)
    dh2 = (h2(ep, zp) - h2(em, zm)) / (2 * h)
    cstate = CanonicalState(grid, grid.to_physical(eh), grid.to_physical(zh))
    h3 = h3_spectral(cstate, params) if grid.n <= ORACLE_MAX_NODES else h3_physical(cstate, params)
    return {"dH2_ds": dh2, "H3": h3, "rel": abs(dh2 - h3) / max(abs(h3), 1e-300)}


def random_lowmode_state(grid: SpectralGrid, rng: np.random.Generator, kmax: int = 6, amp: float = 0.05) -> FlowState:
    """Random zero-mean ``(eta, zeta)`` pair on modes ``1..kmax``."""
    eh = np.zeros(grid.nyquist + 1, dtype=complex)
    zh = np.zeros(grid.nyquist + 1, dtype=complex)
    m = np.arange(1, kmax + 1)
    eh[m] = amp * (rng.standard_normal(kmax) + 1j * rng.standard_normal(kmax)) / m
    zh[m] = amp * (rng.standard_normal(kmax) + 1j * rng.standard_normal(kmax)) / m
    return FlowState(grid, grid.to_physical(eh), grid.to_physical(zh), 0.0)
