"""Closed-form scalars: dispersion, envelope-model coefficients, quartic
interaction kernels and the Benjamin-Feir growth-rate predictor.

All quantities are nondimensional with ``g = 1`` by default. Wavenumber
arguments of the kernel functions may be scalars or numpy arrays.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from typing import Optional

import numpy as np

from .errors import ConfigurationError, DomainError

SQRT_PI = np.sqrt(np.pi)


@dataclass(frozen=True)
class PhysicalParams:
    """Physical parameters of a deep-water shear-flow wave problem.

    Parameters
    ----------
    g : float
        Gravitational acceleration (1 in nondimensional units).
    gamma : float
        Constant vorticity; positive for a co-propagating current.
    k0 : float
        Carrier wavenumber (a positive integer on the 2*pi-periodic cell).
    epsilon : float, optional
        Wave steepness ``k0 * A0``. When omitted, routines that need it
        derive it from the envelope amplitude through :func:`a0_from_b0`.
    """

    g: float = 1.0
    gamma: float = 0.0
    k0: float = 10.0
    epsilon: Optional[float] = None

    def __post_init__(self):
        if not np.isfinite(self.g) or self.g <= 0:
            raise ConfigurationError(f"g must be positive, got {self.g}", key="g")
        if not np.isfinite(self.k0) or self.k0 <= 0:
            raise ConfigurationError(f"k0 must be positive, got {self.k0}", key="k0")
        if not np.isfinite(self.gamma):
            raise ConfigurationError("gamma must be finite", key="gamma")
        if self.epsilon is not None and not (np.isfinite(self.epsilon) and self.epsilon >= 0):
            raise ConfigurationError("epsilon must be a non-negative number", key="epsilon")

    @property
    def omega0(self) -> float:
        return float(omega(self.k0, self))

    @property
    def Omega0(self) -> float:
        return float(Omega(self.k0, self))


# ------------------------------------------------------------------ dispersion
def omega(k, params: PhysicalParams):
    """``omega(k) = sqrt(gamma^2/4 + g|k|)``."""
    return np.sqrt(0.25 * params.gamma**2 + params.g * np.abs(k))


def Omega(k, params: PhysicalParams):
    """Linear dispersion relation ``gamma/2 sgn(k) + omega(k)``."""
    return 0.5 * params.gamma * np.sign(k) + omega(k, params)


def a(k, params: PhysicalParams):
    """``a(k) = sqrt(omega(k)/|k|)``; undefined at ``k = 0``."""
    k = np.asarray(k, dtype=float)
    if np.any(k == 0):
        raise DomainError("a(k) is singular at k = 0")
    out = np.sqrt(omega(k, params) / np.abs(k))
    return out if out.ndim else float(out)


# ----------------------------------------------------------------- amplitudes
def b0_from_a0(A0, params: PhysicalParams):
    """Envelope amplitude from surface amplitude: ``B0 = A0 sqrt(omega0/(2 k0))``."""
    if np.any(np.asarray(A0) < 0):
        raise ConfigurationError("amplitude must be non-negative", key="A0")
    return A0 * np.sqrt(params.omega0 / (2.0 * params.k0))


def a0_from_b0(B0, params: PhysicalParams):
    """Surface amplitude from envelope amplitude (inverse of :func:`b0_from_a0`)."""
    if np.any(np.asarray(B0) < 0):
        raise ConfigurationError("amplitude must be non-negative", key="B0")
    return B0 * np.sqrt(2.0 * params.k0 / params.omega0)


def steepness(B0, params: PhysicalParams) -> float:
    """``epsilon = k0 * A0`` for an envelope amplitude ``B0``."""
    return float(params.k0 * a0_from_b0(B0, params))


# -------------------------------------------------------- model coefficients
@dataclass(frozen=True)
class ModelCoefficients:
    """Coefficients of the envelope model for one set of physical parameters.

    ``disp2`` and ``disp3`` are the magnitudes of the second- and third-order
    terms of the Taylor expansion of ``Omega`` about ``k0``
    (``g^2/(8 omega0^3)`` and ``g^3/(16 omega0^5)``).
    """

    omega0: float
    Omega0: float
    cg: float
    disp2: float
    disp3: float
    beta0: float
    beta3: float
    beta: float
    omega2: float
    Omega_p2: float
    Omega_m2: float
    c0l: float
    c0r: float
    c1l: float
    c1r: float
    c2l: float
    c2r: float
    c3l: float
    c3r1: float
    c3r2: float

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def field_names(cls):
        return [f.name for f in fields(cls)]


def _nonzero(value, what):
    if not np.isfinite(value) or abs(value) < 1e-300:
        raise DomainError(f"vanishing denominator: {what}")
    return value


def compute_coefficients(params: PhysicalParams) -> ModelCoefficients:
    """Evaluate every envelope-model coefficient in closed form.

    Raises
    ------
    DomainError
        If one of ``2 omega0 - gamma``, ``Omega0``, ``2 Omega0 + Omega(-2k0)``
        or ``2 Omega0 - Omega(2k0)`` vanishes.
    """
    g, gam, k0 = params.g, params.gamma, params.k0
    w0 = params.omega0
    W0 = _nonzero(params.Omega0, "Omega0")
    den_b = _nonzero(2.0 * w0 - gam, "2 omega0 - gamma")
    sp = float(omega(2.0 * k0, params))
    Wp2 = 0.5 * gam + sp
    Wm2 = -0.5 * gam + sp
    den1 = _nonzero(2.0 * W0 + Wm2, "2 Omega0 + Omega(-2 k0)")
    den2 = _nonzero(2.0 * W0 - Wp2, "2 Omega0 - Omega(2 k0)")

    beta0 = k0**3 * (w0 - gam) * (gam**2 + 4.0 * w0**2) / (2.0 * w0 * W0 * den_b)
    beta3 = k0**2 * w0**2 / W0**2

    c0l = k0**3 * W0**2 / (8.0 * np.pi * w0**2)
    c0r = 3.0 * k0**2 * W0**2 / (16.0 * np.pi * w0**2) - gam * g * k0**3 * W0 / (32.0 * np.pi * w0**4)

    # The first bracket term of c1r/c2r is multiplied out so that a zero of
    # 2 omega0^2 -+ gamma omega(2k0) cancels analytically against c1l/c2l.
    p1 = 2.0 * w0**2 + gam * sp
    p2 = 2.0 * w0**2 - gam * sp
    c1l = k0**3 * p1**2 / (16.0 * np.pi * w0**2 * sp * den1)
    c1r = g * (
        k0**3 * p1 * 2.0 * Wp2 / (16.0 * np.pi * w0**2 * sp**2 * den1)
        + c1l * (-0.5 / w0**2 - 0.5 / sp**2 + 1.5 / (g * k0) - (sp + w0) / (2.0 * sp * w0 * den1))
    )
    c2l = -(k0**3) * p2**2 / (16.0 * np.pi * w0**2 * sp * den2)
    c2r = g * (
        -(k0**3) * p2 * 2.0 * Wm2 / (16.0 * np.pi * w0**2 * sp**2 * den2)
        + c2l * (-0.5 / w0**2 - 0.5 / sp**2 + 1.5 / (g * k0) - (sp - w0) / (2.0 * sp * w0 * den2))
    )
    c3l = gam**2 * k0**2 * w0 / (2.0 * np.pi * g * W0)
    c3r1 = c3l * (1.0 / k0 + g * gam / (8.0 * W0 * w0**2))
    c3r2 = k0**2 * w0**2 / (2.0 * np.pi * W0**2)
    beta = 8.0 * np.pi * (c0r - 0.5 * (c1r + c2r + c3r1))

    return ModelCoefficients(
        omega0=w0,
        Omega0=W0,
        cg=g / (2.0 * w0),
        disp2=g**2 / (8.0 * w0**3),
        disp3=g**3 / (16.0 * w0**5),
        beta0=beta0,
        beta3=beta3,
        beta=beta,
        omega2=sp,
        Omega_p2=Wp2,
        Omega_m2=Wm2,
        c0l=c0l,
        c0r=c0r,
        c1l=c1l,
        c1r=c1r,
        c2l=c2l,
        c2r=c2r,
        c3l=c3l,
        c3r1=c3r1,
        c3r2=c3r2,
    )


def zero_mode_shift(params: PhysicalParams) -> float:
    """Carrier-frequency coefficient lost when the ``k = 0`` mode is absent.

    The leading long-wave part of the quartic interaction,
    ``c3l = gamma^2 k0^2 omega0 / (2 pi g Omega0)``, enters ``beta0`` as the
    limit ``k1 - k3 -> 0``. On a periodic cell with zero mass that limit is
    not attained at ``k1 = k3``: half of the symmetrised contribution is
    missing from the carrier self-interaction, so the uniform wave of the
    full equations rotates at ``Omega0 + (beta0 + C) B0^2`` with
    ``C = 2 pi c3l = gamma^2 k0^2 omega0 / (g Omega0)``. Zero at ``gamma = 0``.
    """
    w0 = params.omega0
    W0 = _nonzero(params.Omega0, "Omega0")
    return float(params.gamma**2 * params.k0**2 * w0 / (params.g * W0))


# ------------------------------------------------------------ quartic kernels
def _checked_inverse(x, what):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) < 1e-300) or not np.all(np.isfinite(x)):
        raise DomainError(f"resonant denominator: {what}")
    return 1.0 / x


def S_kernel(k1, k2, k3, params: PhysicalParams):
    """``S_123 = (1 + sgn k1 sgn k3)/(a1 a2 a3) (k1 k3 a1^2 a3^2 - gamma/2 k2 a2^2)``."""
    a1, a2, a3 = a(k1, params), a(k2, params), a(k3, params)
    pref = (1.0 + np.sign(k1) * np.sign(k3)) / (a1 * a2 * a3)
    return pref * (k1 * k3 * a1**2 * a3**2 - 0.5 * params.gamma * k2 * a2**2)


def A_kernel(k1, k2, k3, params: PhysicalParams):
    """``A_123 = (S_123 + S_312 - S_231) / (8 sqrt(pi))``."""
    return (
        S_kernel(k1, k2, k3, params) + S_kernel(k3, k1, k2, params) - S_kernel(k2, k3, k1, params)
    ) / (8.0 * SQRT_PI)


def D1_kernel(k1, k2, k3, k4, params):
    a1, a2, a3, a4 = (a(k, params) for k in (k1, k2, k3, k4))
    return (
        a1 * a4 / (32.0 * np.pi * a2 * a3)
        * np.abs(k1) * np.abs(k4)
        * (np.abs(k1) + np.abs(k4) - 2.0 * np.abs(k3 + k4))
    )


def D2_kernel(k1, k2, k3, k4, params):
    a1, a2, a3, a4 = (a(k, params) for k in (k1, k2, k3, k4))
    return (
        params.gamma * a1 / (32.0 * np.pi * a2 * a3 * a4)
        * np.abs(k1) * np.sign(k4)
        * (np.abs(k1) + np.abs(k4) - np.abs(k3 + k4) - np.abs(k3 + k1))
    )


def D3_kernel(k1, k2, k3, k4, params):
    a1, a2, a3, a4 = (a(k, params) for k in (k1, k2, k3, k4))
    return (
        params.gamma**2 / (128.0 * np.pi * a1 * a2 * a3 * a4)
        * np.sign(k1) * np.sign(k4)
        * (np.abs(k1) + np.abs(k4) - 2.0 * np.abs(k3 + k4))
    )


# Argument orderings and signs of the six D-terms in each T1 part; an entry
# (i, j, l, m) picks (k1, k2, -k3, -k4)[...] by position.
_T1_ORDERS = ((0, 1, 2, 3), (3, 2, 1, 0), (0, 2, 1, 3), (3, 1, 2, 0), (0, 3, 2, 1), (3, 1, 0, 2))
_T1_SIGNS = (
    (-1, -1, -1, -1, 1, 1),
    (1, -1, 1, -1, 1, -1),
    (1, 1, 1, 1, 1, 1),
)


def T1_parts(k1, k2, k3, k4, params):
    """The three parts of the quartic coefficient ``T1`` (signed D-sums)."""
    args = (k1, k2, -np.asarray(k3, dtype=float), -np.asarray(k4, dtype=float))
    out = []
    for kern, signs in zip((D1_kernel, D2_kernel, D3_kernel), _T1_SIGNS):
        total = 0.0
        for sgn, order in zip(signs, _T1_ORDERS):
            total = total + sgn * kern(*(args[i] for i in order), params)
        out.append(total)
    return tuple(out)


def T2_parts(k1, k2, k3, k4, params):
    """The three parts of ``T2``, the coefficient of the cubic-cubic bracket."""
    k1, k2, k3, k4 = (np.asarray(k, dtype=float) for k in (k1, k2, k3, k4))
    W = lambda k: Omega(k, params)  # noqa: E731
    s12 = k1 + k2
    s34 = k3 + k4
    sum12 = S_kernel(-s12, k1, k2, params) + S_kernel(k2, -s12, k1, params) + S_kernel(k1, k2, -s12, params)
    sum34 = S_kernel(-s34, k3, k4, params) + S_kernel(k4, -s34, k3, params) + S_kernel(k3, k4, -s34, params)
    br1 = _checked_inverse(W(k1) + W(k2) + W(-s12), "Omega1+Omega2+Omega(-k1-k2)") + _checked_inverse(
        W(k3) + W(k4) + W(-s34), "Omega3+Omega4+Omega(-k3-k4)"
    )
    t21 = sum12 * sum34 * br1 / (64.0 * np.pi)

    br2 = _checked_inverse(W(k1) + W(k2) - W(s12), "Omega1+Omega2-Omega(k1+k2)") + _checked_inverse(
        W(k3) + W(k4) - W(s34), "Omega3+Omega4-Omega(k3+k4)"
    )
    t22 = -A_kernel(-k1, -k2, s12, params) * A_kernel(-k3, -k4, s34, params) * br2

    br3 = _checked_inverse(W(k3 - k1) + W(k1) - W(k3), "Omega(k3-k1)+Omega1-Omega3") + _checked_inverse(
        W(k2 - k4) + W(k4) - W(k2), "Omega(k2-k4)+Omega4-Omega2"
    )
    t23 = 4.0 * A_kernel(k1 - k3, -k1, k3, params) * A_kernel(k4 - k2, -k4, k2, params) * br3
    return t21, t22, t23


def quartic_kernels(k1, k2, k3, k4, params: PhysicalParams) -> dict:
    """Evaluate every quartic-interaction kernel at one wavenumber quartet.

    Returns
    -------
    dict
        Keys ``S`` (``S_123``), ``A`` (``A_123``), ``D1``, ``D2``, ``D3``
        (at ``(k1, k2, k3, k4)``), ``T1_1``, ``T1_2``, ``T1_3``, ``T1``,
        ``T2_1``, ``T2_2``, ``T2_3``, ``T2`` and ``T = T1 - T2/2``.
    """
    t11, t12, t13 = T1_parts(k1, k2, k3, k4, params)
    t21, t22, t23 = T2_parts(k1, k2, k3, k4, params)
    T1 = t11 + t12 + t13
    T2 = t21 + t22 + t23
    return {
        "S": S_kernel(k1, k2, k3, params),
        "A": A_kernel(k1, k2, k3, params),
        "D1": D1_kernel(k1, k2, k3, k4, params),
        "D2": D2_kernel(k1, k2, k3, k4, params),
        "D3": D3_kernel(k1, k2, k3, k4, params),
        "T1_1": t11,
        "T1_2": t12,
        "T1_3": t13,
        "T1": T1,
        "T2_1": t21,
        "T2_2": t22,
        "T2_3": t23,
        "T2": T2,
        "T": T1 - 0.5 * T2,
    }


def _quartet_orderings(lam):
    # Orderings under which the quartic integral against z1 z2 conj(z3 z4) is unchanged.
    l1, l2, l3, l4 = lam
    out = []
    for p, q in ((l1, l2), (l2, l1)):
        for r, s in ((l3, l4), (l4, l3)):
            out.append((p, q, r, s))
            out.append((r, s, p, q))
    return out


def expansion_residuals(lam, eps: float, params: PhysicalParams) -> dict:
    """Exact quartic kernels minus their modulational expansions.

    The quartet is ``k_j = k0 + eps lam_j`` with ``lam1 + lam2 = lam3 + lam4``.
    Kernels are averaged over the orderings that leave the quartic integral
    unchanged, where ``lam2 + lam3`` averages to ``L = sum(lam)/2``. The
    expansions are ``c0l + eps c0r L`` for ``T1``, ``cjl + eps cjr L`` for
    the first two parts of ``T2`` and ``c3l + eps c3r1 L + eps c3r2 <|lam1 - lam3|>``
    for the third. Residuals are ``O(eps^2)``.

    Returns
    -------
    dict
        Keys ``T1``, ``T2_1``, ``T2_2``, ``T2_3``.
    """
    lam = tuple(float(v) for v in lam)
    if len(lam) != 4 or abs(lam[0] + lam[1] - lam[2] - lam[3]) > 1e-12 * (1 + max(map(abs, lam))):
        raise ConfigurationError("lam must be a quartet with lam1 + lam2 = lam3 + lam4", key="lam")
    if not eps > 0:
        raise ConfigurationError("eps must be positive", key="eps")
    c = compute_coefficients(params)
    k0 = params.k0
    orders = _quartet_orderings(lam)
    acc = np.zeros(4)
    for l in orders:
        k = [k0 + eps * v for v in l]
        acc += np.array([sum(T1_parts(*k, params)), *T2_parts(*k, params)], dtype=float)
    exact = acc / len(orders)
    L = 0.5 * sum(lam)
    gap = float(np.mean([abs(l[0] - l[2]) for l in orders]))
    approx = (
        c.c0l + eps * c.c0r * L,
        c.c1l + eps * c.c1r * L,
        c.c2l + eps * c.c2r * L,
        c.c3l + eps * c.c3r1 * L + eps * c.c3r2 * gap,
    )
    return {key: float(e - a) for key, e, a in zip(("T1", "T2_1", "T2_2", "T2_3"), exact, approx)}


# ------------------------------------------------------------ stability
@dataclass(frozen=True)
class GrowthRate:
    """Benjamin-Feir prediction for one sideband wavenumber."""

    lam: float
    Gamma: float
    alpha: float
    sigma: float
    sigma_over_omega0: float
    unstable: bool


def bf_growth_rate(
    lam,
    B0: float,
    params: PhysicalParams,
    coeffs: Optional[ModelCoefficients] = None,
    epsilon: Optional[float] = None,
):
    """Sideband growth rate of the uniform Stokes envelope.

    ``Gamma = 2 B0^2 (beta0 - eps beta3 |lam|) - g^2/(8 omega0^3) lam^2``,
    ``alpha = g^2/(8 omega0^3) lam^2 Gamma`` and ``sigma = sqrt(alpha)``
    when ``alpha > 0`` (else 0, flagged stable).

    Parameters
    ----------
    lam : float or ndarray
        Sideband wavenumber(s).
    B0 : float
        Envelope amplitude (positive).
    params : PhysicalParams
    coeffs : ModelCoefficients, optional
        Precomputed coefficients for ``params``.
    epsilon : float, optional
        Steepness multiplying the nonlocal term. Defaults to
        ``params.epsilon`` or, if that is unset, ``k0 * A0`` with ``A0``
        from the amplitude relation.

    Returns
    -------
    GrowthRate
        Scalar fields for scalar ``lam``, arrays otherwise.
    """
    if not B0 > 0:
        raise ConfigurationError("B0 must be positive", key="B0")
    c = coeffs if coeffs is not None else compute_coefficients(params)
    if epsilon is None:
        epsilon = params.epsilon if params.epsilon is not None else steepness(B0, params)
    lam_arr = np.asarray(lam, dtype=float)
    Gamma = 2.0 * B0**2 * (c.beta0 - epsilon * c.beta3 * np.abs(lam_arr)) - c.disp2 * lam_arr**2
    alpha = c.disp2 * lam_arr**2 * Gamma
    unstable = alpha > 0
    sigma = np.where(unstable, np.sqrt(np.where(unstable, alpha, 0.0)), 0.0)
    if lam_arr.ndim == 0:
        return GrowthRate(
            float(lam_arr), float(Gamma), float(alpha), float(sigma), float(sigma) / c.omega0, bool(unstable)
        )
    return GrowthRate(lam_arr, Gamma, alpha, sigma, sigma / c.omega0, unstable)
