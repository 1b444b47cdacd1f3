"""Periodic pseudo-spectral kernel on [0, 2*pi).

Fields are plain numpy arrays of length ``N`` sampled at ``x_j = 2*pi*j/N``.
Real fields are transformed with ``rfft`` and complex ones with ``fft``; both
use the forward normalisation, so ``f_hat[k]`` is the Fourier coefficient
``(1/N) * sum_j f_j exp(-i k x_j)`` and a pure mode ``cos(k x)`` has
coefficients of size 1/2.

The Nyquist mode is always discarded by multipliers and products: odd
symbols (Hilbert transform, derivative) have no real-valued meaning there,
and the fields used in this package never carry energy at ``N/2``.
"""

from __future__ import annotations

from typing import Callable, Union

import numpy as np
from scipy import fft as sfft

from .errors import ConfigurationError, NumericError

TWO_PI = 2.0 * np.pi

# Canonical symbol names and the aliases accepted for them.
_SYMBOL_ALIASES = {
    "H": "H",
    "hilbert": "H",
    "|D|": "absD",
    "absD": "absD",
    "abs_d": "absD",
    "|D|^-1": "absD_inv",
    "absD_inv": "absD_inv",
    "inv_abs_d": "absD_inv",
    "dx": "dx",
    "ddx": "dx",
    "dx^-1": "dx_inv",
    "dx_inv": "dx_inv",
    "a": "a",
    "a(D)": "a",
    "a^-1": "a_inv",
    "a_inv": "a_inv",
    "a(D)^-1": "a_inv",
    "omega": "omega",
    "omega(D)": "omega",
    "identity": "identity",
    "I": "identity",
}

_NEEDS_PARAMS = {"a", "a_inv", "omega"}

SymbolLike = Union[str, Callable[[np.ndarray], np.ndarray], np.ndarray]


def symbol_values(name: str, k: np.ndarray, params=None) -> np.ndarray:
    """Evaluate a named Fourier multiplier at integer wavenumbers ``k``.

    Parameters
    ----------
    name : str
        One of ``H``, ``|D|``, ``|D|^-1``, ``dx``, ``dx^-1``, ``a``,
        ``a^-1``, ``omega``, ``identity`` (or an accepted alias).
    k : ndarray
        Wavenumbers.
    params : object, optional
        Anything with attributes ``g`` and ``gamma``; required by ``a``,
        ``a^-1`` and ``omega``.

    Returns
    -------
    ndarray
        Multiplier values. ``sgn(0) = 0`` and every symbol with a negative
        power of ``k`` or ``|k|`` is zero at ``k = 0``; ``a`` is also zeroed
        there since it is only applied to zero-mean fields.
    """
    try:
        key = _SYMBOL_ALIASES[name]
    except (KeyError, TypeError):
        raise ConfigurationError(f"unknown symbol {name!r}", key="symbol") from None
    k = np.asarray(k, dtype=float)
    absk = np.abs(k)
    nz = absk > 0
    if key in _NEEDS_PARAMS and params is None:
        raise ConfigurationError(f"symbol {name!r} needs physical parameters", key="symbol")

    if key == "identity":
        return np.ones_like(k, dtype=complex)
    if key == "H":
        return -1j * np.sign(k)
    if key == "absD":
        return absk.astype(complex)
    if key == "dx":
        return 1j * k
    out = np.zeros_like(k, dtype=complex)
    if key == "absD_inv":
        out[nz] = 1.0 / absk[nz]
        return out
    if key == "dx_inv":
        out[nz] = 1.0 / (1j * k[nz])
        return out
    g, gamma = float(params.g), float(params.gamma)
    om = np.sqrt(0.25 * gamma**2 + g * absk)
    if key == "omega":
        return om.astype(complex)
    if key == "a":
        out[nz] = np.sqrt(om[nz] / absk[nz])
        return out
    # a_inv
    out[nz] = np.sqrt(absk[nz] / om[nz])
    return out


class SpectralGrid:
    """Uniform periodic grid on [0, 2*pi) with ``n_nodes`` collocation points.

    Parameters
    ----------
    n_nodes : int
        Number of nodes; a power of two, at least 16.

    Attributes
    ----------
    x : ndarray
        Node positions ``2*pi*j/N``.
    k : ndarray
        Integer wavenumbers in standard FFT order (``-N/2 .. N/2-1``).
    kr : ndarray
        Non-negative wavenumbers ``0 .. N/2`` matching ``rfft`` output.
    n_padded : int
        Size of the 3/2-padded grid used for alias-free quadratic products.
    """

    def __init__(self, n_nodes: int):
        n = int(n_nodes)
        if n != n_nodes or n < 16 or n & (n - 1):
            raise ConfigurationError(
                f"n_nodes must be a power of two >= 16, got {n_nodes!r}", key="n_nodes"
            )
        self.n = n
        self.length = TWO_PI
        self.dx = TWO_PI / n
        self.x = self.dx * np.arange(n)
        self.k = np.fft.fftfreq(n, 1.0 / n)
        self.kr = np.arange(n // 2 + 1, dtype=float)
        self.n_padded = 3 * n // 2
        self.nyquist = n // 2
        self._symbol_cache: dict = {}

    # ------------------------------------------------------------------ basics
    def __eq__(self, other):
        return isinstance(other, SpectralGrid) and other.n == self.n

    def __hash__(self):
        return hash(("SpectralGrid", self.n))

    def __repr__(self):
        return f"SpectralGrid(n_nodes={self.n})"

    def check(self, f: np.ndarray, name: str = "field") -> np.ndarray:
        """Validate shape and finiteness of a grid function."""
        f = np.asarray(f)
        if f.shape != (self.n,):
            raise ConfigurationError(
                f"{name} has shape {f.shape}, grid expects ({self.n},)", key="n_nodes"
            )
        if not np.all(np.isfinite(f)):
            raise NumericError(f"non-finite values in {name}")
        return f

    # -------------------------------------------------------------- transforms
    def to_spectral(self, f: np.ndarray) -> np.ndarray:
        """Forward-normalised coefficients: ``rfft`` for real, ``fft`` for complex."""
        f = np.asarray(f)
        if np.iscomplexobj(f):
            return sfft.fft(f, norm="forward")
        return sfft.rfft(f, norm="forward")

    def to_physical(self, c: np.ndarray) -> np.ndarray:
        """Inverse of :meth:`to_spectral` (dispatches on coefficient length)."""
        c = np.asarray(c)
        if c.shape[-1] == self.n // 2 + 1:
            return sfft.irfft(c, n=self.n, norm="forward")
        return sfft.ifft(c, norm="forward")

    def rsymbol(self, symbol: SymbolLike, params=None) -> np.ndarray:
        """Multiplier on the ``rfft`` wavenumbers with the Nyquist entry zeroed."""
        key = None
        if isinstance(symbol, str):
            key = (symbol, None if params is None else (float(params.g), float(params.gamma)))
            cached = self._symbol_cache.get(key)
            if cached is not None:
                return cached
            m = symbol_values(symbol, self.kr, params)
        elif callable(symbol):
            m = np.asarray(symbol(self.kr), dtype=complex) * np.ones_like(self.kr)
        else:
            m = np.asarray(symbol, dtype=complex)
            if m.shape != self.kr.shape:
                raise ConfigurationError("multiplier array does not match the grid", key="symbol")
            m = m.copy()
        m[self.nyquist] = 0.0
        if key is not None:
            m.setflags(write=False)
            self._symbol_cache[key] = m
        return m

    def csymbol(self, symbol: SymbolLike, params=None) -> np.ndarray:
        """Multiplier on the full FFT wavenumbers with the Nyquist entry zeroed."""
        if isinstance(symbol, str):
            m = symbol_values(symbol, self.k, params)
        elif callable(symbol):
            m = np.asarray(symbol(self.k), dtype=complex) * np.ones_like(self.k)
        else:
            m = np.asarray(symbol, dtype=complex)
            if m.shape != self.k.shape:
                raise ConfigurationError("multiplier array does not match the grid", key="symbol")
            m = m.copy()
        m[self.nyquist] = 0.0
        return m

    def apply_symbol(self, f: np.ndarray, symbol: SymbolLike, params=None) -> np.ndarray:
        """Multiply the spectral coefficients of ``f`` by a Fourier multiplier.

        Parameters
        ----------
        f : ndarray
            Real or complex grid function.
        symbol : str, callable or ndarray
            A named symbol (see :func:`symbol_values`), a callable ``k -> m(k)``
            evaluated at integer wavenumbers, or a precomputed array.
        params : object, optional
            Physical parameters for ``a``, ``a^-1`` and ``omega``.

        Returns
        -------
        ndarray
            Real when ``f`` is real and the symbol satisfies
            ``m(-k) = conj(m(k))``; complex otherwise.
        """
        f = self.check(f)
        if isinstance(symbol, str):
            hermitian = True
        else:
            mc = self.csymbol(symbol, params)
            mneg = self.csymbol(symbol, params)[(-np.arange(self.n)) % self.n]
            hermitian = np.allclose(mneg, np.conj(mc), rtol=1e-14, atol=1e-300)
            mneg[self.nyquist] = mc[self.nyquist] = 0.0
        if not np.iscomplexobj(f) and hermitian:
            m = self.rsymbol(symbol, params)
            return sfft.irfft(m * sfft.rfft(f, norm="forward"), n=self.n, norm="forward")
        m = self.csymbol(symbol, params)
        return sfft.ifft(m * sfft.fft(f, norm="forward"), norm="forward")

    # ---------------------------------------------------------------- padding
    def pad(self, c: np.ndarray) -> np.ndarray:
        """Physical values on the 3/2 grid of a field given by ``rfft`` coefficients.

        Stacked coefficient rows (2-D input) are handled in one call.
        """
        c = np.asarray(c)
        cp = np.zeros(c.shape[:-1] + (self.n_padded // 2 + 1,), dtype=complex)
        cp[..., : self.nyquist] = c[..., : self.nyquist]
        return sfft.irfft(cp, n=self.n_padded, axis=-1, norm="forward")

    def unpad(self, fp: np.ndarray) -> np.ndarray:
        """``rfft`` coefficients (truncated to the base grid) of a 3/2-grid field.

        A 2-D input is treated as a stack of fields along the last axis and
        transformed in one call.
        """
        cp = sfft.rfft(fp, axis=-1, norm="forward")
        c = np.empty(cp.shape[:-1] + (self.nyquist + 1,), dtype=complex)
        c[..., : self.nyquist] = cp[..., : self.nyquist]
        c[..., self.nyquist] = 0.0
        return c

    def pad_complex(self, c: np.ndarray) -> np.ndarray:
        """Complex-field analogue of :meth:`pad` (``c`` in full FFT order)."""
        n, m = self.n, self.n_padded
        cp = np.zeros(m, dtype=complex)
        h = n // 2
        cp[:h] = c[:h]
        cp[m - h + 1 :] = c[h + 1 :]
        return sfft.ifft(cp, norm="forward")

    def unpad_complex(self, fp: np.ndarray) -> np.ndarray:
        """Complex-field analogue of :meth:`unpad`."""
        n, m = self.n, self.n_padded
        cp = sfft.fft(fp, norm="forward")
        h = n // 2
        c = np.zeros(n, dtype=complex)
        c[:h] = cp[:h]
        c[h + 1 :] = cp[m - h + 1 :]
        return c

    def dealiased_product(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        """Alias-free product of two grid functions (3/2 zero padding).

        The 3/2 padding is the zero-padding form of the 2/3 rule: the exact
        product of two fields band-limited to ``|k| < N/2`` is formed on a
        grid of ``3N/2`` nodes and truncated back, so no aliased energy
        reaches the retained modes.
        """
        f = np.asarray(f)
        g = np.asarray(g)
        if f.shape != (self.n,) or g.shape != (self.n,):
            raise ConfigurationError(
                f"grid mismatch: shapes {f.shape} and {g.shape} on a grid of {self.n}",
                key="n_nodes",
            )
        self.check(f, "f")
        self.check(g, "g")
        if np.iscomplexobj(f) or np.iscomplexobj(g):
            fp = self.pad_complex(sfft.fft(f, norm="forward"))
            gp = self.pad_complex(sfft.fft(g, norm="forward"))
            return sfft.ifft(self.unpad_complex(fp * gp), norm="forward")
        fp = self.pad(sfft.rfft(f, norm="forward"))
        gp = self.pad(sfft.rfft(g, norm="forward"))
        return sfft.irfft(self.unpad(fp * gp), n=self.n, norm="forward")

    # ------------------------------------------------------------- quadrature
    def integrate(self, f: np.ndarray):
        """Trapezoidal rule over the periodic cell (equal to ``2*pi*mean``)."""
        return self.dx * np.sum(f)

    def inner(self, f: np.ndarray, g: np.ndarray):
        """Trapezoid value of ``int f * conj(g) dx``."""
        return self.integrate(f * np.conj(g))

    def spectral_inner(self, f: np.ndarray, g: np.ndarray):
        """Parseval form ``2*pi * sum_k f_k conj(g_k)`` over all wavenumbers."""
        fc = sfft.fft(np.asarray(f), norm="forward")
        gc = sfft.fft(np.asarray(g), norm="forward")
        return TWO_PI * np.sum(fc * np.conj(gc))

    def norm(self, f: np.ndarray) -> float:
        """Trapezoid L2 norm ``sqrt(int |f|^2 dx)``."""
        return float(np.sqrt(self.integrate(np.abs(f) ** 2)))

    def mean_mode(self, f: np.ndarray) -> complex:
        """The ``k = 0`` Fourier coefficient."""
        return complex(np.mean(f))
