"""Taylor expansion of the deep-water Dirichlet-Neumann operator ``G(eta)``.

With ``D = -i d/dx`` the first terms are

    G0 = |D|
    G1 = D eta D - G0 eta G0
    G2 = -1/2 (|D|^2 eta^2 G0 + G0 eta^2 |D|^2 - 2 G0 eta G0 eta G0)

and all terms follow from the self-adjoint recursion

    G_m xi = -|D|^(m-1) d/dx( eta^m/m! d/dx xi )
             - sum_{l=1..m} |D|^l ( eta^l/l! G_{m-l} xi ),

which reproduces the two explicit terms above. Every product is formed
alias-free on the 3/2 grid and truncated back to the base grid.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericError, UsageError
from .spectral import SpectralGrid


class DnoExpansion:
    """Truncated series ``G(eta) = sum_{j<=order} G_j(eta)``.

    Parameters
    ----------
    grid : SpectralGrid
    order : int
        Truncation order ``m`` (default 6).
    """

    def __init__(self, grid: SpectralGrid, order: int = 6):
        if int(order) != order or order < 0:
            raise UsageError(f"order must be a non-negative integer, got {order!r}")
        self.grid = grid
        self.order = int(order)
        kr = grid.kr.copy()
        kr[grid.nyquist] = 0.0
        self._absk = kr
        self._ik = 1j * kr
        self._absk_pow = [kr**p for p in range(self.order + 1)]

    # ---------------------------------------------------------- spectral core
    def terms_spectral(self, eta_hat: np.ndarray, xi_hat: np.ndarray) -> list:
        """``rfft`` coefficients of ``G_j(eta) xi`` for ``j = 0..order``."""
        return self._expand(eta_hat, xi_hat)[0]

    def _expand(self, eta_hat, xi_hat, eta_padded=None, xix_padded=None):
        # Returns the term list plus the padded eta and d/dx xi, which callers
        # building further nonlinear terms can reuse.
        grid = self.grid
        absk, ik, kp = self._absk, self._ik, self._absk_pow
        g = [absk * xi_hat]
        ep = grid.pad(eta_hat) if eta_padded is None else eta_padded
        xp = grid.pad(ik * xi_hat) if xix_padded is None else xix_padded
        if self.order == 0:
            return g, ep, xp
        pow_p = [None, ep]  # eta^l / l! on the padded grid
        for l in range(2, self.order + 1):
            pow_p.append(grid.pad(grid.unpad(pow_p[-1] * ep) / l))
        gp = [grid.pad(g[0])]
        for m in range(1, self.order + 1):
            # All products needed for G_m go through one stacked transform.
            stack = np.empty((m + 1, ep.size))
            stack[0] = pow_p[m] * xp
            for l in range(1, m + 1):
                stack[l] = pow_p[l] * gp[m - l]
            c = grid.unpad(stack)
            acc = -kp[m - 1] * ik * c[0]
            for l in range(1, m + 1):
                acc -= kp[l] * c[l]
            g.append(acc)
            if m < self.order:
                gp.append(grid.pad(acc))
        return g, ep, xp

    def apply_spectral(self, eta_hat: np.ndarray, xi_hat: np.ndarray):
        """Return ``(G xi, (G - G0) xi)`` as ``rfft`` coefficients.

        The second output is summed from the ``j >= 1`` terms directly so
        that it carries no cancellation error from subtracting ``|D| xi``.
        """
        g = self.terms_spectral(eta_hat, xi_hat)
        corr = np.zeros_like(g[0])
        for gj in g[1:]:
            corr = corr + gj
        total = g[0] + corr
        if not np.all(np.isfinite(total)):
            raise NumericError("non-finite value in the Dirichlet-Neumann expansion")
        return total, corr

    # ----------------------------------------------------------- public API
    def terms(self, eta: np.ndarray, xi: np.ndarray) -> list:
        """Physical-space ``G_j(eta) xi`` for ``j = 0..order`` (recursion)."""
        grid = self.grid
        eta = grid.check(eta, "eta")
        xi = grid.check(xi, "xi")
        out = self.terms_spectral(grid.to_spectral(eta), grid.to_spectral(xi))
        return [grid.to_physical(c) for c in out]

    def term(self, j: int, eta: np.ndarray, xi: np.ndarray) -> np.ndarray:
        """``G_j(eta) xi``.

        ``j <= 2`` uses the explicit operator formulas; higher terms come
        from the recursion.
        """
        if int(j) != j or j < 0:
            raise UsageError(f"term index must be a non-negative integer, got {j!r}")
        if j > self.order:
            raise UsageError(f"term {j} exceeds the truncation order {self.order}")
        grid = self.grid
        eta = grid.check(eta, "eta")
        xi = grid.check(xi, "xi")
        if j <= 2:
            return explicit_term(grid, j, eta, xi)
        return self.terms(eta, xi)[j]

    def apply(self, eta: np.ndarray, xi: np.ndarray) -> np.ndarray:
        """``sum_{j<=order} G_j(eta) xi`` in physical space."""
        grid = self.grid
        eta = grid.check(eta, "eta")
        xi = grid.check(xi, "xi")
        total, _ = self.apply_spectral(grid.to_spectral(eta), grid.to_spectral(xi))
        return grid.to_physical(total)

    def clone(self) -> "DnoExpansion":
        return DnoExpansion(self.grid, self.order)


def explicit_term(grid: SpectralGrid, j: int, eta: np.ndarray, xi: np.ndarray) -> np.ndarray:
    """The closed-form operators ``G0``, ``G1``, ``G2`` applied to ``xi``."""
    dx = lambda f: grid.apply_symbol(f, "dx")  # noqa: E731
    A = lambda f: grid.apply_symbol(f, "|D|")  # noqa: E731
    mul = grid.dealiased_product
    if j == 0:
        return A(xi)
    if j == 1:
        # D eta D with D = -i d/dx is -d/dx eta d/dx
        return -dx(mul(eta, dx(xi))) - A(mul(eta, A(xi)))
    if j == 2:
        eta2 = mul(eta, eta)
        t1 = A(A(mul(eta2, A(xi))))
        t2 = A(mul(eta2, A(A(xi))))
        t3 = A(mul(eta, A(mul(eta, A(xi)))))
        return -0.5 * (t1 + t2 - 2.0 * t3)
    raise UsageError("explicit formulas exist only for j <= 2")

