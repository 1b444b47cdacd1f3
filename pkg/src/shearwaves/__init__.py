"""Deep-water gravity waves on a constant-vorticity current.

Pseudo-spectral full Euler solver, Hamiltonian Dysthe envelope model,
third-order normal-form reconstruction and stability diagnostics.
"""

from .coeffs import (
    GrowthRate,
    ModelCoefficients,
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
from .dno import DnoExpansion, explicit_term
from .envelope import EnvelopeSolver, action, reduced_hamiltonian, stokes_envelope
from .errors import ConfigurationError, DomainError, NumericError, ShearWavesError, UsageError
from .euler import (
    CanonicalState,
    EulerSolver,
    SurfaceState,
    energy_full,
    from_complex_z,
    momentum,
    to_complex_z,
    volume,
    xi_to_zeta,
    zeta_to_xi,
)
from .normalform import (
    FlowState,
    NormalFormFlow,
    envelope_to_surface,
    functionals,
    k3_rhs,
    partial_reconstruct,
    surface_to_envelope,
)
from .spectral import SpectralGrid

__version__ = "0.1.0"

__all__ = [
    "GrowthRate",
    "ModelCoefficients",
    "Omega",
    "PhysicalParams",
    "a",
    "a0_from_b0",
    "b0_from_a0",
    "bf_growth_rate",
    "compute_coefficients",
    "omega",
    "quartic_kernels",
    "steepness",
    "DnoExpansion",
    "explicit_term",
    "EnvelopeSolver",
    "action",
    "reduced_hamiltonian",
    "stokes_envelope",
    "ConfigurationError",
    "DomainError",
    "NumericError",
    "ShearWavesError",
    "UsageError",
    "CanonicalState",
    "EulerSolver",
    "SurfaceState",
    "energy_full",
    "from_complex_z",
    "momentum",
    "to_complex_z",
    "volume",
    "xi_to_zeta",
    "zeta_to_xi",
    "FlowState",
    "NormalFormFlow",
    "envelope_to_surface",
    "functionals",
    "k3_rhs",
    "partial_reconstruct",
    "surface_to_envelope",
    "SpectralGrid",
]
