"""Quantum-walk entanglement laboratory.

Simulates coin-position entanglement of the discrete-time quantum walk on a
1D lattice, computes its long-time asymptotic value by momentum-space spectral
projection, and provides Bloch-sphere sweeps, simulated-vs-asymptotic
comparisons, and power-law fits of the entanglement decay with initial
dispersion.
"""

from .analysis import (
    ComparisonReport,
    PowerLawFit,
    SweepGrid,
    SweepResult,
    asymptote_offset,
    average_trace,
    compare,
    family_profile,
    fit_power_law,
    grid_from_step,
    paper_grid,
    sweep_asymptotic,
    sweep_simulated,
)
from .core import (
    BlochAngles,
    CoinMoments,
    Spinor,
    binary_entropy,
    delta_from_moments,
    entropy_from_delta,
    entropy_from_moments,
    fourier_coin,
    hadamard_coin,
    spin_from_angles,
)
from .errors import (
    CapacityError,
    ConvergenceError,
    DomainError,
    FitError,
    NumericalError,
    QwalkError,
)
from .kspace import (
    LOCAL_F,
    AsymptoticMoments,
    CharacteristicResult,
    CoinSpectrum,
    DelocalizationFactor,
    DelocalizedForm,
    LocalForm,
    QuadratureSpec,
    asymptotic_moments,
    characteristic,
    closed_delta,
    coin_spectrum,
    dispersion,
    evolve_k_moments,
    extract_f,
    f_interpolation,
    k_amplitudes,
    max_entanglement_beta,
    quadrature,
)
from .lattice import (
    EntanglementRecord,
    Gaussian,
    InitialProfile,
    Local,
    Rectangular,
    WalkerState,
    build_initial,
    coin_moments,
    evolve,
    evolve_basis,
    position_distribution,
    profile_weights,
    sigma_to_a,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticMoments",
    "BlochAngles",
    "CapacityError",
    "CharacteristicResult",
    "CoinMoments",
    "CoinSpectrum",
    "ComparisonReport",
    "ConvergenceError",
    "DelocalizationFactor",
    "DelocalizedForm",
    "DomainError",
    "EntanglementRecord",
    "FitError",
    "Gaussian",
    "InitialProfile",
    "LOCAL_F",
    "Local",
    "LocalForm",
    "NumericalError",
    "PowerLawFit",
    "QuadratureSpec",
    "QwalkError",
    "Rectangular",
    "Spinor",
    "SweepGrid",
    "SweepResult",
    "WalkerState",
    "asymptote_offset",
    "asymptotic_moments",
    "average_trace",
    "binary_entropy",
    "build_initial",
    "characteristic",
    "closed_delta",
    "coin_moments",
    "coin_spectrum",
    "compare",
    "delta_from_moments",
    "dispersion",
    "entropy_from_delta",
    "entropy_from_moments",
    "evolve",
    "evolve_basis",
    "evolve_k_moments",
    "extract_f",
    "f_interpolation",
    "family_profile",
    "fit_power_law",
    "fourier_coin",
    "grid_from_step",
    "hadamard_coin",
    "k_amplitudes",
    "max_entanglement_beta",
    "paper_grid",
    "position_distribution",
    "profile_weights",
    "quadrature",
    "sigma_to_a",
    "spin_from_angles",
    "step",
    "sweep_asymptotic",
    "sweep_simulated",
]
