"""Nonlinear quantum optical springs: oscillators whose frequency is set by
the occupation of a quantized source through Omega(n) = (n+1) f(n+1)^2 - n f(n)^2.
"""
from qspring.dynamics import SpringConfig, a_p_closed, a_p_series, p0, p_cl, poisson_weights
from qspring.eigensystem import energy, hermite, mode_parameters, overlap_sq_ground, wavefunction
from qspring.errors import (
    DomainError,
    NonPositiveOmega,
    TruncationCapHit,
    UnsupportedExtension,
    ValidationError,
    ZeroOmega,
)
from qspring.nonlinearity import (
    CustomSpectrum,
    Identity,
    ModulationProfile,
    PhotonAdded,
    QDeformed,
    RaiAgarwal,
    eval_f,
    omega_profile,
    omega_real,
    spectrum_to_family,
)
from qspring.squeezing import s_p, s_x

__all__ = [
    "CustomSpectrum", "DomainError", "Identity", "ModulationProfile", "NonPositiveOmega",
    "PhotonAdded", "QDeformed", "RaiAgarwal", "SpringConfig", "TruncationCapHit",
    "UnsupportedExtension", "ValidationError", "ZeroOmega", "a_p_closed", "a_p_series",
    "energy", "eval_f", "hermite", "mode_parameters", "omega_profile", "omega_real",
    "overlap_sq_ground", "p0", "p_cl", "poisson_weights", "s_p", "s_x",
    "spectrum_to_family", "wavefunction",
]
