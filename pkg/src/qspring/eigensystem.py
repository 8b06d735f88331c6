"""Eigenstructure of the oscillator at fixed source occupation p.

Natural units hbar = m = 1. At occupation p the oscillator has frequency
omega * Omega(p); its eigenfunctions are the usual Hermite functions with
inverse length alpha_p = sqrt(omega * Omega(p)).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np

from qspring.errors import NegativeOmegaWarning, NonPositiveOmega, ValidationError, ZeroOmega

OmegaPolicy = Literal["strict", "absolute"]
POLICIES = ("strict", "absolute")

# (2k)!/(4^k (k!)^2) switches to log-gamma beyond this k
_LOG_DOMAIN_K = 16


@dataclass(frozen=True)
class ModeParameters:
    omega: float
    Omega_p: float
    beta_sq: float
    flipped: bool = False  # Omega_p was negative and replaced by |Omega_p|

    @property
    def alpha_p(self) -> float:
        return math.sqrt(self.omega * self.Omega_p)

    @property
    def squeeze_ratio(self) -> float:
        """beta_sq - 1 = (Omega - 1)/(Omega + 1), always inside (-1, 1)."""
        return (self.Omega_p - 1.0) / (self.Omega_p + 1.0)


def resolve_omega(Omega_p: float, policy: OmegaPolicy = "strict") -> tuple[float, bool]:
    """Apply the Omega <= 0 policy; return (effective Omega, flipped)."""
    if policy not in POLICIES:
        raise ValidationError(f"omega_policy must be one of {POLICIES}, got {policy!r}")
    if Omega_p == 0:
        raise ZeroOmega(Omega_p)
    if Omega_p > 0:
        return float(Omega_p), False
    if policy == "strict":
        raise NonPositiveOmega(Omega_p)
    return -float(Omega_p), True


def mode_parameters(omega: float, Omega_p: float, policy: OmegaPolicy = "strict") -> ModeParameters:
    if not (omega > 0 and math.isfinite(omega)):
        raise ValidationError(f"omega must be positive, got {omega!r}")
    eff, flipped = resolve_omega(Omega_p, policy)
    if flipped:
        warnings.warn(
            f"Omega={Omega_p!r} replaced by {eff!r} (absolute policy)",
            NegativeOmegaWarning,
            stacklevel=2,
        )
    return ModeParameters(float(omega), eff, 2.0 * eff / (1.0 + eff), flipped)


def energy(mode: ModeParameters, n: int) -> float:
    return mode.omega * mode.Omega_p * (n + 0.5)


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) by the three-term recurrence."""
    if n < 0:
        raise ValidationError(f"Hermite order must be >= 0, got {n}")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def hermite_functions(n_max: int, xi) -> np.ndarray:
    """Normalized Hermite functions h_0..h_{n_max} at dimensionless xi.

    Uses the normalized recurrence
        h_{k+1} = sqrt(2/(k+1)) xi h_k - sqrt(k/(k+1)) h_{k-1},
    which stays in range for orders where H_n itself overflows.
    Returns an array of shape (n_max + 1, *xi.shape).
    """
    xi = np.asarray(xi, dtype=float)
    out = np.empty((n_max + 1,) + xi.shape)
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * xi * xi)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * xi * out[0]
    for k in range(1, n_max):
        out[k + 1] = math.sqrt(2.0 / (k + 1)) * xi * out[k] - math.sqrt(k / (k + 1)) * out[k - 1]
    return out


def wavefunction(mode: ModeParameters, n: int, x):
    """Normalized eigenfunction psi_n of the oscillator with frequency omega*Omega_p."""
    a = mode.alpha_p
    psi = math.sqrt(a) * hermite_functions(n, a * np.asarray(x, dtype=float))[n]
    return psi if psi.ndim else float(psi)


def central_binomial_ratio(k: int) -> float:
    """(2k)! / (4^k (k!)^2), in log domain for large k."""
    if k <= _LOG_DOMAIN_K:
        return math.comb(2 * k, k) / 4.0**k
    return math.exp(math.lgamma(2 * k + 1) - 2 * math.lgamma(k + 1) - 2 * k * math.log(2.0))


def overlap_sq_ground(mode: ModeParameters, l: int) -> float:
    """|<psi_l^p | phi_0>|^2 against the unmodulated ground state.

    From the two-Gaussian generating function: zero for odd l, and for l = 2k

        (beta^2 / sqrt(Omega)) * (2k)!/(4^k (k!)^2) * (beta^2 - 1)^(2k).
    """
    if l < 0:
        raise ValidationError(f"level must be >= 0, got {l}")
    if l % 2:
        return 0.0
    k = l // 2
    r2 = mode.squeeze_ratio**2
    c0 = mode.beta_sq / math.sqrt(mode.Omega_p)
    if k == 0:
        return c0
    if r2 == 0.0:
        return 0.0
    if k <= _LOG_DOMAIN_K:
        return c0 * central_binomial_ratio(k) * r2**k
    log_term = (
        math.lgamma(2 * k + 1) - 2 * math.lgamma(k + 1) - 2 * k * math.log(2.0) + k * math.log(r2)
    )
    return c0 * math.exp(log_term)
