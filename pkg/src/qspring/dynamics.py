"""Return amplitude, Poisson weights, return probability and classical limit.

The source of modulation starts in a coherent state with mean occupation
``nbar`` and the oscillator in its unmodulated ground state. Times are in
units of 1/omega; scans elsewhere use tau = omega t / (2 pi).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import pdtrc

from qspring.eigensystem import POLICIES, ModeParameters, OmegaPolicy, mode_parameters, overlap_sq_ground
from qspring.errors import NonPositiveOmega, TruncationCapHit, ValidationError
from qspring.nonlinearity import ModulationProfile, as_profile, omega_real

# below this nbar, exp(-nbar) does not underflow and the plain recurrence is used
_RECURRENCE_NBAR_MAX = 700.0


@dataclass(frozen=True)
class SpringConfig:
    omega: float = 1.0
    nbar: float = 1.0
    eps_trunc: float = 1e-12
    p_max_cap: int = 1024
    omega_policy: OmegaPolicy = "strict"

    def __post_init__(self):
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ValidationError(f"omega must be positive, got {self.omega!r}")
        if not (self.nbar >= 0 and math.isfinite(self.nbar)):
            raise ValidationError(f"nbar must be >= 0, got {self.nbar!r}")
        if not 0 < self.eps_trunc < 1:
            raise ValidationError(f"eps_trunc must lie in (0, 1), got {self.eps_trunc!r}")
        if int(self.p_max_cap) != self.p_max_cap or self.p_max_cap < 1:
            raise ValidationError(f"p_max_cap must be a positive integer, got {self.p_max_cap!r}")
        if self.omega_policy not in POLICIES:
            raise ValidationError(f"omega_policy must be one of {POLICIES}, got {self.omega_policy!r}")


@dataclass(frozen=True)
class AmplitudeA:
    value: complex
    t: float
    p: int | None = None


@dataclass(frozen=True)
class PoissonSupport:
    """Truncated Poisson weights Q(0..P) plus truncation diagnostics."""

    weights: tuple[float, ...]
    residual: float  # exact Poisson mass beyond the support
    cap_hit: bool

    @property
    def size(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(enumerate(self.weights))

    def __len__(self):
        return len(self.weights)


def _poisson_term(nbar: float, p: int, prev: float | None) -> float:
    if nbar == 0.0:
        return 1.0 if p == 0 else 0.0
    if nbar <= _RECURRENCE_NBAR_MAX:
        return math.exp(-nbar) if p == 0 else prev * nbar / p
    return math.exp(p * math.log(nbar) - nbar - math.lgamma(p + 1))


@lru_cache(maxsize=256)
def _poisson_cached(nbar, eps_trunc, p_max_cap, weight) -> PoissonSupport:
    weights = []
    q = None
    p = 0
    while True:
        q = _poisson_term(nbar, p, q)
        weights.append(q)
        mass_done = pdtrc(p, nbar) <= eps_trunc
        weight_done = True
        if weight is not None and mass_done and q * nbar > 0.0:
            # weighted tail: next term times a geometric bound on the rest
            w_p, w_next = weight(p), weight(p + 1)
            ratio = nbar / (p + 1) * (w_next / w_p) if w_p > 0 else math.inf
            tail = q * nbar / (p + 1) * w_next
            weight_done = ratio < 0.5 and tail / (1.0 - ratio) < eps_trunc
        if mass_done and weight_done:
            return PoissonSupport(tuple(weights), float(pdtrc(p, nbar)), False)
        if p + 1 >= p_max_cap:
            return PoissonSupport(tuple(weights), float(pdtrc(p, nbar)), True)
        p += 1


def poisson_weights(
    nbar: float, eps_trunc: float = 1e-12, p_max_cap: int = 1024, weight=None
) -> PoissonSupport:
    """Poisson weights Q(p) = nbar^p e^-nbar / p! for p = 0..P.

    P is the first index whose remaining mass is <= eps_trunc, or the cap.
    If ``weight`` is given (a hashable callable p -> w(p) >= 0) the support is
    extended until the tail of Q(p) w(p) is also below eps_trunc.
    Hitting the cap emits ``TruncationCapHit`` rather than raising.
    """
    if not (nbar >= 0 and math.isfinite(nbar)):
        raise ValidationError(f"nbar must be >= 0, got {nbar!r}")
    if not 0 < eps_trunc < 1:
        raise ValidationError(f"eps_trunc must lie in (0, 1), got {eps_trunc!r}")
    support = _poisson_cached(float(nbar), float(eps_trunc), int(p_max_cap), weight)
    if support.cap_hit:
        warnings.warn(
            f"Poisson support capped at p_max_cap={p_max_cap} (nbar={nbar}, "
            f"residual mass {support.residual:.3e})",
            TruncationCapHit,
            stacklevel=2,
        )
    return support


def _as_times(t) -> tuple[np.ndarray, bool]:
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValidationError("times must be finite and nonnegative")
    return arr, arr.ndim == 0


def _out(arr: np.ndarray, scalar: bool):
    return arr.item() if scalar else arr


def amplitude_closed(Omega_p: float, omega: float, t) -> np.ndarray:
    """Vectorized closed-form A_p over an array of times.

    The phase is exp(-i omega Omega l t) without the zero-point 1/2; only
    |A_p|^2 is ever reported, so the global phase does not matter.
    """
    if not Omega_p > 0:
        raise NonPositiveOmega(Omega_p)
    r = (Omega_p - 1.0) / (Omega_p + 1.0)
    beta_sq = 2.0 * Omega_p / (1.0 + Omega_p)
    z = r * r * np.exp(-2j * omega * Omega_p * np.asarray(t, dtype=float))
    # |z| < 1 keeps 1 - z in the right half-plane, so the principal branch is continuous
    return beta_sq / (math.sqrt(Omega_p) * np.sqrt(1.0 - z))


def a_p_closed(Omega_p: float, omega: float, t: float, p: int | None = None) -> AmplitudeA:
    value = complex(amplitude_closed(Omega_p, omega, _as_times(t)[0]))
    return AmplitudeA(value, float(t), p)


def amplitude_series(Omega_p: float, omega: float, t, tail_tol: float = 1e-15) -> np.ndarray:
    """A_p by direct summation of phase-weighted ground-state overlaps."""
    if not Omega_p > 0:
        raise NonPositiveOmega(Omega_p)
    mode = ModeParameters(omega, Omega_p, 2.0 * Omega_p / (1.0 + Omega_p))
    t = np.asarray(t, dtype=float)
    r2 = mode.squeeze_ratio**2
    phase_step = np.exp(-2j * omega * Omega_p * t)
    phase = np.ones_like(phase_step)
    total = np.zeros_like(phase_step)
    k = 0
    while True:
        c = overlap_sq_ground(mode, 2 * k)
        total = total + c * phase
        # successive even coefficients shrink by less than r^2
        if r2 == 0.0 or c * r2 / (1.0 - r2) < tail_tol:
            return total
        phase = phase * phase_step
        k += 1


def a_p_series(
    Omega_p: float, omega: float, t: float, tail_tol: float = 1e-15, p: int | None = None
) -> AmplitudeA:
    value = complex(amplitude_series(Omega_p, omega, _as_times(t)[0], tail_tol))
    return AmplitudeA(value, float(t), p)


def mode_at(config: SpringConfig, profile: ModulationProfile, p: int) -> ModeParameters:
    """Mode parameters at occupation p, with the offending p attached on failure."""
    try:
        return mode_parameters(config.omega, profile.omega(p), config.omega_policy)
    except NonPositiveOmega as exc:
        raise exc.at(p) from None


def support_for(config: SpringConfig) -> PoissonSupport:
    return poisson_weights(config.nbar, config.eps_trunc, config.p_max_cap)


def p0(config: SpringConfig, profile, t):
    """Return probability P0(t) = sum_p Q(p) |A_p(t)|^2 over the truncated support.

    Accepts scalar or array t. Terms are accumulated in ascending p so the
    result does not depend on how the time grid is split.
    """
    profile = as_profile(profile)
    times, scalar = _as_times(t)
    acc = np.zeros(times.shape)
    for p, q in support_for(config):
        mode = mode_at(config, profile, p)
        a = amplitude_closed(mode.Omega_p, config.omega, times)
        acc += q * (a.real * a.real + a.imag * a.imag)
    return _out(acc, scalar)


def p_cl(config: SpringConfig, profile, t):
    """Classical-source limit: the occupation replaced by its mean nbar.

    Equal to |A_p|^2 with Omega evaluated at p = nbar, a pure oscillation at
    frequency 2 omega Omega(nbar).
    """
    profile = as_profile(profile)
    times, scalar = _as_times(t)
    Omega_a = omega_real(profile, config.nbar)
    mode = mode_parameters(config.omega, Omega_a, config.omega_policy)
    r2 = mode.squeeze_ratio**2
    w_a = config.omega * mode.Omega_p
    denom = mode.Omega_p * np.sqrt(1.0 - 2.0 * r2 * np.cos(2.0 * w_a * times) + r2 * r2)
    return _out(mode.beta_sq**2 / denom, scalar)
