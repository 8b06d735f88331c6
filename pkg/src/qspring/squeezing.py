"""Quadrature squeezing parameters S_x(t), S_p(t).

Both are Poisson-weighted sums over the source occupation n:

    S_x = 1 - sum_n Q(n) sin^2(omega Omega(n) t) (1 - 1/Omega(n)^2)
    S_p = 1 + sum_n Q(n) sin^2(omega Omega(n) t) (Omega(n)^2 - 1)

S_x < 1 (S_p < 1) signals x- (p-) quadrature squeezing. Omega enters only
squared, so the sign policy matters only at Omega = 0.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qspring.dynamics import SpringConfig, _as_times, _out, poisson_weights
from qspring.errors import ZeroOmega
from qspring.nonlinearity import ModulationProfile, as_profile


@dataclass(frozen=True)
class SqueezingPoint:
    t: float
    s_x: float
    s_p: float


@dataclass(frozen=True)
class _SummandBound:
    """max(1, Omega^2, Omega^-2): bounds both summands' Omega factors."""

    profile: ModulationProfile

    def __call__(self, n: int) -> float:
        om2 = self.profile.omega(n) ** 2
        if om2 == 0.0:
            raise ZeroOmega(0.0, n)
        return max(1.0, om2, 1.0 / om2)


def squeezing_support(config: SpringConfig, profile) -> list[tuple[int, float, float]]:
    """(n, Q(n), Omega(n)) over a support whose weighted tail is below eps_trunc.

    S_p grows like Omega^2, exponentially for q-deformed families, so plain
    Poisson-mass truncation would under-resolve it.
    """
    profile = as_profile(profile)
    support = poisson_weights(
        config.nbar, config.eps_trunc, config.p_max_cap, weight=_SummandBound(profile)
    )
    rows = []
    for n, q in support:
        om = profile.omega(n)
        if om == 0.0:
            raise ZeroOmega(om, n)
        rows.append((n, q, om))
    return rows


def _sums(config: SpringConfig, profile, t):
    times, scalar = _as_times(t)
    sx = np.zeros(times.shape)
    sp = np.zeros(times.shape)
    for _, q, om in squeezing_support(config, profile):
        s2 = np.sin(config.omega * om * times) ** 2
        om2 = om * om
        sx += q * s2 * (1.0 - 1.0 / om2)
        sp += q * s2 * (om2 - 1.0)
    return times, scalar, sx, sp


def s_x(config: SpringConfig, profile, t):
    times, scalar, sx, _ = _sums(config, profile, t)
    return _out(1.0 - sx, scalar)


def s_p(config: SpringConfig, profile, t):
    times, scalar, _, sp = _sums(config, profile, t)
    return _out(1.0 + sp, scalar)


def squeezing_series(config: SpringConfig, profile, t) -> tuple[np.ndarray, np.ndarray]:
    """S_x and S_p over an array of times in one pass."""
    times, scalar, sx, sp = _sums(config, profile, t)
    return _out(1.0 - sx, scalar), _out(1.0 + sp, scalar)


def squeezing_point(config: SpringConfig, profile, t: float) -> SqueezingPoint:
    sx, sp = squeezing_series(config, profile, float(t))
    return SqueezingPoint(float(t), sx, sp)
