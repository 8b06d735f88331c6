"""Nonlinearity families f(n) and the modulation profile they induce.

The profile is

    Omega(n) = (n + 1) f(n + 1)**2 - n f(n)**2

so Omega == 1 recovers the linear oscillator. Every family is a frozen
dataclass; ``ModulationProfile`` wraps one and caches what is expensive.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Sequence, Union

from qspring.errors import DomainError, UnsupportedExtension, ValidationError


@dataclass(frozen=True)
class Identity:
    """f(n) = 1, the ordinary harmonic oscillator."""

    name = "identity"

    def params(self) -> dict:
        return {}


@dataclass(frozen=True)
class QDeformed:
    """f(n) = sqrt(sinh(lam n) / (n sinh lam)), q-deformed coherent states."""

    lam: float
    name = "q_deformed"

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValidationError(f"q_deformed requires lambda > 0, got {self.lam!r}")

    def params(self) -> dict:
        return {"lambda": self.lam}


@dataclass(frozen=True)
class PhotonAdded:
    """f(n) = 1 - m/(1 + n); m > 0 for |alpha, m>, m < 0 for |alpha, -m>."""

    m: int
    name = "photon_added"

    def __post_init__(self):
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m == 0:
            raise ValidationError(f"photon_added requires a nonzero integer m, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))

    def params(self) -> dict:
        return {"m": self.m}


@dataclass(frozen=True)
class RaiAgarwal:
    """f(n)**2 = (1/n) sum_{j<n} sqrt(1 + mu j), giving Omega(n) = sqrt(1 + mu n)."""

    mu: float
    name = "rai_agarwal"

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.mu >= 0):
            raise ValidationError(f"rai_agarwal requires mu >= 0, got {self.mu!r}")

    def params(self) -> dict:
        return {"mu": self.mu}


@dataclass(frozen=True)
class CustomSpectrum:
    """Nonlinearity built from a discrete spectrum e_n (units of hbar*omega).

    f(n) = sqrt(e_n / n), hence n f(n)**2 = e_n and Omega(p) = e_{p+1} - e_p.
    """

    e: tuple[float, ...]
    name = "custom"

    def __post_init__(self):
        e = tuple(float(v) for v in self.e)
        if not e:
            raise ValidationError("spectrum is empty")
        if e[0] != 0.0:
            raise ValidationError(f"spectrum must start with e_0 = 0, got {e[0]!r}")
        for n, v in enumerate(e[1:], start=1):
            if not (math.isfinite(v) and v > 0):
                raise ValidationError(f"spectrum requires e_n > 0 for n >= 1, got e_{n} = {v!r}")
        object.__setattr__(self, "e", e)

    def params(self) -> dict:
        return {"e": list(self.e)}


NonlinearityFamily = Union[Identity, QDeformed, PhotonAdded, RaiAgarwal, CustomSpectrum]


def _check_index(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"occupation must be a nonnegative integer, got {n!r}")
    return int(n)


def _ra_partial_sum(mu: float, n: int) -> float:
    return math.fsum(math.sqrt(1.0 + mu * j) for j in range(n))


def eval_f(family: NonlinearityFamily, n: int) -> float:
    """Evaluate the nonlinearity function f(n).

    f(0) is taken as 1 wherever the formula is 0/0 (q-deformed, Rai-Agarwal,
    custom spectrum); it never enters Omega because it is multiplied by n = 0.
    """
    n = _check_index(n)
    if isinstance(family, Identity):
        return 1.0
    if isinstance(family, PhotonAdded):
        return 1.0 - family.m / (1.0 + n)
    if n == 0:
        return 1.0
    if isinstance(family, QDeformed):
        return math.sqrt(math.sinh(family.lam * n) / (n * math.sinh(family.lam)))
    if isinstance(family, RaiAgarwal):
        return math.sqrt(_ra_partial_sum(family.mu, n) / n)
    if isinstance(family, CustomSpectrum):
        if n >= len(family.e):
            raise DomainError(f"n={n} beyond custom spectrum of length {len(family.e)}")
        return math.sqrt(family.e[n] / n)
    raise TypeError(f"unknown nonlinearity family {family!r}")


@dataclass(eq=False)
class ModulationProfile:
    """Omega(p) for a fixed family, with cached prefix sums for Rai-Agarwal.

    Equality and hashing go through the family, so profiles can key caches.
    """

    family: NonlinearityFamily
    _prefix: list = field(default_factory=lambda: [0.0], init=False, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False, compare=False)

    def _n_f_sq(self, n: int) -> float:
        """n * f(n)**2, the 'energy' of level n."""
        fam = self.family
        if n == 0:
            return 0.0
        if isinstance(fam, CustomSpectrum):
            if n >= len(fam.e):
                raise DomainError(
                    f"custom spectrum of length {len(fam.e)} has no level {n}"
                )
            return fam.e[n]
        if isinstance(fam, RaiAgarwal):
            return self._ra_prefix(n)
        f = eval_f(fam, n)
        return n * f * f

    def _ra_prefix(self, n: int) -> float:
        prefix = self._prefix
        if n >= len(prefix):
            with self._lock:
                mu = self.family.mu
                while len(prefix) <= n:
                    j = len(prefix) - 1
                    prefix.append(prefix[-1] + math.sqrt(1.0 + mu * j))
        return prefix[n]

    def __eq__(self, other):
        return isinstance(other, ModulationProfile) and other.family == self.family

    def __hash__(self):
        return hash((ModulationProfile, self.family))

    def f(self, n: int) -> float:
        return eval_f(self.family, n)

    def omega(self, p: int) -> float:
        return omega_profile(self, p)

    def omega_real(self, x: float) -> float:
        return omega_real(self, x)

    @property
    def has_real_extension(self) -> bool:
        return not isinstance(self.family, CustomSpectrum)


def as_profile(obj) -> ModulationProfile:
    return obj if isinstance(obj, ModulationProfile) else ModulationProfile(obj)


def omega_profile(profile: ModulationProfile | NonlinearityFamily, p: int) -> float:
    """Omega(p) = (p+1) f(p+1)**2 - p f(p)**2 at integer occupation.

    Can be zero or negative for photon-added families with m >= 2; what to do
    about that is decided by the eigenproblem, not here.
    """
    profile = as_profile(profile)
    p = _check_index(p)
    if isinstance(profile.family, Identity):
        return 1.0
    return profile._n_f_sq(p + 1) - profile._n_f_sq(p)


def _pacs_closed(m: int, x: float) -> float:
    return (x + 1) * ((x + 2 - m) / (x + 2)) ** 2 - x * ((x + 1 - m) / (x + 1)) ** 2


def omega_real(profile: ModulationProfile | NonlinearityFamily, x: float) -> float:
    """Closed-form Omega at a real occupation (used for the classical source)."""
    profile = as_profile(profile)
    fam = profile.family
    x = float(x)
    if not (x >= 0 and math.isfinite(x)):
        raise DomainError(f"real occupation must be finite and >= 0, got {x!r}")
    if isinstance(fam, Identity):
        return 1.0
    if isinstance(fam, RaiAgarwal):
        return math.sqrt(1.0 + fam.mu * x)
    if isinstance(fam, QDeformed):
        return math.cosh(fam.lam * (2 * x + 1) / 2) / math.cosh(fam.lam / 2)
    if isinstance(fam, PhotonAdded):
        return _pacs_closed(fam.m, x)
    if isinstance(fam, CustomSpectrum):
        raise UnsupportedExtension("custom spectrum has no real-argument extension of Omega")
    raise TypeError(f"unknown nonlinearity family {fam!r}")


def spectrum_to_family(e: Sequence[float]) -> CustomSpectrum:
    """Nonlinearity of a solvable system with known discrete spectrum e_n."""
    return CustomSpectrum(tuple(e))


def make_family(name: str, **params) -> NonlinearityFamily:
    """Build a family from a CLI-style name and keyword parameters."""
    key = name.strip().lower().replace("-", "_")
    try:
        if key == "identity":
            return Identity()
        if key in ("q_deformed", "q"):
            return QDeformed(float(_require(params, "lam", key)))
        if key in ("photon_added", "pacs"):
            return PhotonAdded(int(_require(params, "m", key)))
        if key in ("rai_agarwal", "ra"):
            return RaiAgarwal(float(_require(params, "mu", key)))
        if key in ("custom", "spectrum"):
            return spectrum_to_family(_require(params, "e", key))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(str(exc)) from exc
    raise ValidationError(f"unknown family {name!r}")


def _require(params: dict, key: str, family: str):
    value = params.get(key)
    if value is None:
        raise ValidationError(f"family {family} requires parameter {key}")
    return value
