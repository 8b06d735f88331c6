"""Brute-force oracles used to cross-check the closed forms.

None of these share a code path with the quantity they check:

* ``overlap_sq_quadrature`` integrates eigenfunctions numerically instead of
  using the Gaussian generating-function formula;
* ``p0_oracle`` sums the overlap series instead of using the closed-form A_p;
* ``fock_oracle`` propagates the ground state under the modulated Hamiltonian
  in a truncated number basis, giving P0, S_x and S_p with no reference to
  either A_p or the Heisenberg-picture quadratures.

Fixture files are JSON lines, one object per time point, floats at 17
significant digits.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np
from scipy.linalg import eigh

from qspring.dynamics import SpringConfig, _as_times, _out, amplitude_series, mode_at, support_for
from qspring.eigensystem import ModeParameters, wavefunction
from qspring.errors import ValidationError
from qspring.nonlinearity import as_profile

MAX_QUADRATURE_LEVEL = 200


@dataclass(frozen=True)
class QuadratureSpec:
    half_width: float = 12.0  # in units of the wider state's length scale
    nodes: int = 4096


def overlap_sq_quadrature(mode: ModeParameters, l: int, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """(integral psi_l^Omega(x) phi_0(x) dx)^2 by composite trapezoid."""
    if not 0 <= l <= MAX_QUADRATURE_LEVEL:
        raise ValidationError(f"quadrature oracle supports 0 <= l <= {MAX_QUADRATURE_LEVEL}, got {l}")
    ground = ModeParameters(mode.omega, 1.0, 1.0)
    # phi_0 is one factor, so its tail beyond +-L bounds the integrand tail
    scale = min(mode.alpha_p, ground.alpha_p)
    x = np.linspace(-spec.half_width / scale, spec.half_width / scale, spec.nodes)
    integrand = wavefunction(mode, l, x) * wavefunction(ground, 0, x)
    return float(np.trapezoid(integrand, x)) ** 2


def p0_oracle(config: SpringConfig, profile, t, tail_tol: float = 1e-15):
    """P0 from the series form of A_p."""
    profile = as_profile(profile)
    times, scalar = _as_times(t)
    acc = np.zeros(times.shape)
    for p, q in support_for(config):
        mode = mode_at(config, profile, p)
        a = amplitude_series(mode.Omega_p, config.omega, times, tail_tol)
        acc += q * np.abs(a) ** 2
    return _out(acc, scalar)


def _ladder(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim)), k=1)


def fock_dimension(Omega: float, cap: int = 1600) -> int:
    """Number-basis size giving ~1e-12 accuracy for the propagation below.

    Empirical: the modulated eigenstates spread over roughly
    max(Omega, 1/Omega) times more unmodulated levels than they occupy.
    Beyond Omega ~ 10 the cap binds and accuracy degrades.
    """
    stretch = max(abs(Omega), 1.0 / abs(Omega))
    return int(min(cap, 40 + math.ceil(130 * stretch)))


def fock_propagator_terms(omega: float, Omega: float, t, dim: int | None = None):
    """Evolve phi_0 under p^2/2 + omega^2 Omega^2 x^2 / 2 in the unmodulated number basis.

    Returns (|<phi_0|psi(t)>|^2, <x^2(t)>/<x^2(0)>, <p^2(t)>/<p^2(0)>) as arrays.
    """
    times = np.atleast_1d(np.asarray(t, dtype=float))
    if dim is None:
        dim = fock_dimension(Omega)
    big = dim + 2  # square x and p before truncating so the top corner is exact
    a = _ladder(big)
    x = (a + a.T) / math.sqrt(2.0 * omega)
    p = 1j * math.sqrt(omega / 2.0) * (a.T - a)
    x2 = (x @ x)[:dim, :dim]
    p2 = (p @ p).real[:dim, :dim]
    h = 0.5 * p2 + 0.5 * (omega * Omega) ** 2 * x2
    energies, vecs = eigh(h)
    c0 = vecs[0, :]  # <n|0> components of phi_0 in the eigenbasis
    psi = vecs @ (c0[:, None] * np.exp(-1j * np.outer(energies, times)))
    ret = np.abs(psi[0, :]) ** 2
    vx = np.einsum("it,ij,jt->t", psi.conj(), x2, psi).real * (2.0 * omega)
    vp = np.einsum("it,ij,jt->t", psi.conj(), p2, psi).real * (2.0 / omega)
    return ret, vx, vp


def fock_oracle(config: SpringConfig, profile, t, dim: int | None = None):
    """P0, S_x, S_p by direct Schroedinger propagation, Poisson-averaged.

    The support and sign policy for P0 follow ``config``; the propagation
    itself only sees Omega^2.
    """
    profile = as_profile(profile)
    times, scalar = _as_times(t)
    flat = np.atleast_1d(times)
    p0 = np.zeros(flat.shape)
    sx = np.zeros(flat.shape)
    sp = np.zeros(flat.shape)
    for p, q in support_for(config):
        mode_at(config, profile, p)
        ret, vx, vp = fock_propagator_terms(config.omega, profile.omega(p), flat, dim)
        p0 += q * ret
        sx += q * vx
        sp += q * vp
    shape = times.shape
    return tuple(_out(v.reshape(shape), scalar) for v in (p0, sx, sp))


def _fmt(value) -> str:
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise ValidationError(f"cannot serialize non-finite value {value!r}")
        return format(float(value), ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    raise TypeError(f"unsupported fixture value {value!r}")


def dumps_record(record: dict) -> str:
    """One JSON object with floats written at 17 significant digits."""
    return _fmt(record)


def write_jsonl(path: str | Path, records: Iterable[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(dumps_record(rec) + "\n")


def read_jsonl(path: str | Path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]

