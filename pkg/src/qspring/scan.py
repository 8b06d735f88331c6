"""Time-grid scans of P0, P_cl, S_x, S_p and their on-disk formats."""
from __future__ import annotations

import io
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from qspring.dynamics import SpringConfig, p0, p_cl, support_for
from qspring.eigensystem import OmegaPolicy
from qspring.errors import ValidationError
from qspring.nonlinearity import CustomSpectrum, ModulationProfile, NonlinearityFamily
from qspring.squeezing import squeezing_series, squeezing_support
from qspring.verification import dumps_record

QUANTITIES = ("p0", "pcl", "sx", "sp")
JSON_KEYS = {"p0": "p0", "pcl": "p_cl", "sx": "s_x", "sp": "s_p"}
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class ScanRequest:
    family: NonlinearityFamily
    nbar: float
    omega: float = 1.0
    tau_start: float = 0.0
    tau_end: float = 10.0
    steps: int = 1001
    quantities: tuple[str, ...] | None = None  # None: everything the family supports
    output_path: str | None = None
    format: str = "csv"
    plot: str | None = None
    eps_trunc: float = 1e-12
    p_max_cap: int = 1024
    omega_policy: OmegaPolicy = "strict"

    def config(self) -> SpringConfig:
        return SpringConfig(self.omega, self.nbar, self.eps_trunc, self.p_max_cap, self.omega_policy)

    def resolved_quantities(self) -> tuple[str, ...]:
        custom = isinstance(self.family, CustomSpectrum)
        if self.quantities is None:
            return tuple(q for q in QUANTITIES if not (custom and q == "pcl"))
        wanted = set(self.quantities)
        unknown = wanted - set(QUANTITIES)
        if unknown:
            raise ValidationError(f"unknown quantities {sorted(unknown)}; choose from {list(QUANTITIES)}")
        if not wanted:
            raise ValidationError("no quantities requested")
        if custom and "pcl" in wanted:
            raise ValidationError("pcl needs a real-argument Omega, which a custom spectrum lacks")
        return tuple(q for q in QUANTITIES if q in wanted)

    def validate(self) -> None:
        self.config()
        if not (math.isfinite(self.tau_start) and math.isfinite(self.tau_end)):
            raise ValidationError("tau bounds must be finite")
        if self.tau_start < 0:
            raise ValidationError(f"tau_start must be >= 0, got {self.tau_start!r}")
        if not self.tau_start < self.tau_end:
            raise ValidationError(f"need tau_start < tau_end, got {self.tau_start!r} >= {self.tau_end!r}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValidationError(f"steps must be an integer >= 2, got {self.steps!r}")
        if self.format not in FORMATS:
            raise ValidationError(f"format must be one of {FORMATS}, got {self.format!r}")
        self.resolved_quantities()


@dataclass
class ScanResult:
    tau: np.ndarray
    columns: dict[str, np.ndarray]
    support_size: int
    residual_mass: float
    squeezing_support_size: int | None = None
    warnings: list[str] = field(default_factory=list)

    def summary(self) -> dict:
        out = {
            "rows": int(self.tau.size),
            "support_size": self.support_size,
            "residual_mass": self.residual_mass,
        }
        if self.squeezing_support_size is not None:
            out["squeezing_support_size"] = self.squeezing_support_size
        out["warnings"] = list(self.warnings)
        return out


def tau_grid(tau_start: float, tau_end: float, steps: int) -> np.ndarray:
    """Uniform grid, both endpoints included; t = 2 pi tau / omega."""
    return np.linspace(tau_start, tau_end, int(steps))


def compute_scan(request: ScanRequest) -> ScanResult:
    request.validate()
    quantities = request.resolved_quantities()
    config = request.config()
    profile = ModulationProfile(request.family)
    tau = tau_grid(request.tau_start, request.tau_end, request.steps)
    t = 2.0 * math.pi * tau / config.omega
    columns: dict[str, np.ndarray] = {}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        support = support_for(config)
        if "p0" in quantities:
            columns["p0"] = p0(config, profile, t)
        if "pcl" in quantities:
            columns["pcl"] = p_cl(config, profile, t)
        sq_size = None
        if "sx" in quantities or "sp" in quantities:
            sq_size = len(squeezing_support(config, profile))
            sx, sp = squeezing_series(config, profile, t)
            if "sx" in quantities:
                columns["sx"] = sx
            if "sp" in quantities:
                columns["sp"] = sp
    messages = list(dict.fromkeys(str(w.message) for w in caught))
    return ScanResult(tau, columns, support.size, support.residual, sq_size, messages)


def _g17(v: float) -> str:
    return format(float(v), ".17g")


def format_csv(result: ScanResult) -> str:
    names = [q for q in QUANTITIES if q in result.columns]
    buf = io.StringIO()
    buf.write(",".join(["tau"] + names) + "\n")
    cols = [result.columns[q] for q in names]
    for i, tau in enumerate(result.tau):
        buf.write(",".join([_g17(tau)] + [_g17(c[i]) for c in cols]) + "\n")
    return buf.getvalue()


def format_jsonl(result: ScanResult, request: ScanRequest) -> str:
    names = [q for q in QUANTITIES if q in result.columns]
    lines = []
    for i, tau in enumerate(result.tau):
        rec = {
            "family": request.family.name,
            "params": request.family.params(),
            "nbar": float(request.nbar),
            "omega": float(request.omega),
            "tau": float(tau),
        }
        for q in names:
            rec[JSON_KEYS[q]] = float(result.columns[q][i])
        lines.append(dumps_record(rec) + "\n")
    return "".join(lines)


def render(result: ScanResult, request: ScanRequest) -> str:
    return format_csv(result) if request.format == "csv" else format_jsonl(result, request)


def run_scan(request: ScanRequest) -> ScanResult:
    """Compute the scan, write it to ``request.output_path`` and optionally plot it."""
    result = compute_scan(request)
    text = render(result, request)
    if request.output_path and request.output_path != "-":
        with open(request.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    if request.plot:
        from qspring.plot import write_line_chart

        labels = {"p0": "P0", "pcl": "P_cl", "sx": "S_x", "sp": "S_p"}
        params = ", ".join(f"{k}={v}" for k, v in request.family.params().items() if k != "e")
        write_line_chart(
            Path(request.plot),
            result.tau,
            {labels[q]: result.columns[q] for q in QUANTITIES if q in result.columns},
            title=f"{request.family.name} {params} nbar={request.nbar}".strip(),
            xlabel="tau = omega t / 2pi",
        )
    return result
