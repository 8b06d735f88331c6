"""Freeze regression fixtures from the independent oracles.

Run from the repository root:

    python scripts/generate_fixtures.py

Writes into tests/fixtures/:
  rai_agarwal_mu1_nbar4.jsonl  P0 from the overlap-series route, S_x and S_p
                               from number-basis propagation, eps_trunc 1e-14
  oracle_facts.json            collapse/revival windows for q-deformed
                               (lambda=0.1, nbar=9) and the p-squeezing minimum
                               for photon-added m=1, nbar=1
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from qspring.dynamics import SpringConfig
from qspring.nonlinearity import ModulationProfile, PhotonAdded, QDeformed, RaiAgarwal
from qspring.verification import fock_oracle, p0_oracle, write_jsonl

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# collapse/revival scan: q-deformed, chosen to match the acceptance statement
CR_TAU_END = 4.0
CR_STEPS = 8001
EARLY = (0.0, 0.25)
COLLAPSE_SEARCH = (0.25, 2.0)
REVIVAL_SEARCH = (2.5, 4.0)
WINDOW = 0.25


def regression_fixture() -> list[dict]:
    fam = RaiAgarwal(1.0)
    cfg = SpringConfig(omega=1.0, nbar=4.0, eps_trunc=1e-14)
    prof = ModulationProfile(fam)
    tau = np.linspace(0.0, 5.0, 101)
    t = 2 * math.pi * tau / cfg.omega
    p0 = p0_oracle(cfg, prof, t)
    _, sx, sp = fock_oracle(cfg, prof, t)
    return [
        {"family": fam.name, "params": fam.params(), "nbar": cfg.nbar, "omega": cfg.omega,
         "tau": float(tau[i]), "p0": float(p0[i]), "s_x": float(sx[i]), "s_p": float(sp[i])}
        for i in range(tau.size)
    ]


def _window_std(tau, y, lo, hi) -> float:
    m = (tau >= lo) & (tau < hi)
    return float(np.std(y[m]))


def _scan_windows(tau, y, lo, hi, pick):
    starts = np.arange(lo, hi - WINDOW + 1e-12, WINDOW / 2)
    stds = [_window_std(tau, y, s, s + WINDOW) for s in starts]
    i = pick(stds)
    return [float(starts[i]), float(starts[i] + WINDOW)], float(stds[i])


def collapse_revival_facts() -> dict:
    cfg = SpringConfig(nbar=9.0, eps_trunc=1e-14)
    prof = ModulationProfile(QDeformed(0.1))
    tau = np.linspace(0.0, CR_TAU_END, CR_STEPS)
    y = p0_oracle(cfg, prof, 2 * math.pi * tau)
    early = _window_std(tau, y, *EARLY)
    collapse_win, collapse = _scan_windows(tau, y, *COLLAPSE_SEARCH, pick=np.argmin)
    revival_win, revival = _scan_windows(tau, y, *REVIVAL_SEARCH, pick=np.argmax)
    return {
        "family": "q_deformed", "params": {"lambda": 0.1}, "nbar": 9.0, "omega": 1.0,
        "tau_end": CR_TAU_END, "steps": CR_STEPS,
        "early_window": list(EARLY), "collapse_window": collapse_win, "revival_window": revival_win,
        "early_std": early, "collapse_std": collapse, "revival_std": revival,
    }


def p_squeezing_facts() -> dict:
    cfg = SpringConfig(nbar=1.0, eps_trunc=1e-14)
    prof = ModulationProfile(PhotonAdded(1))
    tau = np.linspace(0.0, 50.0, 2000)
    _, _, sp = fock_oracle(cfg, prof, 2 * math.pi * tau)
    i = int(np.argmin(sp))
    return {"family": "photon_added", "params": {"m": 1}, "nbar": 1.0,
            "tau_end": 50.0, "steps": 2000, "min_s_p": float(sp[i]), "argmin_tau": float(tau[i])}


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    write_jsonl(FIXTURES / "rai_agarwal_mu1_nbar4.jsonl", regression_fixture())
    facts = {"collapse_revival": collapse_revival_facts(), "p_squeezing": p_squeezing_facts()}
    with open(FIXTURES / "oracle_facts.json", "w", encoding="utf-8") as fh:
        json.dump(facts, fh, indent=2)
        fh.write("\n")
    print(json.dumps(facts, indent=2))


if __name__ == "__main__":
    main()
