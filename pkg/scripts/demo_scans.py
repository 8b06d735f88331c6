"""Run every config in scripts/configs through ``qspring scan``.

    python scripts/demo_scans.py [output_dir]

Writes <name>.csv and <name>.svg per config (default output dir: demo_out/).
The parameter values are illustrative choices, not reproductions of
published figures.
"""
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
    out.mkdir(parents=True, exist_ok=True)
    for cfg in sorted((HERE / "configs").glob("*.cfg")):
        name = cfg.stem
        cmd = [sys.executable, "-m", "qspring", "scan", "--config", str(cfg),
               "--out", str(out / f"{name}.csv"), "--plot", str(out / f"{name}.svg")]
        res = subprocess.run(cmd, capture_output=True, text=True)
        print(f"{name}: exit {res.returncode} {res.stderr.strip()}")


if __name__ == "__main__":
    main()
