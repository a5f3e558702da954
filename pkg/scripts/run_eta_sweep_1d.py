#!/usr/bin/env python3
"""Finite-size effect in 1D: steady states for a ladder of repulsion
strengths eta; stronger repulsion flattens the equilibrium peaks."""

import sys
from pathlib import Path

from ionfv.cli import main

ROOT = Path(__file__).resolve().parent.parent
ETAS = "0,0.00390625,0.0078125,0.015625,0.03125,0.0625,0.125,0.25,0.5"

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "results" / "eta_sweep_1d")
    sys.exit(
        main(
            [
                "sweep",
                "--config", str(ROOT / "configs" / "steady_1d.json"),
                "--param", "steric.eta",
                "--values", ETAS,
                "--out", out,
            ]
        )
    )
