#!/usr/bin/env python3
"""Correlation-length sweep of the screened electrostatic variant;
larger lengths bind the mixture less tightly."""

import sys
from pathlib import Path

from ionfv.cli import main

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "results" / "correlated_sweep")
    sys.exit(
        main(
            [
                "sweep",
                "--config", str(ROOT / "configs" / "correlated_1d.json"),
                "--param", "correlated.correlation_length",
                "--values", "0.015625,1,7.44",
                "--out", out,
            ]
        )
    )
