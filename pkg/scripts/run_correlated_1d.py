#!/usr/bin/env python3
"""Screened electrostatic variant at the default correlation length."""

import sys
from pathlib import Path

from ionfv.cli import main

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "results" / "correlated_1d")
    sys.exit(main(["simulate", "--config", str(ROOT / "configs" / "correlated_1d.json"), "--out", out]))
