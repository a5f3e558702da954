#!/usr/bin/env python3
"""Planar two-species steady state with logarithmic electrostatics."""

import sys
from pathlib import Path

from ionfv.cli import main

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "results" / "steady_2d")
    sys.exit(main(["simulate", "--config", str(ROOT / "configs" / "steady_2d.json"), "--out", out]))
