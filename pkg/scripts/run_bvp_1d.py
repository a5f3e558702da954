#!/usr/bin/env python3
"""Boundary-influx problem: a Gaussian flux pulse feeds the positive species through the left wall."""

import sys
from pathlib import Path

from ionfv.cli import main

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "results" / "bvp_1d")
    sys.exit(main(["simulate", "--config", str(ROOT / "configs" / "bvp_1d.json"), "--out", out]))
