#!/usr/bin/env python3
"""Constant electric field of strength 2 drives the charges to opposite walls."""

import sys
from pathlib import Path

from ionfv.cli import main

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "results" / "efield_1d")
    sys.exit(main(["simulate", "--config", str(ROOT / "configs" / "efield_1d.json"), "--out", out]))
