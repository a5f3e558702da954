#!/usr/bin/env python3
"""Transport of two oppositely charged species toward a shared steady
state: snapshots every time unit plus the energy/dissipation series."""

import sys
from pathlib import Path

from ionfv.cli import main

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "results" / "steady_1d")
    sys.exit(main(["simulate", "--config", str(ROOT / "configs" / "steady_1d.json"), "--out", out]))
