#!/usr/bin/env python3
"""Grid refinement study: ladder of meshes against a fine reference at
t = 1, writing the error table and fitted log-log slopes."""

import sys
from pathlib import Path

from ionfv.cli import main

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "results" / "convergence")
    sys.exit(
        main(
            [
                "converge",
                "--config", str(ROOT / "configs" / "convergence_1d.json"),
                "--n", "32,64,128,256,512",
                "--ref", "2048",
                "--out", out,
            ]
        )
    )
