#!/usr/bin/env python3
"""Produce small CSV fixtures for the figure renderer's test suite by
running scaled-down versions of the shipped scenarios through the CLI.

Writes into frontend/fixtures/ (checked in; re-run to regenerate).
"""

import shutil
import sys
import tempfile
from dataclasses import replace
from pathlib import Path

from ionfv.cli import cmd_converge, cmd_simulate, cmd_sweep
from ionfv.config import SweepConfig, load_config, set_parameter

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "frontend" / "fixtures"


def scaled(name, n, t_end, outputs):
    cfg = set_parameter(load_config(ROOT / "configs" / name), "grid.n", n)
    return replace(cfg, time=replace(cfg.time, t_end=t_end, output_times=tuple(outputs)))


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)

        steady = scaled("steady_1d.json", 128, 2.0, [0.0, 1.0, 2.0])
        cmd_simulate(steady, tmp / "steady")
        shutil.copy(tmp / "steady" / "energy.csv", FIXTURES / "energy.csv")
        shutil.copy(tmp / "steady" / "snapshot_t2.csv", FIXTURES / "snapshot_1d.csv")
        shutil.copy(tmp / "steady" / "kernel_profiles.csv", FIXTURES / "kernel_profiles.csv")

        conv = scaled("convergence_1d.json", 256, 0.5, [0.5])
        cmd_converge(conv, [16, 32, 64], 256, tmp / "conv")
        shutil.copy(tmp / "conv" / "convergence.csv", FIXTURES / "convergence.csv")

        sweep = SweepConfig(steady, "steric.eta", (0.0, 0.5))
        cmd_sweep(sweep, tmp / "sweep")
        shutil.copy(tmp / "sweep" / "run_000" / "snapshot_t2.csv", FIXTURES / "sweep_eta0.csv")
        shutil.copy(tmp / "sweep" / "run_001" / "snapshot_t2.csv", FIXTURES / "sweep_eta05.csv")

        surface = scaled("steady_2d.json", 32, 0.5, [0.5])
        cmd_simulate(surface, tmp / "surface")
        shutil.copy(tmp / "surface" / "snapshot_t0.5.csv", FIXTURES / "snapshot_2d.csv")

    for p in sorted(FIXTURES.iterdir()):
        print(f"{p.relative_to(ROOT)}  ({p.stat().st_size} bytes)")


if __name__ == "__main__":
    sys.exit(main())
