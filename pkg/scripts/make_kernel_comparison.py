#!/usr/bin/env python3
"""Tabulate the planar and three-dimensional interaction kernel profiles
(eta = 1, a = 1/2, k = 2) on a fine radial grid for plotting."""

import sys
from pathlib import Path

import numpy as np

from ionfv.kernels import RegularizedNewtonian, RegularizedPower, eval_kernel

ROOT = Path(__file__).resolve().parent.parent


def write_profile(path, dim):
    r = np.arange(1024) * 0.0097656
    k = eval_kernel(RegularizedNewtonian(dim=dim, a=0.5), r)
    w = eval_kernel(RegularizedPower(eta=1.0, k=2.0, a=0.5), r)
    lines = ["r,K,W"]
    lines += [
        f"{format(ri, '.17g')},{format(ki, '.17g')},{format(wi, '.17g')}"
        for ri, ki, wi in zip(r, k, w)
    ]
    path.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "results" / "kernels"
    out.mkdir(parents=True, exist_ok=True)
    write_profile(out / "kernel_2d.csv", 2)
    write_profile(out / "kernel_3d.csv", 3)
    print(f"wrote {out}/kernel_2d.csv and {out}/kernel_3d.csv")
