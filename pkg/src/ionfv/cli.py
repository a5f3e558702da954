"""Command-line front end: scenario runs, refinement studies, sweeps.

    ionfv simulate --config PATH --out DIR
    ionfv converge --config PATH --n 32,64,128 --ref 2048 --out DIR
    ionfv sweep    --config PATH --param steric.eta --values 0,0.5 --out DIR

All outputs are CSV with full round-trip number formatting (17
significant digits) so re-runs of an identical configuration are
byte-identical.  Exit codes: 0 success, 1 validation failure, 2 runtime
failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .config import (
    ConfigError,
    ScenarioConfig,
    SweepConfig,
    initial_state,
    load_config,
    model_config,
    set_parameter,
)
from .grid import error_norms, restrict
from .model import build_tables, chemical_potential
from .solver import RunResult, SolverError, run

__all__ = ["main", "cmd_simulate", "cmd_converge", "cmd_sweep"]


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")


def _snapshot_rows(state, psi):
    grid = state.grid
    c = state.concentrations()
    if grid.dim == 1:
        x = grid.axis_centers()
        for j in range(grid.n):
            yield [x[j], *c[:, j], *psi[:, j]]
    else:
        x = grid.axis_centers()
        for j in range(grid.n):
            for k in range(grid.n):
                yield [x[j], x[k], *c[:, j, k], *psi[:, j, k]]


def _write_snapshot(path: Path, state, psi) -> None:
    m = len(state.species)
    coords = ["x"] if state.grid.dim == 1 else ["x", "y"]
    header = coords + [f"c_{i + 1}" for i in range(m)] + [f"psi_{i + 1}" for i in range(m)]
    write_csv(path, header, _snapshot_rows(state, psi))


def _write_energy_series(path: Path, result: RunResult, m: int) -> None:
    header = (
        ["t", "E", "F1", "F2", "F3", "F4", "D"]
        + [f"mass_{i + 1}" for i in range(m)]
        + ["sigma2"]
        + [f"flatness_{i + 1}" for i in range(m)]
    )
    rows = []
    for rec in result.records:
        rows.append(
            [
                rec.time,
                rec.energy,
                rec.entropy_energy,
                rec.electrostatic_energy,
                rec.steric_energy,
                rec.external_energy,
                rec.dissipation,
                *rec.masses,
                rec.second_moment,
                *rec.flatness,
            ]
        )
    write_csv(path, header, rows)


def _write_kernel_profiles(path: Path, cfg: ScenarioConfig, tables) -> None:
    """Radial kernel values along the positive offsets of the grid."""
    n = cfg.grid.n
    r = np.arange(n) * cfg.grid.spacing
    if cfg.grid.dim == 1:
        k_vals = tables.electrostatic.values[n - 1 :]
        w_vals = tables.steric.values[n - 1 :]
        smooth = tables.smoothing.values[n - 1 :] if tables.smoothing else None
    else:
        k_vals = tables.electrostatic.values[n - 1 :, n - 1]
        w_vals = tables.steric.values[n - 1 :, n - 1]
        smooth = tables.smoothing.values[n - 1 :, n - 1] if tables.smoothing else None
    header = ["r", "K", "W"] + (["smoothing"] if smooth is not None else [])
    rows = []
    for i in range(n):
        row = [r[i], k_vals[i], w_vals[i]]
        if smooth is not None:
            row.append(smooth[i])
        rows.append(row)
    write_csv(path, header, rows)


def _run_scenario(cfg: ScenarioConfig):
    state = initial_state(cfg)
    model = model_config(cfg)
    tables = build_tables(model, cfg.grid)
    result = run(
        state,
        model,
        bc=cfg.boundary,
        t_end=cfg.time.t_end,
        output_times=cfg.time.output_times,
        safety=cfg.time.safety,
        dt_cap=cfg.time.dt_cap,
        tables=tables,
    )
    return result, model, tables


def cmd_simulate(cfg: ScenarioConfig, out_dir: Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    result, model, tables = _run_scenario(cfg)
    for t, state in zip(result.times, result.states):
        psi = chemical_potential(state, model, tables)
        _write_snapshot(out_dir / f"snapshot_t{_fmt(t)}.csv", state, psi)
    _write_energy_series(out_dir / "energy.csv", result, len(cfg.species))
    _write_kernel_profiles(out_dir / "kernel_profiles.csv", cfg, tables)
    if result.steady_time is not None:
        (out_dir / "steady.txt").write_text(f"steady at t={_fmt(result.steady_time)}\n")
    return 0


def cmd_converge(cfg: ScenarioConfig, n_values: list[int], ref_n: int, out_dir: Path) -> int:
    for n in n_values:
        if n >= ref_n:
            raise ConfigError("ref", f"reference n={ref_n} must exceed every ladder n")
        if n < 2 or ref_n % n != 0 or (ref_n // n) & (ref_n // n - 1) != 0:
            raise ConfigError("n", f"ladder n={n} does not nest into reference {ref_n}")
    out_dir.mkdir(parents=True, exist_ok=True)

    ref_cfg = set_parameter(cfg, "grid.n", ref_n)
    ref_result, _, _ = _run_scenario(ref_cfg)
    ref_state = ref_result.states[-1]

    rows = []
    errs = {"linf": [], "l1": [], "l2": []}
    spacings = []
    for n in n_values:
        cfg_n = set_parameter(cfg, "grid.n", n)
        result, _, _ = _run_scenario(cfg_n)
        coarse = result.states[-1]
        coarse_ref = np.stack(
            [
                restrict(sp.values, ref_state.grid, coarse.grid)
                for sp in ref_state.species
            ]
        )
        linf, l1, l2 = error_norms(coarse.concentrations(), coarse_ref, coarse.grid)
        rows.append([n, coarse.grid.spacing, linf, l1, l2])
        spacings.append(coarse.grid.spacing)
        errs["linf"].append(linf)
        errs["l1"].append(l1)
        errs["l2"].append(l2)

    write_csv(out_dir / "convergence.csv", ["N", "dx", "linf", "l1", "l2"], rows)

    slope_rows = []
    log_dx = np.log(np.array(spacings))
    for name in ("linf", "l1", "l2"):
        values = np.array(errs[name])
        if len(values) < 2 or (values <= 0).any():
            slope = float("nan")  # degenerate ladder (e.g. exact agreement)
        else:
            slope = float(np.polyfit(log_dx, np.log(values), 1)[0])
        slope_rows.append([name, slope])
    Path(out_dir / "slopes.csv").write_text(
        "norm,slope\n" + "\n".join(f"{n},{_fmt(s)}" for n, s in slope_rows) + "\n"
    )
    return 0


def cmd_sweep(sweep: SweepConfig, out_dir: Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    m = len(sweep.base.species)
    summary = []
    failures = []
    for i, value in enumerate(sweep.values):
        run_dir = out_dir / f"run_{i:03d}"
        cfg_v = set_parameter(sweep.base, sweep.parameter, value)
        try:
            run_dir.mkdir(parents=True, exist_ok=True)
            result, model, tables = _run_scenario(cfg_v)
            final = result.states[-1]
            psi = chemical_potential(final, model, tables)
            _write_snapshot(run_dir / f"snapshot_t{_fmt(final.time)}.csv", final, psi)
            _write_energy_series(run_dir / "energy.csv", result, m)
            rec = result.records[-1]
            peaks = [sp.values.max() for sp in final.species]
            summary.append([value, *peaks, *rec.flatness, rec.energy, rec.dissipation])
        except (SolverError, ValueError) as exc:
            failures.append([value, str(exc)])
    header = (
        ["value"]
        + [f"peak_{i + 1}" for i in range(m)]
        + [f"flatness_{i + 1}" for i in range(m)]
        + ["E", "D"]
    )
    write_csv(out_dir / "summary.csv", header, summary)
    if failures:
        lines = ["value,error"] + [f"{_fmt(v)},{msg!r}" for v, msg in failures]
        (out_dir / "failures.csv").write_text("\n".join(lines) + "\n")
    return 2 if not summary else 0


def _parse_values(raw: str) -> list[float]:
    try:
        return [float(v) for v in raw.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise ConfigError("values", f"not a comma-separated float list: {raw!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ionfv",
        description="Finite-volume runs of nonlocal multi-species drift-diffusion scenarios",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one scenario and write CSV outputs")
    p_sim.add_argument("--config", required=True)
    p_sim.add_argument("--out", required=True)

    p_conv = sub.add_parser("converge", help="grid refinement study against a fine reference")
    p_conv.add_argument("--config", required=True)
    p_conv.add_argument("--n", required=True, help="comma-separated ladder, e.g. 32,64,128")
    p_conv.add_argument("--ref", required=True, type=int)
    p_conv.add_argument("--out", required=True)

    p_sweep = sub.add_parser("sweep", help="re-run a scenario over one parameter")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--param", required=True, help="dotted path, e.g. steric.eta")
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.add_argument("--out", required=True)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.command == "simulate":
            return cmd_simulate(cfg, Path(args.out))
        if args.command == "converge":
            ladder = [int(v) for v in _parse_values(args.n)]
            return cmd_converge(cfg, ladder, args.ref, Path(args.out))
        if args.command == "sweep":
            sweep = SweepConfig(cfg, args.param, tuple(_parse_values(args.values)))
            return cmd_sweep(sweep, Path(args.out))
        raise ConfigError("command", f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"ionfv: configuration error: {exc}", file=sys.stderr)
        return 1
    except (SolverError, OSError) as exc:
        print(f"ionfv: runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
