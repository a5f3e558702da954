"""Upwind finite-volume scheme with CFL-limited forward Euler stepping.

Face velocities are negative difference quotients of the chemical
potential; the numerical flux takes the donor cell according to the sign
of the face velocity:

    F_{j+1/2} = u+_{j+1/2} c_j - u-_{j+1/2} c_{j+1}

Under dt <= dx / (2 U_max) in 1D (dt <= min(dx/(4 U_max), dy/(4 V_max))
in 2D) the Euler update is a convex combination of neighboring cell
values, so nonnegative states stay nonnegative and total mass is
conserved up to boundary fluxes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Union

import numpy as np

from . import diagnostics
from .grid import Grid, State
from .model import ModelConfig, ModelTables, build_tables, chemical_potential

__all__ = [
    "NoFlux",
    "GaussianPulse",
    "PrescribedLeftInflux",
    "BoundaryCondition",
    "StepReport",
    "RunResult",
    "SolverError",
    "face_velocities",
    "upwind_split",
    "fluxes",
    "cfl_dt",
    "step_forward_euler",
    "run",
]

# Post-step values in [-NEGATIVITY_TOL, 0) are rounding residue of the
# convex-combination update and are clipped to zero; anything below that
# indicates a CFL logic fault.
NEGATIVITY_TOL = 1e-14

DEFAULT_SAFETY = 0.9
DEFAULT_DT_CAP = 1e-2


class SolverError(RuntimeError):
    """Raised when the scheme produces a state it guarantees against."""


@dataclass(frozen=True)
class NoFlux:
    """All boundary fluxes vanish; total mass is conserved."""


@dataclass(frozen=True)
class GaussianPulse:
    """f(t) = amplitude * exp(-(t - center)^2 / (2 width^2))."""

    amplitude: float
    center: float
    width: float

    def __call__(self, t: float) -> float:
        return self.amplitude * np.exp(-((t - self.center) ** 2) / (2.0 * self.width**2))


@dataclass(frozen=True)
class PrescribedLeftInflux:
    """Left boundary flux f(t) for one species; all other fluxes zero (1D)."""

    species: int
    profile: Callable[[float], float]


BoundaryCondition = Union[NoFlux, PrescribedLeftInflux]


@dataclass
class StepReport:
    """What one Euler step actually did."""

    dt: float
    u_max: float
    v_max: float | None
    floor_hits: int
    injected_mass: float


def face_velocities(psi: np.ndarray, grid: Grid):
    """Interior face velocities u = -(psi_{j+1} - psi_j) / dx.

    1D: returns one array of shape (M, n-1).  2D: returns (u, v) with
    shapes (M, n-1, n) and (M, n, n-1).
    """
    dx = grid.spacing
    if grid.dim == 1:
        return -np.diff(psi, axis=-1) / dx
    u = -np.diff(psi, axis=1) / dx
    v = -np.diff(psi, axis=2) / dx
    return u, v


def upwind_split(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(u+, u-) with u = u+ - u-, both parts nonnegative, u+ * u- = 0."""
    return np.maximum(u, 0.0), np.maximum(-u, 0.0)


def fluxes(state: State, velocities, bc: BoundaryCondition, t: float):
    """Per-species face flux arrays including boundary faces.

    1D: shape (M, n+1).  2D: pair of arrays (M, n+1, n) and (M, n, n+1).
    """
    c = state.concentrations()
    n = state.grid.n
    m = c.shape[0]
    if state.grid.dim == 1:
        u_plus, u_minus = upwind_split(velocities)
        f = np.zeros((m, n + 1))
        f[:, 1:n] = u_plus * c[:, :-1] - u_minus * c[:, 1:]
        if isinstance(bc, PrescribedLeftInflux):
            f[bc.species, 0] = bc.profile(t)
        return f
    if isinstance(bc, PrescribedLeftInflux):
        raise ValueError("prescribed boundary flux is only supported in 1D")
    u, v = velocities
    u_plus, u_minus = upwind_split(u)
    v_plus, v_minus = upwind_split(v)
    fx = np.zeros((m, n + 1, n))
    fy = np.zeros((m, n, n + 1))
    fx[:, 1:n, :] = u_plus * c[:, :-1, :] - u_minus * c[:, 1:, :]
    fy[:, :, 1:n] = v_plus * c[:, :, :-1] - v_minus * c[:, :, 1:]
    return fx, fy


def cfl_dt(
    velocities,
    grid: Grid,
    safety: float = DEFAULT_SAFETY,
    dt_cap: float = DEFAULT_DT_CAP,
) -> float:
    """Positivity-preserving time step for the given face velocities.

    1D: safety * dx / (2 U_max); 2D: safety * min(dx / (4 U_max),
    dy / (4 V_max)).  Vanishing velocities (a fixed point) get dt_cap.
    """
    dx = grid.spacing
    if grid.dim == 1:
        u_max = float(np.abs(velocities).max()) if np.size(velocities) else 0.0
        if u_max == 0.0:
            return dt_cap
        return safety * dx / (2.0 * u_max)
    u, v = velocities
    u_max = float(np.abs(u).max())
    v_max = float(np.abs(v).max())
    if u_max == 0.0 and v_max == 0.0:
        return dt_cap
    dt_x = dx / (4.0 * u_max) if u_max > 0.0 else np.inf
    dt_y = dx / (4.0 * v_max) if v_max > 0.0 else np.inf
    return safety * min(dt_x, dt_y)


def step_forward_euler(
    state: State,
    model: ModelConfig,
    tables: ModelTables,
    bc: BoundaryCondition = NoFlux(),
    safety: float = DEFAULT_SAFETY,
    dt_cap: float = DEFAULT_DT_CAP,
    dt_limit: float | None = None,
) -> tuple[State, StepReport]:
    """One CFL-limited forward Euler update of every species."""
    grid = state.grid
    psi = chemical_potential(state, model, tables)
    vel = face_velocities(psi, grid)
    dt = cfl_dt(vel, grid, safety=safety, dt_cap=dt_cap)
    if dt_limit is not None and dt_limit < dt:
        dt = dt_limit

    c = state.concentrations()
    if grid.dim == 1:
        f = fluxes(state, vel, bc, state.time)
        c_new = c - (dt / grid.spacing) * np.diff(f, axis=1)
        u_max = float(np.abs(vel).max())
        v_max = None
    else:
        fx, fy = fluxes(state, vel, bc, state.time)
        c_new = (
            c
            - (dt / grid.spacing) * np.diff(fx, axis=1)
            - (dt / grid.spacing) * np.diff(fy, axis=2)
        )
        u_max = float(np.abs(vel[0]).max())
        v_max = float(np.abs(vel[1]).max())

    low = c_new.min()
    if low < -NEGATIVITY_TOL:
        raise SolverError(
            f"positivity violated: min concentration {low:.3e} after dt={dt:.3e}"
        )
    negative = c_new < 0.0
    floor_hits = int(np.count_nonzero(negative))
    if floor_hits:
        c_new = np.maximum(c_new, 0.0)

    injected = 0.0
    if isinstance(bc, PrescribedLeftInflux):
        injected = dt * float(bc.profile(state.time))

    report = StepReport(
        dt=dt, u_max=u_max, v_max=v_max, floor_hits=floor_hits, injected_mass=injected
    )
    return state.with_concentrations(c_new, state.time + dt), report


@dataclass
class RunResult:
    """Trajectory snapshots and diagnostics at the scheduled output times."""

    times: list[float]
    states: list[State]
    records: list["diagnostics.DiagnosticsRecord"]
    injected_mass: list[float]
    steady_time: float | None
    steps: int


def run(
    state: State,
    model: ModelConfig,
    bc: BoundaryCondition = NoFlux(),
    t_end: float = 0.0,
    output_times=None,
    safety: float = DEFAULT_SAFETY,
    dt_cap: float = DEFAULT_DT_CAP,
    steady_tol: float = 1e-8,
    tables: ModelTables | None = None,
    max_steps: int = 50_000_000,
) -> RunResult:
    """Advance to t_end, landing exactly on every scheduled output time.

    Shortening the final step before an output time never violates the
    CFL bound.  Steady-state detection (dissipation below ``steady_tol``
    at two consecutive outputs) only annotates; the run always reaches
    ``t_end``.
    """
    if t_end < state.time:
        raise ValueError(f"t_end={t_end} precedes state time {state.time}")
    if tables is None:
        tables = build_tables(model, state.grid)

    stops = sorted({float(t) for t in (output_times or [])} | {float(t_end)})
    stops = [t for t in stops if state.time < t <= t_end]

    result = RunResult(
        times=[state.time],
        states=[state],
        records=[diagnostics.collect_record(state, model, tables)],
        injected_mass=[0.0],
        steady_time=None,
        steps=0,
    )

    injected_total = 0.0
    for stop in stops:
        while state.time < stop:
            if result.steps >= max_steps:
                raise SolverError(f"exceeded {max_steps} steps before t={stop}")
            state, report = step_forward_euler(
                state, model, tables, bc,
                safety=safety, dt_cap=dt_cap, dt_limit=stop - state.time,
            )
            if report.dt == 0.0:
                raise SolverError("time step underflowed to zero")
            injected_total += report.injected_mass
            result.steps += 1
            if not np.isfinite(state.concentrations()).all():
                raise SolverError(f"non-finite state at t={state.time:.6g}")
        state = replace(state, time=stop)  # absorb roundoff in t accumulation
        result.times.append(stop)
        result.states.append(state)
        result.records.append(diagnostics.collect_record(state, model, tables))
        result.injected_mass.append(injected_total)
        if (
            result.steady_time is None
            and len(result.records) >= 2
            and result.records[-1].dissipation < steady_tol
            and result.records[-2].dissipation < steady_tol
        ):
            result.steady_time = stop
    return result
