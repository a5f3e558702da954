"""Model assembly: densities, external potentials, and the discrete
chemical potential that drives the dynamics.

The per-species chemical potential on the grid is

    psi_m = 1 + log(max(c_m, EPS_LOG)) + z_m * Phi + (W * theta) + V_ext
            + z_m * E * x

where Phi is either the plain electrostatic convolution K * rho or, in
screened mode, the double convolution (1/l_c^2) W_s * (K * rho).  The log
floor EPS_LOG keeps psi finite on cells drained to zero by the upwind
scheme; it is far below every concentration of physical interest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid, State
from .kernels import KernelSpec, KernelTable, Zero, build_table, convolve, double_convolve

__all__ = [
    "EPS_LOG",
    "ExternalPotential",
    "CorrelatedPotential",
    "ModelConfig",
    "ModelTables",
    "build_tables",
    "charge_density",
    "total_density",
    "external_potential",
    "electrostatic_potential",
    "chemical_potential",
]

EPS_LOG = 1e-13


@dataclass(frozen=True)
class ExternalPotential:
    """Confining + linear-drift external terms.

    V_ext(x) = (quadratic / 2) |x|^2 + offset; a nonzero ``field`` E adds
    the valence-weighted term z_m * E * x to each species (1D only, an
    electrostatic energy, so it enters with the sign of the charge).
    """

    quadratic: float = 0.0
    field: float = 0.0
    offset: float = 0.0

    def __post_init__(self):
        for name in ("quadratic", "field", "offset"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.quadratic < 0:
            raise ValueError(f"quadratic coefficient must be >= 0, got {self.quadratic}")


@dataclass(frozen=True)
class CorrelatedPotential:
    """Screened electrostatic mode: Phi = (1/l_c^2) smoothing * (K * rho)."""

    correlation_length: float
    smoothing: KernelSpec

    def __post_init__(self):
        if not self.correlation_length > 0:
            raise ValueError(
                f"correlation_length must be positive, got {self.correlation_length}"
            )


@dataclass(frozen=True)
class ModelConfig:
    """Valences, interaction kernels, and external terms of one scenario."""

    valences: tuple[int, ...]
    electrostatic: KernelSpec = Zero()
    steric: KernelSpec = Zero()
    external: ExternalPotential = ExternalPotential()
    correlated: CorrelatedPotential | None = None

    def __post_init__(self):
        if len(self.valences) < 1:
            raise ValueError("model needs at least one species")


@dataclass(frozen=True)
class ModelTables:
    """Precomputed offset tables for one (model, grid) pair."""

    electrostatic: KernelTable
    steric: KernelTable
    smoothing: KernelTable | None = None


def build_tables(model: ModelConfig, grid: Grid) -> ModelTables:
    smoothing = None
    if model.correlated is not None:
        smoothing = build_table(model.correlated.smoothing, grid)
    return ModelTables(
        electrostatic=build_table(model.electrostatic, grid),
        steric=build_table(model.steric, grid),
        smoothing=smoothing,
    )


def charge_density(state: State) -> np.ndarray:
    """rho = sum_m z_m c_m."""
    z = state.valences()
    c = state.concentrations()
    return np.tensordot(z, c, axes=(0, 0))


def total_density(state: State) -> np.ndarray:
    """theta = sum_m c_m."""
    return state.concentrations().sum(axis=0)


def external_potential(model: ModelConfig, grid: Grid) -> np.ndarray:
    """V_ext at the cell centers (quadratic term plus constant offset)."""
    return 0.5 * model.external.quadratic * grid.squared_radius() + model.external.offset


def electrostatic_potential(
    state: State, model: ModelConfig, tables: ModelTables
) -> np.ndarray:
    """Species-shared potential Phi: plain K * rho or its screened variant."""
    rho = charge_density(state)
    if model.correlated is None:
        return convolve(tables.electrostatic, rho)
    return double_convolve(
        tables.smoothing,
        tables.electrostatic,
        rho,
        state.grid,
        model.correlated.correlation_length,
    )


def chemical_potential(
    state: State, model: ModelConfig, tables: ModelTables
) -> np.ndarray:
    """Stacked per-species chemical potential, shape (M,) + grid.shape.

    Raises if any concentration is negative on entry (an upstream scheme
    violation) or if the state and model disagree on the species count.
    """
    grid = state.grid
    c = state.concentrations()
    if len(model.valences) != c.shape[0]:
        raise ValueError(
            f"model has {len(model.valences)} species, state has {c.shape[0]}"
        )
    if c.min() < 0:
        raise ValueError(f"negative concentration on entry: min={c.min():.3e}")

    z = np.array(model.valences, dtype=float)
    zc = z.reshape((-1,) + (1,) * grid.dim)
    phi = electrostatic_potential(state, model, tables)
    w_theta = convolve(tables.steric, c.sum(axis=0))

    psi = 1.0 + np.log(np.maximum(c, EPS_LOG))
    psi += zc * phi + w_theta
    if model.external.quadratic != 0.0:
        psi += 0.5 * model.external.quadratic * grid.squared_radius()
    if model.external.field != 0.0:
        if grid.dim != 1:
            raise ValueError("linear external field is only supported in 1D")
        psi += zc * (model.external.field * grid.axis_centers())
    # Constant offsets are added last so that shifting V_ext by kappa
    # shifts psi by exactly kappa (and cannot perturb anything else).
    return psi + model.external.offset
