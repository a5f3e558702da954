"""Finite-volume simulation of nonlocal multi-species drift-diffusion
dynamics for ionic mixtures: positivity-preserving upwind fluxes,
conserved mass, and a decaying discrete free energy."""

from .grid import Grid, SpeciesField, State, build_grid, error_norms, restrict, total_mass
from .kernels import (
    ExpDecay,
    KernelTable,
    Log2DCoulomb,
    RegularizedNewtonian,
    RegularizedPower,
    VanDerWaals,
    Zero,
    build_table,
    convolve,
    double_convolve,
    eval_kernel,
)
from .model import (
    CorrelatedPotential,
    ExternalPotential,
    ModelConfig,
    ModelTables,
    build_tables,
    charge_density,
    chemical_potential,
    total_density,
)
from .solver import (
    GaussianPulse,
    NoFlux,
    PrescribedLeftInflux,
    RunResult,
    StepReport,
    cfl_dt,
    face_velocities,
    fluxes,
    run,
    step_forward_euler,
    upwind_split,
)
from .diagnostics import (
    DiagnosticsRecord,
    discrete_dissipation,
    discrete_energy,
    maximal_density,
    potential_flatness,
    second_moment,
    second_moment_bound_constant,
)

__version__ = "0.1.0"
