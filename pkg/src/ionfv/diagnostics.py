"""Structural observables of a state: discrete free energy and its
decomposition, dissipation rate, second moment, windowed maximal density,
and chemical-potential flatness.

The discrete free energy splits into entropy (F1), electrostatic (F2),
steric (F3), and external (F4) parts whose sum is the total; along a
no-flux trajectory the total decays at a rate bounded below by the
dissipation D.  Flatness of the chemical potential over the effective
support certifies proximity to equilibrium.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import State, total_mass
from .kernels import RegularizedNewtonian, RegularizedPower, Log2DCoulomb, ExpDecay, Zero, convolve
from .model import (
    ModelConfig,
    ModelTables,
    charge_density,
    chemical_potential,
    electrostatic_potential,
    external_potential,
    total_density,
)

__all__ = [
    "DiagnosticsRecord",
    "discrete_energy",
    "discrete_dissipation",
    "second_moment",
    "second_moment_bound_constant",
    "maximal_density",
    "maximal_density_envelope",
    "potential_flatness",
    "collect_record",
]


@dataclass
class DiagnosticsRecord:
    """Time-stamped observables of one state."""

    time: float
    masses: tuple[float, ...]
    energy: float
    entropy_energy: float  # F1
    electrostatic_energy: float  # F2
    steric_energy: float  # F3
    external_energy: float  # F4
    dissipation: float
    second_moment: float
    flatness: tuple[float, ...]


def _entropy(c: np.ndarray, dv: float) -> float:
    # 0 log 0 = 0 by convention.
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(c > 0.0, c * np.log(np.where(c > 0.0, c, 1.0)), 0.0)
    return float(dv * terms.sum())


def discrete_energy(
    state: State, model: ModelConfig, tables: ModelTables
) -> tuple[float, float, float, float, float]:
    """(E, F1, F2, F3, F4): total discrete free energy and its parts.

    F1 = dV sum c log c; F2 = (1/2) dV sum rho * Phi with Phi the
    (possibly screened) electrostatic potential; F3 = (1/2) dV sum
    theta * (W * theta); F4 = dV sum (V_ext + z E x) c.
    """
    grid = state.grid
    dv = grid.cell_volume
    c = state.concentrations()

    f1 = _entropy(c, dv)

    rho = charge_density(state)
    phi = electrostatic_potential(state, model, tables)
    f2 = 0.5 * dv * float(np.sum(rho * phi))

    theta = total_density(state)
    f3 = 0.5 * dv * float(np.sum(theta * convolve(tables.steric, theta)))

    v_ext = external_potential(model, grid)
    f4 = dv * float(np.sum(v_ext * c))
    if model.external.field != 0.0:
        z = np.array(model.valences, dtype=float)
        x = grid.axis_centers()
        f4 += dv * float(np.sum(z[:, None] * model.external.field * x * c))

    return f1 + f2 + f3 + f4, f1, f2, f3, f4


def discrete_dissipation(state: State, velocities) -> float:
    """D = sum_m dV sum_faces u^2 min(adjacent concentrations) >= 0.

    In 2D the minimum runs over the cell and its +x / +y neighbors where
    those exist, matching the face pairing of the scheme.
    """
    grid = state.grid
    c = state.concentrations()
    dv = grid.cell_volume
    if grid.dim == 1:
        u = velocities
        pair_min = np.minimum(c[:, :-1], c[:, 1:])
        return float(dv * np.sum(u * u * pair_min))
    u, v = velocities
    triple = np.minimum(np.minimum(c[:, :-1, :-1], c[:, 1:, :-1]), c[:, :-1, 1:])
    total = np.sum((u[:, :, :-1] ** 2 + v[:, :-1, :] ** 2) * triple)
    # Last column has only y-faces, last row only x-faces.
    total += np.sum(v[:, -1, :] ** 2 * np.minimum(c[:, -1, :-1], c[:, -1, 1:]))
    total += np.sum(u[:, :, -1] ** 2 * np.minimum(c[:, :-1, -1], c[:, 1:, -1]))
    return float(dv * total)


def second_moment(state: State) -> float:
    """sigma_2 = sum_m dV sum |x|^2 c_m."""
    r2 = state.grid.squared_radius()
    return float(state.grid.cell_volume * np.sum(r2 * state.concentrations()))


def second_moment_bound_constant(model: ModelConfig, masses) -> float:
    """Growth-rate constant C with d(sigma_2)/dt <= C for the supported
    kernel family (power-law steric repulsion, bounded electrostatics).

    Uses the three-dimensional form when the electrostatic kernel is a
    RegularizedNewtonian profile with dim > 2, otherwise the planar form

        C = 4 m0 + (k eta + 1) max|z|^2 m0^2.

    Raises ValueError outside the supported family.
    """
    steric = model.steric
    if isinstance(steric, Zero):
        k_eta, w_a = 0.0, None
    elif isinstance(steric, RegularizedPower):
        k_eta, w_a = steric.k * steric.eta, steric.a
    else:
        raise ValueError(f"no second-moment constant for steric kernel {steric!r}")

    es = model.electrostatic
    if not isinstance(es, (RegularizedNewtonian, Log2DCoulomb, ExpDecay, Zero)):
        raise ValueError(f"no second-moment constant for electrostatic kernel {es!r}")

    m0 = float(np.sum(masses))
    z_max_sq = float(max(abs(z) for z in model.valences)) ** 2

    if isinstance(es, RegularizedNewtonian) and es.dim > 2:
        d = es.dim
        if w_a is None:
            steric_part = 0.0
        else:
            steric_part = k_eta * w_a ** (-steric.k)
        return 2.0 * d * m0 + (steric_part + (d - 2) * es.a ** (2 - d) * z_max_sq) * m0**2
    return 4.0 * m0 + (k_eta + 1.0) * z_max_sq * m0**2


def maximal_density(state: State, radius: float) -> np.ndarray:
    """Per-species largest mass inside any ball of the given radius,

        M_r(c) = max_j dV * sum_{|x_i - x_j| <= r} c_i,

    maximized over cell centers.  O(n^(2 dim)); intended for moderate
    grids and analysis, not the stepping loop.
    """
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    grid = state.grid
    coords = np.stack([c.ravel() for c in grid.center_coords()], axis=1)
    dist_sq = np.sum((coords[:, None, :] - coords[None, :, :]) ** 2, axis=2)
    inside = dist_sq <= radius * radius
    out = []
    for sp in state.species:
        window_mass = grid.cell_volume * (inside @ sp.values.ravel())
        out.append(window_mass.max())
    return np.array(out)


def maximal_density_envelope(steric: RegularizedPower, radius: float) -> float:
    """Shape factor ((2r)^2 + a^2)^(k/4) of the concentration envelope.

    The true bound carries a data-dependent constant, so this factor is
    reported for scaling comparisons rather than asserted.
    """
    return float(((2.0 * radius) ** 2 + steric.a**2) ** (steric.k / 4.0))


def potential_flatness(
    state: State, psi: np.ndarray, threshold: float | None = None
) -> np.ndarray:
    """Per-species max-min spread of psi over cells with c above threshold.

    ``threshold`` defaults to 1e-4 times the species' peak concentration;
    flatness near zero on the effective support certifies equilibrium.
    Raises if no cell clears the threshold.
    """
    if threshold is not None and not threshold > 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    out = []
    for m, sp in enumerate(state.species):
        thr = threshold if threshold is not None else 1e-4 * sp.values.max()
        mask = sp.values > thr
        if not mask.any():
            raise ValueError(f"species {m}: no cell above threshold {thr:.3e}")
        masked = psi[m][mask]
        out.append(float(masked.max() - masked.min()))
    return np.array(out)


def collect_record(
    state: State, model: ModelConfig, tables: ModelTables
) -> DiagnosticsRecord:
    """Evaluate every recorded observable at the current state."""
    from .solver import face_velocities  # local import to avoid a cycle

    psi = chemical_potential(state, model, tables)
    vel = face_velocities(psi, state.grid)
    energy, f1, f2, f3, f4 = discrete_energy(state, model, tables)
    flat = []
    for m, sp in enumerate(state.species):
        peak = sp.values.max()
        if peak <= 0.0:
            flat.append(float("nan"))
        else:
            mask = sp.values > 1e-4 * peak
            masked = psi[m][mask]
            flat.append(float(masked.max() - masked.min()))
    return DiagnosticsRecord(
        time=state.time,
        masses=tuple(total_mass(sp.values, state.grid) for sp in state.species),
        energy=energy,
        entropy_energy=f1,
        electrostatic_energy=f2,
        steric_energy=f3,
        external_energy=f4,
        dissipation=discrete_dissipation(state, vel),
        second_moment=second_moment(state),
        flatness=tuple(flat),
    )
