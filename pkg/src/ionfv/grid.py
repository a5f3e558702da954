"""Uniform cell-centered grids, species fields, and grid-level operations.

The computational box is [-L, L] along each axis, partitioned into N equal
cells.  Fields are stored as cell averages: shape (N,) in 1D, (N, N) in 2D
with index [j, k] corresponding to the center (x_j, y_k).  Restriction
between nested grids and the error norms used by the refinement harness
live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Grid",
    "SpeciesField",
    "State",
    "build_grid",
    "total_mass",
    "restrict",
    "error_norms",
]


@dataclass(frozen=True)
class Grid:
    """Uniform cell partition of the symmetric box [-L, L]^dim.

    Parameters
    ----------
    dim : int
        Spatial dimension, 1 or 2.
    half_width : float
        L; the box is [-L, L] along each axis.
    n : int
        Number of cells per axis.  Must be even and at least 2 so the
        origin sits on a cell face.
    """

    dim: int
    half_width: float
    n: int

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        if not np.isfinite(self.half_width) or self.half_width <= 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if self.n < 2 or self.n % 2 != 0:
            raise ValueError(f"n must be an even integer >= 2, got {self.n}")

    @property
    def spacing(self) -> float:
        """Cell width; dy equals dx in 2D."""
        return 2.0 * self.half_width / self.n

    @property
    def cell_volume(self) -> float:
        """Quadrature weight of one cell: dx in 1D, dx*dy in 2D."""
        return self.spacing**self.dim

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n,) * self.dim

    @property
    def cell_count(self) -> int:
        return self.n**self.dim

    def axis_centers(self) -> np.ndarray:
        """Cell-center coordinates along one axis: x_j = -L + (j + 1/2) dx."""
        return -self.half_width + (np.arange(self.n) + 0.5) * self.spacing

    def center_coords(self) -> tuple[np.ndarray, ...]:
        """Per-axis center coordinates broadcast to the field shape."""
        x = self.axis_centers()
        if self.dim == 1:
            return (x,)
        return np.meshgrid(x, x, indexing="ij")

    def squared_radius(self) -> np.ndarray:
        """|x|^2 evaluated at the cell centers, shaped like a field."""
        coords = self.center_coords()
        return sum(c * c for c in coords)


def build_grid(dim: int, half_width: float, n: int) -> Grid:
    """Construct a validated uniform grid with spacing 2*half_width/n."""
    return Grid(dim=dim, half_width=half_width, n=n)


@dataclass
class SpeciesField:
    """Cell averages of one species' concentration plus its valence."""

    valence: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)


@dataclass
class State:
    """All species fields on a common grid at one instant."""

    grid: Grid
    species: list[SpeciesField]
    time: float = 0.0

    def __post_init__(self):
        if not self.species:
            raise ValueError("state needs at least one species")
        for m, sp in enumerate(self.species):
            if sp.values.shape != self.grid.shape:
                raise ValueError(
                    f"species {m} has shape {sp.values.shape}, "
                    f"grid expects {self.grid.shape}"
                )

    def concentrations(self) -> np.ndarray:
        """Stacked concentrations, shape (M,) + grid.shape."""
        return np.stack([sp.values for sp in self.species])

    def valences(self) -> np.ndarray:
        return np.array([sp.valence for sp in self.species], dtype=float)

    def with_concentrations(self, values: np.ndarray, time: float) -> "State":
        """New state on the same grid with replaced concentration stack."""
        species = [
            SpeciesField(sp.valence, values[m]) for m, sp in enumerate(self.species)
        ]
        return State(self.grid, species, time)


def total_mass(values: np.ndarray, grid: Grid) -> float:
    """Discrete mass dx * sum(values) (dx*dy in 2D) of one field."""
    return float(grid.cell_volume * np.sum(values))


def _nesting_factor(fine: Grid, coarse: Grid) -> int:
    if fine.dim != coarse.dim or fine.half_width != coarse.half_width:
        raise ValueError("grids cover different boxes; cannot restrict")
    if fine.n % coarse.n != 0:
        raise ValueError(f"fine n={fine.n} is not a multiple of coarse n={coarse.n}")
    factor = fine.n // coarse.n
    if factor & (factor - 1) != 0:
        raise ValueError(f"nesting ratio {factor} is not a power of two")
    return factor


def restrict(values: np.ndarray, fine: Grid, coarse: Grid) -> np.ndarray:
    """Average fine-cell values onto the covering coarse cells.

    Preserves total_mass up to rounding because each coarse value is the
    plain mean of the fine cells it covers.
    """
    f = _nesting_factor(fine, coarse)
    values = np.asarray(values, dtype=float)
    if fine.dim == 1:
        return values.reshape(coarse.n, f).mean(axis=1)
    return values.reshape(coarse.n, f, coarse.n, f).mean(axis=(1, 3))


def error_norms(a: np.ndarray, b: np.ndarray, grid: Grid) -> tuple[float, float, float]:
    """(l_inf, l1, l2) norms of a - b over the grid.

    l_inf is the plain max of |a - b|; l_p = (dV * sum |a - b|^p)^(1/p).
    Stacked multi-species arrays are accepted: the sums then run over the
    species axis as well, matching the refinement-study convention.
    """
    d = np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))
    dv = grid.cell_volume
    l_inf = float(d.max())
    l1 = float(dv * d.sum())
    l2 = float(np.sqrt(dv * np.sum(d * d)))
    return l_inf, l1, l2
