import numpy as np
import pytest

from ionfv.grid import SpeciesField, State, build_grid
from ionfv.kernels import ExpDecay, RegularizedNewtonian, RegularizedPower, Zero
from ionfv.model import ExternalPotential, ModelConfig


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)


def random_state_1d(rng, n=16, m=2, half_width=2.0, scale=1.0):
    n = n + n % 2  # grids require even n
    grid = build_grid(1, half_width, n)
    species = [
        SpeciesField((-1) ** i, scale * rng.random(n)) for i in range(m)
    ]
    return State(grid, species)


def random_state_2d(rng, n=8, m=2, half_width=2.0, scale=1.0):
    n = n + n % 2
    grid = build_grid(2, half_width, n)
    species = [
        SpeciesField((-1) ** i, scale * rng.random((n, n))) for i in range(m)
    ]
    return State(grid, species)


def random_kernels(rng):
    """A (K, W) pair drawn from the supported families."""
    choices = [
        RegularizedNewtonian(dim=2, a=float(rng.uniform(0.1, 1.0))),
        RegularizedNewtonian(dim=3, a=float(rng.uniform(0.1, 1.0))),
        RegularizedPower(
            eta=float(rng.uniform(0.0, 2.0)),
            k=float(rng.uniform(0.5, 3.0)),
            a=float(rng.uniform(0.1, 1.0)),
        ),
        ExpDecay(),
        Zero(),
    ]
    k = choices[rng.integers(len(choices))]
    w = RegularizedPower(
        eta=float(rng.uniform(0.0, 2.0)),
        k=float(rng.uniform(0.5, 3.0)),
        a=float(rng.uniform(0.1, 1.0)),
    )
    return k, w


def random_model(rng, m=2, with_external=True):
    k, w = random_kernels(rng)
    valences = tuple((-1) ** i for i in range(m))
    external = ExternalPotential()
    if with_external and rng.random() < 0.5:
        external = ExternalPotential(quadratic=float(rng.uniform(0.0, 2.0)))
    return ModelConfig(valences=valences, electrostatic=k, steric=w, external=external)
