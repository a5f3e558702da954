"""Scenario configuration: JSON schema, validation, and state assembly.

A scenario file is a JSON document with the blocks

    grid         {"dim", "half_width", "n"}
    species      [{"valence", "profile"}, ...]
    electrostatic / steric   kernel blocks, e.g. {"kind": "exp_decay"}
    external     {"quadratic", "field", "offset"}            (optional)
    boundary     {"kind": "no_flux"} or
                 {"kind": "left_influx", "species", "amplitude",
                  "center", "width"}                          (optional)
    time         {"t_end", "output_times", "safety", "dt_cap"}
    correlated   {"correlation_length", "a"} or null          (optional)

Profiles are sampled at cell centers (consistent at second order with
exact cell averaging, which matters below the first-order truncation of
the scheme).  Validation errors name the offending field by its dotted
path, e.g. ``grid.n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace, fields as dc_fields
from pathlib import Path
from typing import Union

import numpy as np

from .grid import Grid, SpeciesField, State
from .kernels import (
    ExpDecay,
    KernelSpec,
    Log2DCoulomb,
    RegularizedNewtonian,
    RegularizedPower,
    VanDerWaals,
    Zero,
)
from .model import CorrelatedPotential, ExternalPotential, ModelConfig
from .solver import GaussianPulse, NoFlux, PrescribedLeftInflux

__all__ = [
    "ConfigError",
    "GaussianProfile",
    "ConstantProfile",
    "SpeciesBlock",
    "TimeBlock",
    "ScenarioConfig",
    "SweepConfig",
    "load_config",
    "save_config",
    "config_from_dict",
    "config_to_dict",
    "initial_state",
    "model_config",
    "set_parameter",
]


class ConfigError(ValueError):
    """Validation failure naming the offending field by dotted path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class GaussianProfile:
    """amplitude * exp(-|x - center|^2 / (2 variance))."""

    amplitude: float
    center: tuple[float, ...]
    variance: float

    def sample(self, grid: Grid) -> np.ndarray:
        coords = grid.center_coords()
        dist_sq = sum((c - c0) ** 2 for c, c0 in zip(coords, self.center))
        return self.amplitude * np.exp(-dist_sq / (2.0 * self.variance))


@dataclass(frozen=True)
class ConstantProfile:
    value: float

    def sample(self, grid: Grid) -> np.ndarray:
        return np.full(grid.shape, self.value)


Profile = Union[GaussianProfile, ConstantProfile]


@dataclass(frozen=True)
class SpeciesBlock:
    valence: int
    profile: Profile


@dataclass(frozen=True)
class TimeBlock:
    t_end: float
    output_times: tuple[float, ...] = ()
    safety: float = 0.9
    dt_cap: float = 1e-2


@dataclass(frozen=True)
class ScenarioConfig:
    grid: Grid
    species: tuple[SpeciesBlock, ...]
    electrostatic: KernelSpec
    steric: KernelSpec
    external: ExternalPotential
    boundary: Union[NoFlux, PrescribedLeftInflux]
    time: TimeBlock
    correlated: CorrelatedPotential | None = None


@dataclass(frozen=True)
class SweepConfig:
    """A base scenario re-run for each value of one dotted parameter."""

    base: ScenarioConfig
    parameter: str
    values: tuple[float, ...]

    def __post_init__(self):
        if not self.values:
            raise ConfigError("values", "sweep needs at least one value")
        for v in self.values:
            set_parameter(self.base, self.parameter, v)  # validates


# --- parsing helpers -------------------------------------------------------

def _require(block: dict, key: str, path: str):
    if key not in block:
        raise ConfigError(f"{path}.{key}", "missing required field")
    return block[key]


def _number(block: dict, key: str, path: str, default=None) -> float:
    if key not in block:
        if default is None:
            raise ConfigError(f"{path}.{key}", "missing required field")
        return default
    value = block[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{path}.{key}", f"expected a number, got {value!r}")
    return float(value)


def _wrap(path: str, build, **kwargs):
    try:
        return build(**kwargs)
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc


_KERNEL_KINDS = {
    "regularized_newtonian": (RegularizedNewtonian, ("dim", "a")),
    "regularized_power": (RegularizedPower, ("eta", "k", "a")),
    "log2d_coulomb": (Log2DCoulomb, ("a",)),
    "exp_decay": (ExpDecay, ()),
    "van_der_waals": (VanDerWaals, ("correlation_length", "a")),
    "zero": (Zero, ()),
}


def _parse_kernel(block, path: str) -> KernelSpec:
    if not isinstance(block, dict):
        raise ConfigError(path, f"expected a kernel block, got {block!r}")
    kind = _require(block, "kind", path)
    if kind not in _KERNEL_KINDS:
        raise ConfigError(f"{path}.kind", f"unknown kernel kind {kind!r}")
    cls, names = _KERNEL_KINDS[kind]
    kwargs = {}
    for name in names:
        value = _require(block, name, path)
        kwargs[name] = int(value) if name == "dim" else float(value)
    return _wrap(path, cls, **kwargs)


def _kernel_to_dict(spec: KernelSpec) -> dict:
    for kind, (cls, names) in _KERNEL_KINDS.items():
        if isinstance(spec, cls):
            return {"kind": kind, **{n: getattr(spec, n) for n in names}}
    raise TypeError(f"unknown kernel spec {spec!r}")


def _parse_profile(block, path: str) -> Profile:
    if not isinstance(block, dict):
        raise ConfigError(path, f"expected a profile block, got {block!r}")
    kind = _require(block, "kind", path)
    if kind == "gaussian":
        center = _require(block, "center", path)
        if not isinstance(center, list) or not center:
            raise ConfigError(f"{path}.center", "expected a coordinate list")
        amplitude = _number(block, "amplitude", path)
        variance = _number(block, "variance", path)
        if amplitude < 0:
            raise ConfigError(f"{path}.amplitude", "must be nonnegative")
        if variance <= 0:
            raise ConfigError(f"{path}.variance", "must be positive")
        return GaussianProfile(amplitude, tuple(float(c) for c in center), variance)
    if kind == "constant":
        value = _number(block, "value", path)
        if value < 0:
            raise ConfigError(f"{path}.value", "must be nonnegative")
        return ConstantProfile(value)
    raise ConfigError(f"{path}.kind", f"unknown profile kind {kind!r}")


def _profile_to_dict(profile: Profile) -> dict:
    if isinstance(profile, GaussianProfile):
        return {
            "kind": "gaussian",
            "amplitude": profile.amplitude,
            "center": list(profile.center),
            "variance": profile.variance,
        }
    return {"kind": "constant", "value": profile.value}


def config_from_dict(doc: dict) -> ScenarioConfig:
    """Validate a parsed JSON document into a ScenarioConfig."""
    if not isinstance(doc, dict):
        raise ConfigError("<root>", "scenario must be a JSON object")

    grid_block = _require(doc, "grid", "<root>")
    grid = _wrap(
        "grid",
        Grid,
        dim=int(_number(grid_block, "dim", "grid")),
        half_width=_number(grid_block, "half_width", "grid"),
        n=int(_number(grid_block, "n", "grid")),
    )

    species_block = _require(doc, "species", "<root>")
    if not isinstance(species_block, list) or not species_block:
        raise ConfigError("species", "expected a nonempty species list")
    species = []
    for i, sp in enumerate(species_block):
        path = f"species[{i}]"
        valence = int(_number(sp, "valence", path))
        profile = _parse_profile(_require(sp, "profile", path), f"{path}.profile")
        if isinstance(profile, GaussianProfile) and len(profile.center) != grid.dim:
            raise ConfigError(
                f"{path}.profile.center",
                f"{len(profile.center)} coordinates for a {grid.dim}D grid",
            )
        species.append(SpeciesBlock(valence, profile))

    electrostatic = _parse_kernel(_require(doc, "electrostatic", "<root>"), "electrostatic")
    steric = _parse_kernel(_require(doc, "steric", "<root>"), "steric")

    ext_block = doc.get("external", {})
    external = _wrap(
        "external",
        ExternalPotential,
        quadratic=_number(ext_block, "quadratic", "external", default=0.0),
        field=_number(ext_block, "field", "external", default=0.0),
        offset=_number(ext_block, "offset", "external", default=0.0),
    )
    if external.field != 0.0 and grid.dim != 1:
        raise ConfigError("external.field", "linear field is only supported in 1D")

    bc_block = doc.get("boundary", {"kind": "no_flux"})
    kind = _require(bc_block, "kind", "boundary")
    if kind == "no_flux":
        boundary: Union[NoFlux, PrescribedLeftInflux] = NoFlux()
    elif kind == "left_influx":
        if grid.dim != 1:
            raise ConfigError("boundary.kind", "left_influx is only supported in 1D")
        index = int(_number(bc_block, "species", "boundary"))
        if not 0 <= index < len(species):
            raise ConfigError("boundary.species", f"index {index} out of range")
        width = _number(bc_block, "width", "boundary")
        if width <= 0:
            raise ConfigError("boundary.width", "must be positive")
        boundary = PrescribedLeftInflux(
            species=index,
            profile=GaussianPulse(
                amplitude=_number(bc_block, "amplitude", "boundary"),
                center=_number(bc_block, "center", "boundary"),
                width=width,
            ),
        )
    else:
        raise ConfigError("boundary.kind", f"unknown boundary kind {kind!r}")

    time_block = _require(doc, "time", "<root>")
    t_end = _number(time_block, "t_end", "time")
    if t_end < 0:
        raise ConfigError("time.t_end", "must be nonnegative")
    raw_outputs = time_block.get("output_times", [])
    if not isinstance(raw_outputs, list):
        raise ConfigError("time.output_times", "expected a list of times")
    outputs = tuple(float(t) for t in raw_outputs)
    if any(t < 0 or t > t_end for t in outputs):
        raise ConfigError("time.output_times", "times must lie in [0, t_end]")
    safety = _number(time_block, "safety", "time", default=0.9)
    if not 0 < safety <= 1:
        raise ConfigError("time.safety", "must lie in (0, 1]")
    dt_cap = _number(time_block, "dt_cap", "time", default=1e-2)
    if dt_cap <= 0:
        raise ConfigError("time.dt_cap", "must be positive")
    time = TimeBlock(t_end=t_end, output_times=outputs, safety=safety, dt_cap=dt_cap)

    correlated = None
    corr_block = doc.get("correlated")
    if corr_block is not None:
        lc = _number(corr_block, "correlation_length", "correlated")
        a = _number(corr_block, "a", "correlated")
        smoothing = _wrap("correlated", VanDerWaals, correlation_length=lc, a=a)
        correlated = _wrap(
            "correlated", CorrelatedPotential, correlation_length=lc, smoothing=smoothing
        )

    return ScenarioConfig(
        grid=grid,
        species=tuple(species),
        electrostatic=electrostatic,
        steric=steric,
        external=external,
        boundary=boundary,
        time=time,
        correlated=correlated,
    )


def config_to_dict(cfg: ScenarioConfig) -> dict:
    """Serialize a config to a JSON-compatible dict (round-trips exactly)."""
    doc = {
        "grid": {"dim": cfg.grid.dim, "half_width": cfg.grid.half_width, "n": cfg.grid.n},
        "species": [
            {"valence": sp.valence, "profile": _profile_to_dict(sp.profile)}
            for sp in cfg.species
        ],
        "electrostatic": _kernel_to_dict(cfg.electrostatic),
        "steric": _kernel_to_dict(cfg.steric),
        "external": {
            "quadratic": cfg.external.quadratic,
            "field": cfg.external.field,
            "offset": cfg.external.offset,
        },
        "time": {
            "t_end": cfg.time.t_end,
            "output_times": list(cfg.time.output_times),
            "safety": cfg.time.safety,
            "dt_cap": cfg.time.dt_cap,
        },
    }
    if isinstance(cfg.boundary, PrescribedLeftInflux):
        pulse = cfg.boundary.profile
        doc["boundary"] = {
            "kind": "left_influx",
            "species": cfg.boundary.species,
            "amplitude": pulse.amplitude,
            "center": pulse.center,
            "width": pulse.width,
        }
    else:
        doc["boundary"] = {"kind": "no_flux"}
    if cfg.correlated is not None:
        doc["correlated"] = {
            "correlation_length": cfg.correlated.correlation_length,
            "a": cfg.correlated.smoothing.a,
        }
    else:
        doc["correlated"] = None
    return doc


def load_config(path) -> ScenarioConfig:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError("<file>", f"not valid JSON: {exc}") from exc
    return config_from_dict(doc)


def save_config(cfg: ScenarioConfig, path) -> None:
    Path(path).write_text(json.dumps(config_to_dict(cfg), indent=2) + "\n")


def initial_state(cfg: ScenarioConfig) -> State:
    """Sample every species profile at the cell centers at t = 0."""
    species = []
    for i, sp in enumerate(cfg.species):
        values = sp.profile.sample(cfg.grid)
        if values.min() < 0:
            raise ConfigError(f"species[{i}].profile", "initial values are negative")
        species.append(SpeciesField(sp.valence, values))
    return State(cfg.grid, species, time=0.0)


def model_config(cfg: ScenarioConfig) -> ModelConfig:
    return ModelConfig(
        valences=tuple(sp.valence for sp in cfg.species),
        electrostatic=cfg.electrostatic,
        steric=cfg.steric,
        external=cfg.external,
        correlated=cfg.correlated,
    )


def set_parameter(cfg: ScenarioConfig, path: str, value: float) -> ScenarioConfig:
    """Return a copy of ``cfg`` with the dotted ``path`` replaced by ``value``.

    Paths address nested dataclass fields, e.g. ``steric.eta``,
    ``correlated.correlation_length``, ``external.field``, ``time.t_end``,
    or ``grid.n``.
    """
    if path == "correlated.correlation_length":
        # The length enters both the prefactor and the smoothing kernel;
        # rebuild them together so a sweep stays self-consistent.
        if cfg.correlated is None:
            raise ConfigError(path, "scenario has no correlated block")
        smoothing = replace(cfg.correlated.smoothing, correlation_length=float(value))
        return replace(
            cfg,
            correlated=CorrelatedPotential(
                correlation_length=float(value), smoothing=smoothing
            ),
        )

    parts = path.split(".")

    def rebuild(obj, parts):
        head = parts[0]
        if obj is None or head not in {f.name for f in dc_fields(obj)}:
            raise ConfigError(path, f"no such parameter (failed at {head!r})")
        if len(parts) == 1:
            current = getattr(obj, head)
            new = type(current)(value) if current is not None else value
            return replace(obj, **{head: new})
        return replace(obj, **{head: rebuild(getattr(obj, head), parts[1:])})

    try:
        return rebuild(cfg, parts)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(path, str(exc)) from exc
