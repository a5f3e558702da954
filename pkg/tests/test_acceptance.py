"""End-to-end acceptance suite.

Each test covers one release gate at its stated tolerance and prints a
PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``).
Long scenario runs are shared through module-scoped fixtures; the whole
module is desk-scale but takes a few minutes.
"""

import time
from pathlib import Path

import numpy as np
import pytest
from scipy import integrate

from ionfv.config import initial_state, load_config, model_config, set_parameter
from ionfv.grid import build_grid, error_norms, restrict
from ionfv.kernels import build_table, convolve, double_convolve
from ionfv.model import build_tables, chemical_potential
from ionfv.solver import NoFlux, face_velocities, fluxes, run, step_forward_euler
from ionfv.diagnostics import (
    discrete_dissipation,
    discrete_energy,
    second_moment_bound_constant,
)

from conftest import random_kernels, random_model, random_state_1d, random_state_2d
import oracles

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def report(name: str, ok: bool, detail: str) -> None:
    print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} ({detail})")


def run_scenario(cfg):
    state = initial_state(cfg)
    model = model_config(cfg)
    return run(
        state,
        model,
        cfg.boundary,
        t_end=cfg.time.t_end,
        output_times=cfg.time.output_times,
        safety=cfg.time.safety,
        dt_cap=cfg.time.dt_cap,
    )


@pytest.fixture(scope="module")
def steady_1d_run():
    """Shipped steady scenario at n=2^10, extended to t=23.

    Serves the mass-conservation, energy-decay, flatness, and
    second-moment gates; outputs hourly plus the half-integer start.
    """
    from dataclasses import replace

    cfg = set_parameter(load_config(CONFIG_DIR / "steady_1d.json"), "grid.n", 1024)
    outputs = tuple([0.5] + [float(t) for t in range(1, 24)])
    cfg = replace(cfg, time=replace(cfg.time, t_end=23.0, output_times=outputs))
    return cfg, run_scenario(cfg)


@pytest.fixture(scope="module")
def steady_2d_run():
    cfg = load_config(CONFIG_DIR / "steady_2d.json")
    return cfg, run_scenario(cfg)


class TestPositivity:
    def test_positivity_random_states(self):
        # >= 200 random nonnegative states with random kernel parameters;
        # one CFL-limited Euler step must keep every cell >= 0 exactly.
        t0 = time.time()
        rng = np.random.default_rng(7)
        worst = np.inf
        for trial in range(220):
            if trial % 2 == 0:
                n = int(rng.integers(8, 129)) * 2  # up to 256 in 1D
                state = random_state_1d(rng, n=n, scale=float(rng.uniform(0.05, 8.0)))
            else:
                n = int(rng.integers(4, 33)) * 2  # up to 64 in 2D
                state = random_state_2d(rng, n=n, scale=float(rng.uniform(0.05, 8.0)))
            model = random_model(rng)
            tables = build_tables(model, state.grid)
            new, _ = step_forward_euler(state, model, tables, safety=1.0)
            worst = min(worst, float(new.concentrations().min()))
        ok = worst >= 0.0
        report("positivity", ok, f"220 states, min cell value {worst:.3e}, {time.time()-t0:.0f}s")
        assert ok


class TestMassConservation:
    def test_no_flux_mass_drift(self, steady_1d_run):
        cfg, result = steady_1d_run
        drifts = []
        for m in range(len(cfg.species)):
            series = [rec.masses[m] for rec in result.records]
            m0 = series[0]
            drifts.append(max(abs(v - m0) for v in series) / abs(m0))
        ok = max(drifts) <= 1e-10
        report("mass-conservation", ok, f"max relative drift {max(drifts):.3e}")
        assert ok


class TestSemiDiscreteEnergyRate:
    def test_flux_form_rate_bounds_dissipation(self):
        # sum_m sum_j psi (F_{j+1/2} - F_{j-1/2}) >= D - tol for >= 200
        # randomized positive states (equivalently dE/dt <= -D).
        t0 = time.time()
        rng = np.random.default_rng(11)
        worst_gap = np.inf
        for trial in range(240):
            if trial % 2 == 0:
                state = random_state_1d(rng, n=int(rng.integers(8, 65)), scale=2.0)
            else:
                state = random_state_2d(rng, n=int(rng.integers(4, 17)), scale=2.0)
            state = state.with_concentrations(state.concentrations() + 1e-3, 0.0)
            model = random_model(rng)
            tables = build_tables(model, state.grid)
            psi = chemical_potential(state, model, tables)
            vel = face_velocities(psi, state.grid)
            d = discrete_dissipation(state, vel)
            if state.grid.dim == 1:
                f = fluxes(state, vel, NoFlux(), 0.0)
                rate = float(np.sum(psi * np.diff(f, axis=1)))
            else:
                fx, fy = fluxes(state, vel, NoFlux(), 0.0)
                rate = float(
                    np.sum(psi * (np.diff(fx, axis=1) + np.diff(fy, axis=2)))
                )
            worst_gap = min(worst_gap, rate - d)
            assert rate >= d - 1e-12 * max(1.0, abs(d))
        report(
            "semi-discrete-energy-rate",
            True,
            f"240 states, min(rate - D) = {worst_gap:.3e}, {time.time()-t0:.0f}s",
        )


class TestEnergyDecay:
    def test_energy_monotone_1d(self, steady_1d_run):
        _, result = steady_1d_run
        energies = [rec.energy for rec in result.records]
        worst = max(b - a for a, b in zip(energies, energies[1:]))
        ok = all(
            b <= a + 1e-8 * abs(a) for a, b in zip(energies, energies[1:])
        )
        report("energy-decay-1d", ok, f"max interval rise {worst:.3e}")
        assert ok

    def test_energy_monotone_2d(self, steady_2d_run):
        _, result = steady_2d_run
        energies = [rec.energy for rec in result.records]
        worst = max(b - a for a, b in zip(energies, energies[1:]))
        ok = all(
            b <= a + 1e-8 * abs(a) for a, b in zip(energies, energies[1:])
        )
        report("energy-decay-2d", ok, f"max interval rise {worst:.3e}")
        assert ok


class TestConvergenceOrder:
    def test_first_order_in_space(self):
        # Refinement scenario, ladder 2^5..2^9 against reference 2^11 at
        # t = 1; fitted log-log slopes of all three norms in [0.8, 1.5].
        t0 = time.time()
        base = load_config(CONFIG_DIR / "convergence_1d.json")
        ref_cfg = set_parameter(base, "grid.n", 2048)
        ref_state = run_scenario(ref_cfg).states[-1]

        ladder = [32, 64, 128, 256, 512]
        spacings, errors = [], {"linf": [], "l1": [], "l2": []}
        for n in ladder:
            cfg = set_parameter(base, "grid.n", n)
            final = run_scenario(cfg).states[-1]
            ref_coarse = np.stack(
                [restrict(sp.values, ref_state.grid, final.grid) for sp in ref_state.species]
            )
            linf, l1, l2 = error_norms(final.concentrations(), ref_coarse, final.grid)
            spacings.append(final.grid.spacing)
            errors["linf"].append(linf)
            errors["l1"].append(l1)
            errors["l2"].append(l2)

        slopes = {
            name: float(np.polyfit(np.log(spacings), np.log(vals), 1)[0])
            for name, vals in errors.items()
        }
        ok = all(0.8 <= s <= 1.5 for s in slopes.values())
        report(
            "convergence-order",
            ok,
            f"slopes linf={slopes['linf']:.3f} l1={slopes['l1']:.3f} "
            f"l2={slopes['l2']:.3f}, {time.time()-t0:.0f}s",
        )
        assert ok


class TestSteadyStateFlatness:
    def test_flat_potential_and_small_dissipation(self, steady_1d_run):
        _, result = steady_1d_run
        final = result.records[-1]
        flat_ok = all(f < 1e-2 for f in final.flatness)
        d_ok = final.dissipation < 1e-6
        report(
            "steady-state-flatness",
            flat_ok and d_ok,
            f"flatness {tuple(f'{f:.3e}' for f in final.flatness)}, D(23) {final.dissipation:.3e}",
        )
        assert flat_ok and d_ok


class TestFiniteSizeEffect:
    def test_eta_sweep_1d_peaks_decrease(self):
        t0 = time.time()
        base = set_parameter(load_config(CONFIG_DIR / "steady_1d.json"), "grid.n", 1024)
        etas = [0.0, 1 / 256, 1 / 128, 1 / 64, 1 / 32, 1 / 16, 1 / 8, 1 / 4, 1 / 2]
        peaks = []
        for eta in etas:
            cfg = set_parameter(base, "steric.eta", eta)
            final = run_scenario(cfg).states[-1]
            peaks.append([sp.values.max() for sp in final.species])
        peaks = np.array(peaks)
        ok = bool((np.diff(peaks, axis=0) < 0).all())
        report(
            "finite-size-1d",
            ok,
            f"peaks c1 {peaks[0,0]:.4f}->{peaks[-1,0]:.4f}, "
            f"c2 {peaks[0,1]:.4f}->{peaks[-1,1]:.4f}, {time.time()-t0:.0f}s",
        )
        assert ok

    def test_eta_sweep_2d_peaks_decrease(self):
        t0 = time.time()
        base = load_config(CONFIG_DIR / "steady_2d.json")
        etas = [0.0, 1 / 128, 1 / 64, 1 / 32, 1 / 16, 1 / 8, 1 / 4, 1 / 2, 1.0]
        peaks = []
        for eta in etas:
            cfg = set_parameter(base, "steric.eta", eta)
            final = run_scenario(cfg).states[-1]
            peaks.append([sp.values.max() for sp in final.species])
        peaks = np.array(peaks)
        ok = bool((np.diff(peaks, axis=0) < 0).all())
        report(
            "finite-size-2d",
            ok,
            f"peaks c1 {peaks[0,0]:.4f}->{peaks[-1,0]:.4f}, {time.time()-t0:.0f}s",
        )
        assert ok


class TestSecondMomentBound:
    def test_sigma2_stays_below_linear_envelope(self, steady_1d_run):
        cfg, result = steady_1d_run
        model = model_config(cfg)
        c_bound = second_moment_bound_constant(model, result.records[0].masses)
        s0 = result.records[0].second_moment
        margin = min(
            s0 + c_bound * rec.time + 1e-6 - rec.second_moment for rec in result.records
        )
        ok = margin >= 0.0
        report(
            "second-moment-bound",
            ok,
            f"C={c_bound:.3f}, min envelope margin {margin:.3e}",
        )
        assert ok

    def test_printed_constant_example(self):
        from ionfv.kernels import RegularizedNewtonian, RegularizedPower
        from ionfv.model import ModelConfig

        model = ModelConfig(
            valences=(1, -1),
            electrostatic=RegularizedNewtonian(2, 0.5),
            steric=RegularizedPower(1.0, 2.0, 0.5),
        )
        assert second_moment_bound_constant(model, [1.0, 1.0]) == pytest.approx(20.0)


class TestElectricFieldDrift:
    def test_opposite_drift_of_charged_species(self):
        t0 = time.time()
        cfg = load_config(CONFIG_DIR / "efield_1d.json")
        result = run_scenario(cfg)
        x = cfg.grid.axis_centers()
        first, last = result.states[0], result.states[-1]
        arg0 = [float(x[np.argmax(sp.values)]) for sp in first.species]
        arg1 = [float(x[np.argmax(sp.values)]) for sp in last.species]
        ok = arg1[0] < arg0[0] and arg1[1] > arg0[1]
        report(
            "electric-field-drift",
            ok,
            f"c1 argmax {arg0[0]:+.3f}->{arg1[0]:+.3f}, "
            f"c2 argmax {arg0[1]:+.3f}->{arg1[1]:+.3f}, {time.time()-t0:.0f}s",
        )
        assert ok


class TestBoundaryInflux:
    def test_injected_mass_accounting(self):
        t0 = time.time()
        cfg = set_parameter(load_config(CONFIG_DIR / "bvp_1d.json"), "grid.n", 1024)
        result = run_scenario(cfg)
        gained = result.records[-1].masses[0] - result.records[0].masses[0]
        injected = result.injected_mass[-1]
        rel = abs(gained - injected) / abs(injected)
        pulse = cfg.boundary.profile
        integral, _ = integrate.quad(pulse, 0.0, cfg.time.t_end)
        ok = rel <= 1e-10 and abs(gained - 1.0) <= 1e-3
        report(
            "boundary-influx",
            ok,
            f"gain {gained:.8f}, stepper sum rel err {rel:.2e}, "
            f"|gain-1| {abs(gained-1):.2e} (quad {integral:.8f}), {time.time()-t0:.0f}s",
        )
        assert ok


class TestCorrelatedPotentialTrend:
    def test_species_separate_as_correlation_length_grows(self):
        # Argmax distance must be non-decreasing in l_c.  At equilibrium
        # both profiles center on the origin, so the distances can all be
        # zero; the species gap then shows up in the peak values, which we
        # track as well: weaker screening (larger l_c) binds the mixture
        # less tightly, letting the two concentrations drift apart.
        t0 = time.time()
        base = set_parameter(load_config(CONFIG_DIR / "correlated_1d.json"), "grid.n", 512)
        lengths = [1 / 64, 1.0, 7.44]
        distances, value_gaps = [], []
        for lc in lengths:
            cfg = set_parameter(base, "correlated.correlation_length", lc)
            final = run_scenario(cfg).states[-1]
            x = cfg.grid.axis_centers()
            c1, c2 = final.species[0].values, final.species[1].values
            a1 = float(x[np.argmax(c1)])
            a2 = float(x[np.argmax(c2)])
            distances.append(abs(a1 - a2))
            value_gaps.append(abs(float(c1.max()) - float(c2.max())))
        ok = all(b >= a for a, b in zip(distances, distances[1:]))
        ok = ok and all(b >= a for a, b in zip(value_gaps, value_gaps[1:]))
        report(
            "correlated-potential-trend",
            ok,
            f"argmax distances {[f'{d:.4f}' for d in distances]}, "
            f"peak gaps {[f'{g:.4f}' for g in value_gaps]}, {time.time()-t0:.0f}s",
        )
        assert ok


class TestOracleEquivalence:
    def test_convolutions_and_energies_match_brute_force(self):
        # >= 100 random cases per operation on n <= 16 at 1e-12 relative.
        t0 = time.time()
        rng = np.random.default_rng(23)
        worst = 0.0
        for _ in range(60):
            n = int(rng.integers(3, 9)) * 2
            g = build_grid(1, float(rng.uniform(1, 5)), n)
            k_spec, w_spec = random_kernels(rng)
            kt, wt = build_table(k_spec, g), build_table(w_spec, g)
            density = rng.normal(size=n)
            exp_conv = oracles.convolve_1d(kt.values, density, g.spacing)
            got = convolve(kt, density)
            worst = max(worst, np.max(np.abs(got - exp_conv)) / max(1.0, np.max(np.abs(exp_conv))))

            l_c = float(rng.uniform(0.2, 3.0))
            exp_double = oracles.double_convolve_1d(wt.values, kt.values, density, g.spacing, l_c)
            got_double = double_convolve(wt, kt, density, g, l_c)
            worst = max(
                worst,
                np.max(np.abs(got_double - exp_double)) / max(1.0, np.max(np.abs(exp_double))),
            )

            state = random_state_1d(rng, n=n, half_width=g.half_width)
            model = random_model(rng)
            tables = build_tables(model, g)
            e = discrete_energy(state, model, tables)
            exp_e = oracles.energy_1d(
                state.concentrations(),
                [sp.valence for sp in state.species],
                tables.electrostatic.values,
                tables.steric.values,
                g.axis_centers(),
                g.spacing,
                q=model.external.quadratic,
                e_field=model.external.field,
                offset=model.external.offset,
            )
            worst = max(worst, max(abs(a - b) for a, b in zip(e, exp_e)) / max(1.0, abs(exp_e[0])))

            u = rng.normal(size=(2, n - 1))
            d = discrete_dissipation(state, u)
            exp_d = oracles.dissipation_1d(state.concentrations(), u, g.spacing)
            worst = max(worst, abs(d - exp_d) / max(1.0, abs(exp_d)))

        for _ in range(40):
            n = int(rng.integers(2, 6)) * 2
            g = build_grid(2, float(rng.uniform(1, 3)), n)
            k_spec, w_spec = random_kernels(rng)
            kt = build_table(k_spec, g)
            density = rng.normal(size=(n, n))
            exp_conv = oracles.convolve_2d(kt.values, density, g.spacing)
            got = convolve(kt, density)
            worst = max(worst, np.max(np.abs(got - exp_conv)) / max(1.0, np.max(np.abs(exp_conv))))

            state = random_state_2d(rng, n=n, half_width=g.half_width)
            u = rng.normal(size=(2, n - 1, n))
            v = rng.normal(size=(2, n, n - 1))
            d = discrete_dissipation(state, (u, v))
            exp_d = oracles.dissipation_2d(state.concentrations(), u, v, g.spacing)
            worst = max(worst, abs(d - exp_d) / max(1.0, abs(exp_d)))

        ok = worst <= 1e-12
        report("oracle-equivalence", ok, f"100 cases, worst relative gap {worst:.3e}, {time.time()-t0:.0f}s")
        assert ok
