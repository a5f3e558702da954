import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from ionfv.grid import build_grid, error_norms, restrict, total_mass

import oracles


class TestBuildGrid:
    def test_small_grid_centers(self):
        g = build_grid(1, 10, 4)
        assert g.spacing == 5.0
        np.testing.assert_array_equal(g.axis_centers(), [-7.5, -2.5, 2.5, 7.5])

    def test_fine_1d_spacing(self):
        assert build_grid(1, 20, 2**11).spacing == 0.01953125

    def test_2d_spacing(self):
        g = build_grid(2, 10, 512)
        assert g.spacing == 0.0390625
        assert g.cell_volume == 0.0390625**2

    def test_spacing_times_n_recovers_box(self):
        g = build_grid(1, 10, 6)
        assert g.n * g.spacing == pytest.approx(2 * g.half_width, abs=1e-15)

    @pytest.mark.parametrize("dim,L,n", [(1, 10, 3), (1, 10, 0), (1, -1, 4), (1, 0, 4), (3, 10, 4), (2, 10, 7)])
    def test_rejects_bad_arguments(self, dim, L, n):
        with pytest.raises(ValueError):
            build_grid(dim, L, n)


class TestTotalMass:
    def test_constant_field(self):
        for n in (4, 16, 128):
            g = build_grid(1, 10, n)
            assert total_mass(np.ones(n), g) == pytest.approx(20.0, rel=1e-14)

    def test_zero_field(self):
        g = build_grid(1, 10, 8)
        assert total_mass(np.zeros(8), g) == 0.0

    def test_unit_gaussian_quadrature(self):
        # Cell-center sampling of a unit-mass Gaussian integrates to the
        # true mass up to boundary-exponential error.
        g = build_grid(1, 20, 2**11)
        x = g.axis_centers()
        values = np.exp(-((x + 2) ** 2) / 2) / np.sqrt(2 * np.pi)
        exact, _ = integrate.quad(
            lambda s: np.exp(-((s + 2) ** 2) / 2) / np.sqrt(2 * np.pi), -20, 20
        )
        assert abs(total_mass(values, g) - exact) < 1e-8

    def test_2d_constant(self):
        g = build_grid(2, 5, 10)
        assert total_mass(np.full((10, 10), 2.0), g) == pytest.approx(200.0, rel=1e-14)


class TestRestrict:
    def test_mean_of_pairs(self):
        fine, coarse = build_grid(1, 1, 4), build_grid(1, 1, 2)
        out = restrict(np.array([1.0, 3.0, 5.0, 7.0]), fine, coarse)
        np.testing.assert_allclose(out, [2.0, 6.0])

    def test_constant_preserved(self):
        fine, coarse = build_grid(1, 3, 16), build_grid(1, 3, 4)
        np.testing.assert_array_equal(restrict(np.full(16, 1.7), fine, coarse), np.full(4, 1.7))

    def test_matches_direct_averages(self, rng):
        fine, coarse = build_grid(1, 3, 8), build_grid(1, 3, 2)
        values = rng.random(8)
        np.testing.assert_allclose(
            restrict(values, fine, coarse), oracles.restrict_direct(values, 4), rtol=1e-14
        )

    def test_2d_matches_block_means(self, rng):
        fine, coarse = build_grid(2, 1, 8), build_grid(2, 1, 4)
        values = rng.random((8, 8))
        out = restrict(values, fine, coarse)
        for j in range(4):
            for k in range(4):
                block = values[2 * j : 2 * j + 2, 2 * k : 2 * k + 2]
                assert out[j, k] == pytest.approx(block.mean(), rel=1e-14)

    def test_mass_preserved(self, rng):
        fine, coarse = build_grid(1, 5, 64), build_grid(1, 5, 8)
        values = rng.random(64)
        m_fine = total_mass(values, fine)
        m_coarse = total_mass(restrict(values, fine, coarse), coarse)
        assert abs(m_coarse - m_fine) <= 1e-14 * abs(m_fine)

    def test_rejects_non_nested(self):
        with pytest.raises(ValueError):
            restrict(np.zeros(6), build_grid(1, 1, 6), build_grid(1, 1, 4))
        with pytest.raises(ValueError):
            restrict(np.zeros(12), build_grid(1, 1, 12), build_grid(1, 1, 4))
        with pytest.raises(ValueError):
            restrict(np.zeros(8), build_grid(1, 1, 8), build_grid(1, 2, 4))


class TestErrorNorms:
    def test_identical_fields(self, rng):
        g = build_grid(1, 10, 8)
        a = rng.random(8)
        assert error_norms(a, a, g) == (0.0, 0.0, 0.0)

    def test_constant_difference(self):
        g = build_grid(1, 10, 16)
        a, b = np.ones(16), np.zeros(16)
        l_inf, l1, l2 = error_norms(a, b, g)
        assert l_inf == 1.0
        assert l1 == pytest.approx(20.0, rel=1e-14)
        assert l2 == pytest.approx(np.sqrt(20.0), rel=1e-14)

    def test_matches_direct_sums(self, rng):
        g = build_grid(1, 10, 8)
        a, b = rng.random(8), rng.random(8)
        expected = oracles.error_norms_direct(a, b, g.cell_volume)
        np.testing.assert_allclose(error_norms(a, b, g), expected, rtol=1e-13)

    def test_multispecies_stacks_sum_over_species(self, rng):
        g = build_grid(1, 10, 8)
        a, b = rng.random((2, 8)), rng.random((2, 8))
        expected = oracles.error_norms_direct(a, b, g.cell_volume)
        np.testing.assert_allclose(error_norms(a, b, g), expected, rtol=1e-13)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=50, deadline=None)
    def test_norm_axioms(self, seed):
        rng = np.random.default_rng(seed)
        g = build_grid(1, 4, 8)
        a, b, c = rng.normal(size=(3, 8))
        for i in range(3):
            ab = error_norms(a, b, g)[i]
            ba = error_norms(b, a, g)[i]
            assert ab == ba
            ac = error_norms(a, c, g)[i]
            cb = error_norms(c, b, g)[i]
            assert ab <= ac + cb + 1e-12 * (ac + cb + 1)
        assert error_norms(a, a, g) == (0.0, 0.0, 0.0)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=50, deadline=None)
    def test_cauchy_schwarz_l1_vs_l2(self, seed):
        rng = np.random.default_rng(seed)
        g = build_grid(1, 4, 16)
        a, b = rng.normal(size=(2, 16))
        _, l1, l2 = error_norms(a, b, g)
        assert l1 <= np.sqrt(2 * g.half_width) * l2 * (1 + 1e-12)
