# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:synopsis:
    Tests of the torus eigenbasis, field operations and snapshot files
"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import math
import os
import tempfile
import unittest

import numpy as np

from chemostokes.errors import ConfigurationError, GridMismatchError
from chemostokes.spectral import (Grid, SpectralBasis, SpectralField, VectorField, advect,
                                  build_eigenbasis, dealiased_product, divergence,
                                  eigen_growth_bounds, eigenfunction_sup, flux_divergence,
                                  gradient, heat_smooth, helmholtz_project, l2_pairing,
                                  laplacian, lp_norm, neg_laplacian_power, read_snapshot,
                                  sobolev_norm, to_physical, transform, transport_divergence,
                                  write_snapshot)


def random_field(basis, rng, decay=1.0):
    return SpectralField(rng.standard_normal(basis.K) * (1.0 + basis.lam) ** (-decay), basis)


class TestEigenbasis(unittest.TestCase):
    def setUp(self):
        self.grid = Grid(16, 16)
        self.basis = SpectralBasis(self.grid, 60)

    def test_grid_validation(self):
        with self.assertRaises(ConfigurationError):
            Grid(15, 16).validate()
        with self.assertRaises(ConfigurationError):
            Grid(2, 2).validate()
        with self.assertRaises(ConfigurationError):
            Grid(16, 16, side_length=-1.0).validate()

    def test_sorted_eigenvalues_and_multiplicity(self):
        eigen = build_eigenbasis(self.grid)
        self.assertEqual(len(eigen), 256)
        self.assertTrue(np.all(np.diff(eigen.eigenvalues) >= 0))
        self.assertEqual(eigen.eigenvalues[0], 0.0)
        self.assertEqual(int(np.sum(eigen.eigenvalues == 1.0)), 4)
        self.assertEqual(int(np.sum(eigen.eigenvalues == 2.0)), 4)

    def test_ordering_is_deterministic(self):
        a = build_eigenbasis(self.grid)
        b = build_eigenbasis(Grid(16, 16))
        np.testing.assert_array_equal(a.modes, b.modes)

    def test_discrete_orthonormality(self):
        values = self.basis.to_grid(np.eye(self.basis.K))
        cell = self.grid.area / self.grid.size
        gram = cell * np.einsum("aij,bij->ab", values, values)
        np.testing.assert_allclose(gram, np.eye(self.basis.K), atol=1e-12)

    def test_grid_round_trip(self):
        rng = np.random.default_rng(3)
        c = rng.standard_normal(self.basis.K)
        np.testing.assert_allclose(self.basis.from_grid(self.basis.to_grid(c)), c,
                                   atol=1e-12)
        np.testing.assert_allclose(
            self.basis.from_grid(self.basis.to_grid(c, padded=True), padded=True), c,
            atol=1e-12)

    def test_eigenfunction_sup(self):
        sup = eigenfunction_sup(self.basis.eigen, self.basis.K)
        self.assertAlmostEqual(sup[0], 1.0 / self.basis.L)
        values = np.abs(self.basis.to_grid(np.eye(self.basis.K)))
        self.assertTrue(np.all(values.max(axis=(1, 2)) <= sup + 1e-12))

    def test_growth_bounds(self):
        eigen = build_eigenbasis(self.grid)
        bounds = [eigen_growth_bounds(eigen, K) for K in (50, 200)]
        c = min(b[0] for b in bounds)
        C = max(b[1] for b in bounds)
        self.assertGreater(c, 0)
        self.assertLess(C / c, 10.0)
        with self.assertRaises(ConfigurationError):
            eigen_growth_bounds(eigen, 1)

    def test_band_interior(self):
        self.assertTrue(self.basis.band_interior)
        self.assertFalse(SpectralBasis(self.grid, 256).band_interior)
        with self.assertRaises(ConfigurationError):
            SpectralBasis(self.grid, 257)

    def test_wrong_length(self):
        with self.assertRaises(GridMismatchError):
            SpectralField(np.zeros(10), self.basis)


class TestFields(unittest.TestCase):
    def setUp(self):
        self.grid = Grid(16, 16)
        self.basis = SpectralBasis(self.grid, 60)
        self.rng = np.random.default_rng(11)
        self.x, self.y = self.grid.nodes()

    def mode(self, lam):
        return int(np.flatnonzero(self.basis.lam == lam)[0])

    def test_sobolev_norm_of_mode(self):
        f = SpectralField.mode(self.basis, self.mode(1.0), 1.0)
        self.assertAlmostEqual(sobolev_norm(f, -1), 1.0 / math.sqrt(2.0))
        self.assertAlmostEqual(sobolev_norm(f, 1), math.sqrt(2.0))
        self.assertAlmostEqual(sobolev_norm(f, 0), f.norm())

    def test_constant_and_mean(self):
        f = SpectralField.constant(self.basis, 2.0)
        self.assertAlmostEqual(f.mean(), 2.0 * self.grid.area)
        np.testing.assert_allclose(to_physical(f), 2.0, atol=1e-12)
        self.assertAlmostEqual(lp_norm(f, 2), 2.0 * self.basis.L)
        self.assertAlmostEqual(lp_norm(f, math.inf), 2.0)
        with self.assertRaises(ConfigurationError):
            lp_norm(f, 0.5)

    def test_helmholtz_projection(self):
        v = VectorField(random_field(self.basis, self.rng), random_field(self.basis, self.rng))
        pv = helmholtz_project(v)
        self.assertLessEqual((helmholtz_project(pv) - pv).norm(), 1e-12 * v.norm())
        self.assertLessEqual(divergence(pv).norm(), 1e-12 * v.norm())
        grad = gradient(random_field(self.basis, self.rng))
        self.assertLessEqual(helmholtz_project(grad).norm(), 1e-12 * grad.norm())
        self.assertEqual(pv.u1.coeffs[0], 0.0)

    def test_heat_smooth(self):
        f = random_field(self.basis, self.rng)
        g = heat_smooth(f, 0.3)
        np.testing.assert_allclose(g.coeffs, f.coeffs * np.exp(-0.3 * self.basis.lam))
        np.testing.assert_array_equal(heat_smooth(f, 0.0).coeffs, f.coeffs)
        with self.assertRaises(ConfigurationError):
            heat_smooth(f, -0.1)

    def test_heat_smooth_composes(self):
        f = random_field(self.basis, self.rng)
        twice = heat_smooth(heat_smooth(f, 0.2), 0.5)
        np.testing.assert_allclose(twice.coeffs, heat_smooth(f, 0.7).coeffs, rtol=1e-14,
                                   atol=0.0)
        for s in (-1, 0, 1):
            self.assertLessEqual(sobolev_norm(heat_smooth(f, 0.4), s), sobolev_norm(f, s))

    def test_sobolev_norm_is_monotone_in_s(self):
        for _ in range(5):
            f = random_field(self.basis, self.rng, decay=0.0)
            norms = [sobolev_norm(f, s) for s in (-1, -1.0 / 3.0, 0, 0.5, 1)]
            self.assertTrue(all(a <= b for a, b in zip(norms[:-1], norms[1:])), norms)

    def test_transform_shape_mismatch(self):
        with self.assertRaises(GridMismatchError):
            transform(np.zeros((16, 8)), self.basis)
        with self.assertRaises(GridMismatchError):
            transform(np.zeros((32, 32)), self.basis)

    def test_neg_laplacian_power(self):
        f = random_field(self.basis, self.rng)
        np.testing.assert_allclose(neg_laplacian_power(f, 1).coeffs, -laplacian(f).coeffs)
        self.assertEqual(neg_laplacian_power(f, 0.5).coeffs[0], f.coeffs[0])
        self.assertEqual(neg_laplacian_power(f, -0.5).coeffs[0], 0.0)

    def test_gradient_of_cosine(self):
        f = transform(np.cos(self.x), self.basis)
        grad = gradient(f)
        np.testing.assert_allclose(to_physical(grad.u1), -np.sin(self.x), atol=1e-12)
        np.testing.assert_allclose(to_physical(grad.u2), 0.0, atol=1e-12)

    def test_dealiased_product(self):
        f = transform(np.cos(self.x), self.basis)
        g = transform(np.cos(self.x) * np.sin(self.y), self.basis)
        expected = transform(np.cos(self.x) ** 2 * np.sin(self.y), self.basis)
        np.testing.assert_allclose(dealiased_product(f, g).coeffs, expected.coeffs,
                                   atol=1e-12)

    def test_advection_antisymmetry(self):
        u = helmholtz_project(VectorField(random_field(self.basis, self.rng),
                                          random_field(self.basis, self.rng)))
        c = random_field(self.basis, self.rng)
        pairing = l2_pairing(advect(u, c), c)
        self.assertLessEqual(abs(pairing), 1e-10 * u.norm() * c.norm() ** 2)

    def test_transport_matches_advection(self):
        u = helmholtz_project(VectorField(random_field(self.basis, self.rng),
                                          random_field(self.basis, self.rng)))
        f = random_field(self.basis, self.rng)
        np.testing.assert_allclose(transport_divergence(u, f).coeffs, advect(u, f).coeffs,
                                   atol=1e-12)

    def test_divergence_forms_have_zero_mean(self):
        w = random_field(self.basis, self.rng) + SpectralField.constant(self.basis, 1.0)
        c = random_field(self.basis, self.rng)
        self.assertEqual(flux_divergence(w, c).coeffs[0], 0.0)
        u = VectorField(random_field(self.basis, self.rng), random_field(self.basis, self.rng))
        self.assertEqual(transport_divergence(u, w).coeffs[0], 0.0)

    def test_fields_on_different_bases(self):
        other = SpectralBasis(self.grid, 60)
        with self.assertRaises(GridMismatchError):
            SpectralField.zeros(self.basis) + SpectralField.zeros(other)


class TestSnapshot(unittest.TestCase):
    def setUp(self):
        self.basis = SpectralBasis(Grid(16, 16), 40)
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def test_write_and_read(self):
        rng = np.random.default_rng(5)
        field = SpectralField(rng.standard_normal(self.basis.K), self.basis)
        path = os.path.join(self.tmp.name, "snap.txt")
        write_snapshot(field, path)
        with open(path) as handle:
            header = handle.readline().split()
        self.assertEqual(header[0], "grid")
        self.assertEqual(header[-1], "ordering=lex")
        back = read_snapshot(path, self.basis)
        np.testing.assert_array_equal(back.coeffs, field.coeffs)
        fresh = read_snapshot(path)
        self.assertEqual(fresh.basis.K, self.basis.K)

    def test_mismatched_basis(self):
        path = os.path.join(self.tmp.name, "snap.txt")
        write_snapshot(SpectralField.zeros(self.basis), path)
        with self.assertRaises(GridMismatchError):
            read_snapshot(path, SpectralBasis(Grid(16, 16), 30))

    def test_not_a_snapshot(self):
        path = os.path.join(self.tmp.name, "junk.txt")
        with open(path, "w") as handle:
            handle.write("hello\n")
        with self.assertRaises(GridMismatchError):
            read_snapshot(path)


if __name__ == "__main__":
    unittest.main()
