# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:synopsis:
    Tests of the iteration metric, the Haar projection and the Picard driver
"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import csv
import math
import os
import tempfile
import unittest

import numpy as np

from chemostokes import conf
from chemostokes.errors import ConfigurationError
from chemostokes.fixedpoint import (FixpointConfig, bounded_set_radius, ensemble_mnorm,
                                    haar_project, lipschitz_probe, picard, picard_map,
                                    write_residual_csv, x_norm)
from chemostokes.linearized import (Model, ModelParams, ScalarTrajectory, initial_state,
                                    solve_coupled)
from chemostokes.noise import NoiseConfig, NoisePath, sample_path
from chemostokes.spectral import Grid, SpectralBasis, SpectralField


def random_walk(basis, steps, dt, rng):
    increments = rng.standard_normal((steps, basis.K)) * math.sqrt(dt)
    values = np.vstack([np.zeros(basis.K), np.cumsum(increments, axis=0)])
    return ScalarTrajectory(values, dt, basis)


class TestFixpointConfig(unittest.TestCase):
    def test_for_q(self):
        config = FixpointConfig.for_q(5.0)
        self.assertEqual(config.m_star, 12)
        self.assertAlmostEqual(config.s_star2, 1.0 / 3.0)
        self.assertEqual(config.r_star, 5.0)
        config.validate(5.0)

    def test_validation(self):
        with self.assertRaises(ConfigurationError):
            FixpointConfig.for_q(5.0, m_star=11).validate(5.0)
        with self.assertRaises(ConfigurationError):
            FixpointConfig.for_q(5.0, s_star2=0.5).validate(5.0)
        with self.assertRaises(ConfigurationError) as ctx:
            FixpointConfig.for_q(5.0, r_star=6.0).validate(5.0)
        self.assertEqual(ctx.exception.key, "r_star")
        with self.assertRaises(ConfigurationError):
            FixpointConfig.for_q(5.0, tol=0.0).validate(5.0)
        with self.assertRaises(ConfigurationError):
            FixpointConfig.for_q(5.0, haar_level=-1).validate(5.0)


class TestXNorm(unittest.TestCase):
    def setUp(self):
        self.basis = SpectralBasis(Grid(16, 16), 40)
        self.config = FixpointConfig.for_q(5.0)
        self.rng = np.random.default_rng(4)

    def test_constant_in_time(self):
        index = int(np.flatnonzero(self.basis.lam == 1.0)[0])
        field = SpectralField.mode(self.basis, index)
        xi = ScalarTrajectory.constant(field, 16, 0.05)
        s, m = self.config.s_star2, self.config.m_star
        expected = 2.0 ** (-s / 2.0) * 0.8 ** (1.0 / m)
        self.assertAlmostEqual(x_norm(xi, self.config), expected)

    def test_left_riemann_sum_ignores_final_value(self):
        xi = random_walk(self.basis, 16, 0.05, self.rng)
        before = x_norm(xi, self.config)
        xi.values[-1] *= 1e6
        self.assertEqual(x_norm(xi, self.config), before)

    def test_zero_and_scaling(self):
        self.assertEqual(x_norm(ScalarTrajectory.zeros(self.basis, 8, 0.1), self.config), 0.0)
        xi = random_walk(self.basis, 16, 0.05, self.rng)
        self.assertAlmostEqual(x_norm(xi * 3.0, self.config), 3.0 * x_norm(xi, self.config))

    def test_ensemble_norm(self):
        m = self.config.m_star
        value = ensemble_mnorm([1.0, 2.0], self.config)
        self.assertAlmostEqual(value.value, ((1.0 + 2.0 ** m) / 2.0) ** (1.0 / m))
        self.assertGreater(value.stderr, 0.0)
        same = ensemble_mnorm([0.5, 0.5, 0.5], self.config)
        self.assertAlmostEqual(same.value, 0.5)
        self.assertEqual(same.stderr, 0.0)
        self.assertEqual(ensemble_mnorm([0.7], self.config).stderr, 0.0)
        self.assertEqual(ensemble_mnorm([0.0, 0.0], self.config).value, 0.0)
        with self.assertRaises(ValueError):
            ensemble_mnorm([], self.config)
        walks = [random_walk(self.basis, 8, 0.1, self.rng) for _ in range(3)]
        direct = ensemble_mnorm([x_norm(w, self.config) for w in walks], self.config)
        self.assertAlmostEqual(ensemble_mnorm(walks, self.config).value, direct.value)

    def test_bounded_set_radius(self):
        zero = ScalarTrajectory.zeros(self.basis, 8, 0.1)
        self.assertEqual(bounded_set_radius([zero], 12, 5.0, 5.0), 0.0)
        walk = random_walk(self.basis, 8, 0.1, self.rng)
        self.assertGreater(bounded_set_radius([walk, zero], 12, 5.0, 5.0), 0.0)


class TestHaar(unittest.TestCase):
    def setUp(self):
        self.basis = SpectralBasis(Grid(16, 16), 20)
        self.config = FixpointConfig.for_q(5.0)
        self.rng = np.random.default_rng(8)

    def test_level_zero_is_identity(self):
        xi = random_walk(self.basis, 16, 0.05, self.rng)
        np.testing.assert_array_equal(haar_project(xi, 0).values, xi.values)

    def test_cell_means(self):
        ramp = np.arange(17, dtype=float)[:, None] * np.ones(self.basis.K)
        xi = ScalarTrajectory(ramp, 0.1, self.basis)
        out = haar_project(xi, 2).values[:, 0]
        np.testing.assert_array_equal(out[:4], 0.0)
        np.testing.assert_allclose(out[4:8], 2.0)
        np.testing.assert_allclose(out[8:12], 6.0)
        np.testing.assert_allclose(out[12:], 10.0)

    def test_constant_is_preserved(self):
        xi = ScalarTrajectory.constant(SpectralField.constant(self.basis, 1.5), 16, 0.1)
        np.testing.assert_allclose(haar_project(xi, 3).values, xi.values)

    def test_contraction_from_zero_start(self):
        for _ in range(5):
            f = random_walk(self.basis, 32, 1.0 / 32, self.rng)
            g = random_walk(self.basis, 32, 1.0 / 32, self.rng)
            for level in (1, 2, 3):
                pf, pg = haar_project(f, level), haar_project(g, level)
                self.assertLessEqual(x_norm(pf, self.config), x_norm(f, self.config) + 1e-14)
                self.assertLessEqual(x_norm(pf - pg, self.config),
                                     x_norm(f - g, self.config) + 1e-14)

    def test_indivisible_steps(self):
        with self.assertRaises(ConfigurationError):
            haar_project(random_walk(self.basis, 10, 0.1, self.rng), 2)


class TestPicard(unittest.TestCase):
    def setUp(self):
        conf.v = False
        self.basis = SpectralBasis(Grid(16, 16), 40)
        self.steps = 20
        self.model = Model(ModelParams(dt=1e-3, steps=self.steps), self.basis)
        self.initial = initial_state(self.basis)
        self.noise = sample_path(NoiseConfig(K=40, master_seed=11), self.steps, 1e-3, 2)
        self.xi0 = ScalarTrajectory.constant(self.initial.n, self.steps, 1e-3)

    def test_converges_to_the_coupled_run(self):
        config = FixpointConfig.for_q(5.0, kappa=4.0, tol=1e-12, max_iter=30)
        result = picard(self.xi0, self.noise, self.model, config, self.initial)
        self.assertTrue(result.converged)
        self.assertLessEqual(result.iterations, self.steps + 1)
        self.assertEqual(result.path_id, 2)
        coupled = solve_coupled(self.model, self.noise, 4.0, initial=self.initial)
        np.testing.assert_allclose(result.xi.values, coupled.n, atol=1e-10)

    def linear_setup(self):
        model = self.model.with_params(chi=0.0, delta_n=0.0, delta_c=0.0,
                                       noise_scale=(0.0, 0.0, 0.0))
        noise = NoisePath.zeros(self.steps, 40, 1e-3)
        small = initial_state(self.basis, 0.0, 1e-2, 1e-2, 1e-2)
        config = FixpointConfig.for_q(5.0, tol=1e-10, max_iter=40)
        return model, noise, small, config

    def test_linear_regime_matches_the_direct_solve(self):
        model, noise, small, config = self.linear_setup()
        xi0 = ScalarTrajectory.constant(small.n, self.steps, 1e-3)
        result = picard(xi0, noise, model, config, small)
        self.assertTrue(result.converged)
        residuals = result.residuals
        self.assertTrue(all(b < a for a, b in zip(residuals[:-1], residuals[1:])), residuals)
        direct = solve_coupled(model, noise, config.kappa, initial=small).n
        scale = np.max(np.abs(direct))
        self.assertGreater(scale, 0.0)
        self.assertLessEqual(np.max(np.abs(result.xi.values - direct)), 1e-6 * scale)

    def test_linear_fixed_point_does_not_depend_on_the_start(self):
        model, noise, small, config = self.linear_setup()
        warm = picard(ScalarTrajectory.constant(small.n, self.steps, 1e-3), noise, model,
                      config, small)
        cold = picard(ScalarTrajectory.zeros(self.basis, self.steps, 1e-3), noise, model,
                      config, small)
        self.assertTrue(warm.converged and cold.converged)
        self.assertLessEqual(x_norm(cold.xi - warm.xi, config),
                             10 * config.tol * x_norm(warm.xi, config))

    def test_nonconvergence_is_reported(self):
        config = FixpointConfig.for_q(5.0, tol=1e-300, max_iter=2)
        result = picard(self.xi0, self.noise, self.model, config, self.initial)
        self.assertFalse(result.converged)
        self.assertTrue(result.diverged)
        self.assertEqual([j for j, _, _ in result.history], [1, 2])

    def test_haar_projected_map(self):
        config = FixpointConfig.for_q(5.0, haar_level=2)
        new, traj = picard_map(self.xi0, self.noise, self.model, config, self.initial)
        self.assertEqual(traj.steps, self.steps)
        np.testing.assert_array_equal(new.values[5], new.values[9])
        np.testing.assert_array_equal(new.values[0], self.initial.n.coeffs)

    def test_lipschitz_probe(self):
        config = FixpointConfig.for_q(5.0)
        rng = np.random.default_rng(1)
        other = self.xi0 + random_walk(self.basis, self.steps, 1e-3, rng) * 0.01
        ratio = lipschitz_probe(self.xi0, other, self.noise, self.model, config, self.initial)
        self.assertTrue(math.isfinite(ratio))
        self.assertGreater(ratio, 0.0)
        with self.assertRaises(ValueError):
            lipschitz_probe(self.xi0, self.xi0, self.noise, self.model, config, self.initial)

    def test_residual_csv(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "residuals.csv")
            write_residual_csv([(1, 0.5, 2.0), (2, 0.25, 2.1)], path)
            with open(path) as handle:
                rows = list(csv.DictReader(handle))
        self.assertEqual([r["iter"] for r in rows], ["1", "2"])
        self.assertEqual(float(rows[1]["residual"]), 0.25)


if __name__ == "__main__":
    unittest.main()
