# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:synopsis:
    Tests of the split-system steps, the linearized solve and the coupled run
"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import math
import unittest

import numpy as np

from chemostokes import conf
from chemostokes.errors import (BlowUpError, ConfigurationError, GridMismatchError,
                                NoiseMismatchError, NumericalWarning, StabilityError)
from chemostokes.linearized import (Model, ModelParams, ScalarTrajectory, check_stability,
                                    exponential_factors, initial_state, linearized_estimates,
                                    porous_flux, solve_coupled, solve_linearized,
                                    stability_dt, step_c, step_n, step_u, trapezoid,
                                    SystemState)
from chemostokes.linearized.stepper import u_forcing
from chemostokes.noise import NoiseConfig, NoisePath, sample_path
from chemostokes.spectral import Grid, SpectralBasis, SpectralField, VectorField, lp_norm


class TestModel(unittest.TestCase):
    def setUp(self):
        conf.v = False
        self.basis = SpectralBasis(Grid(16, 16), 40)

    def test_exponential_factors(self):
        rate = np.array([0.0, 1.0, 50.0])
        E, phi1 = exponential_factors(rate, 0.01)
        self.assertEqual(E[0], 1.0)
        self.assertEqual(phi1[0], 0.01)
        np.testing.assert_allclose(E[1:], np.exp(-rate[1:] * 0.01))
        np.testing.assert_allclose(phi1[1:], (1.0 - E[1:]) / rate[1:])

    def test_params_validation(self):
        with self.assertRaises(ConfigurationError):
            ModelParams(q=4.0).validate()
        with self.assertRaises(ConfigurationError):
            ModelParams(r_c=0.0).validate()
        with self.assertRaises(ConfigurationError):
            ModelParams(delta1=-1.0).validate()
        with self.assertRaises(ConfigurationError):
            ModelParams(steps=0).validate()
        self.assertAlmostEqual(ModelParams(dt=0.01, steps=30).horizon, 0.3)
        self.assertTrue(ModelParams(noise_scale=(0, 0, 0)).noise_off)

    def test_model_needs_band_interior(self):
        with self.assertRaises(ConfigurationError):
            Model(ModelParams(), SpectralBasis(Grid(16, 16), 256))

    def test_derived_constants(self):
        model = Model(ModelParams(zeta=5.0, gamma2=2.0), self.basis)
        self.assertAlmostEqual(model.alpha, 3.0)
        self.assertGreater(model.theta, 0.0)
        self.assertEqual(Model(ModelParams(theta=0.0), self.basis).theta, 0.0)

    def test_initial_state(self):
        state = initial_state(self.basis)
        self.assertAlmostEqual(state.n.mean(), 0.2 * self.basis.grid.area)
        self.assertLess(state.divergence_error(), 1e-12)
        self.assertGreater(state.u.norm(), 0.0)

    def test_scalar_trajectory(self):
        field = SpectralField.constant(self.basis, 1.0)
        a = ScalarTrajectory.constant(field, 4, 0.1)
        self.assertEqual(a.steps, 4)
        np.testing.assert_allclose(a.times, [0.0, 0.1, 0.2, 0.3, 0.4])
        np.testing.assert_array_equal((a - a).values, 0.0)
        with self.assertRaises(GridMismatchError):
            a + ScalarTrajectory.zeros(self.basis, 5, 0.1)


class TestSteps(unittest.TestCase):
    def setUp(self):
        conf.v = False
        self.basis = SpectralBasis(Grid(16, 16), 40)
        self.model = Model(ModelParams(dt=1e-3, steps=10), self.basis)
        self.state = initial_state(self.basis)

    def test_porous_flux_of_constant(self):
        flux = porous_flux(SpectralField.constant(self.basis, 0.5), 5.0)
        np.testing.assert_allclose(flux.coeffs[0], 0.5 ** 5 * self.basis.L)
        np.testing.assert_allclose(flux.coeffs[1:], 0.0, atol=1e-14)

    def test_stability_bound(self):
        params = self.model.params
        self.assertTrue(math.isinf(stability_dt(SpectralField.zeros(self.basis), params)))
        peak = lp_norm(self.state.n, math.inf)
        expected = 0.5 / (self.basis.lam_max * params.q * peak ** (params.q - 1.0))
        self.assertAlmostEqual(stability_dt(self.state.n, params), expected)

    def test_stability_refusal_and_warning(self):
        big = initial_state(self.basis, n0_mean=5.0)
        with self.assertRaises(StabilityError):
            check_stability(big.n, self.model)
        lenient = self.model.with_params(enforce_stability=False)
        with self.assertWarns(NumericalWarning):
            bound = check_stability(big.n, lenient)
        self.assertLess(bound, lenient.dt)

    def test_cutoff_value_range(self):
        with self.assertRaises(ValueError):
            step_c(self.state.c, self.state.n, self.state.u, 1.5, self.model,
                   np.zeros(self.basis.K))

    def test_blow_up_is_reported(self):
        coeffs = self.state.u.array
        coeffs[0, 3] = math.nan
        broken = VectorField.from_array(coeffs, self.basis)
        with self.assertRaises(BlowUpError) as ctx:
            step_u(broken, self.state.n, self.model, np.zeros((2, self.basis.K)))
        self.assertEqual(ctx.exception.equation, "u")


class TestSolvers(unittest.TestCase):
    def setUp(self):
        conf.v = False
        self.basis = SpectralBasis(Grid(16, 16), 40)
        self.steps = 20
        self.model = Model(ModelParams(dt=1e-3, steps=self.steps), self.basis)
        self.initial = initial_state(self.basis)
        self.noise = sample_path(NoiseConfig(K=40, master_seed=3), self.steps, 1e-3, 0)

    def test_mass_is_conserved_without_noise_and_drift(self):
        model = self.model.with_params(theta=0.0, noise_scale=(0.0, 0.0, 0.0))
        traj = solve_coupled(model, self.noise, initial=self.initial)
        np.testing.assert_array_equal(traj.n[:, 0], traj.n[0, 0])

    def test_fixed_point_is_the_coupled_run(self):
        kappa = 1.5 * self.initial.u.norm()
        coupled = solve_coupled(self.model, self.noise, kappa, initial=self.initial)
        linear = solve_linearized(coupled.n_path(), self.noise, self.model, kappa,
                                  initial=self.initial)
        np.testing.assert_allclose(linear.n, coupled.n, atol=1e-12)
        np.testing.assert_allclose(linear.c, coupled.c, atol=1e-12)
        np.testing.assert_allclose(linear.theta, coupled.theta)

    def test_c_and_u_ignore_the_initial_density(self):
        xi = ScalarTrajectory.constant(self.initial.n, self.steps, self.model.dt)
        a = solve_linearized(xi, self.noise, self.model, initial=self.initial)
        other = initial_state(self.basis, n0_mean=0.3)
        b = solve_linearized(xi, self.noise, self.model,
                             initial=SystemState(other.n, self.initial.c, self.initial.u))
        np.testing.assert_array_equal(a.u, b.u)
        np.testing.assert_array_equal(a.c, b.c)
        self.assertFalse(np.array_equal(a.n, b.n))

    def test_free_velocity_decay(self):
        model = self.model.with_params(noise_scale=(0.0, 0.0, 0.0))
        xi = ScalarTrajectory.zeros(self.basis, self.steps, model.dt)
        traj = solve_linearized(xi, self.noise, model, initial=self.initial)
        expected = self.initial.u.array * model.E_u ** self.steps
        np.testing.assert_allclose(traj.u[-1], expected, atol=1e-14)

    def test_chemical_relaxes_to_beta_over_alpha(self):
        model = self.model.with_params(noise_scale=(0.0, 0.0, 0.0), dt=1.0)
        self.assertGreater(model.alpha, 0)
        xi = SpectralField.constant(self.basis, 1.0)
        u = VectorField.zeros(self.basis)
        c = SpectralField.zeros(self.basis)
        for _ in range(int(30.0 / (model.alpha * model.dt)) + 1):
            c = step_c(c, xi, u, 0.0, model, np.zeros(self.basis.K))
        p = model.params
        self.assertAlmostEqual(c.coeffs[0] / self.basis.L / (p.beta / model.alpha), 1.0,
                               places=10)
        np.testing.assert_allclose(c.coeffs[1:], 0.0, atol=1e-14)

    def test_closed_cutoff_drops_transport(self):
        rng = np.random.default_rng(8)
        big = VectorField.from_array(1e3 * rng.standard_normal((2, self.basis.K)),
                                     self.basis)
        dW2 = self.noise.dW2[0]
        moved = step_c(self.initial.c, self.initial.n, big, 0.0, self.model, dW2)
        still = step_c(self.initial.c, self.initial.n, VectorField.zeros(self.basis), 0.0,
                       self.model, dW2)
        np.testing.assert_array_equal(moved.coeffs, still.coeffs)
        opened = step_c(self.initial.c, self.initial.n, big, 1.0, self.model, dW2)
        self.assertFalse(np.array_equal(opened.coeffs, still.coeffs))

    def test_porous_energy_does_not_grow(self):
        lam1 = int(np.flatnonzero(self.basis.lam == 1.0)[0])
        n = SpectralField.constant(self.basis, 0.2) + SpectralField.mode(self.basis, lam1, 0.05)
        q = self.model.params.q
        model = self.model.with_params(noise_scale=(0.0, 0.0, 0.0), theta=0.0,
                                       dt=stability_dt(n, self.model.params))
        zero = SpectralField.zeros(self.basis)
        u = VectorField.zeros(self.basis)
        dW1 = np.zeros(self.basis.K)
        energy = lp_norm(n, q + 1) ** (q + 1)
        start = energy
        for _ in range(100):
            n = step_n(n, zero, zero, u, model, dW1)
            new = lp_norm(n, q + 1) ** (q + 1)
            self.assertLessEqual(new - energy, 1e-12 * start)
            energy = new
        self.assertLess(energy, start)

    def test_velocity_reaches_stationary_stokes_flow(self):
        rng = np.random.default_rng(21)
        model = self.model.with_params(noise_scale=(0.0, 0.0, 0.0), dt=0.25)
        xi = SpectralField(rng.standard_normal(self.basis.K), self.basis)
        rate = model.params.r_u * self.basis.lam
        lam_min = self.basis.lam[self.basis.lam > 0].min()
        steps = int(20.0 / (model.params.r_u * lam_min * model.dt)) + 1
        u = VectorField.zeros(self.basis)
        for _ in range(steps):
            u = step_u(u, xi, model, np.zeros((2, self.basis.K)))
        forcing = u_forcing(xi, model).array
        target = np.where(rate > 0, forcing / np.where(rate > 0, rate, 1.0), 0.0)
        error = np.max(np.abs(u.array - target)) / np.max(np.abs(target))
        self.assertLessEqual(error, 1e-8)

    def test_cutoff_is_nonincreasing(self):
        kappa = 0.6 * self.initial.u.norm()
        traj = solve_coupled(self.model, self.noise, kappa, initial=self.initial)
        self.assertTrue(np.all(np.diff(traj.sup) >= 0))
        self.assertTrue(np.all(np.diff(traj.theta) <= 0))
        self.assertTrue(np.all((traj.theta >= 0) & (traj.theta <= 1)))

    def test_stop_at_kappa(self):
        kappa = 0.5 * self.initial.u.norm()
        traj = solve_coupled(self.model, self.noise, kappa, initial=self.initial,
                             stop_at_kappa=True)
        self.assertTrue(traj.stopped)
        self.assertEqual(traj.steps, 0)
        full = solve_coupled(self.model, self.noise, math.inf, initial=self.initial,
                             stop_at_kappa=True)
        self.assertFalse(full.stopped)
        self.assertEqual(full.steps, self.steps)

    def test_noise_checks(self):
        short = sample_path(NoiseConfig(K=40), 5, 1e-3, 0)
        with self.assertRaises(NoiseMismatchError):
            solve_coupled(self.model, short, initial=self.initial)
        coarse = sample_path(NoiseConfig(K=40), self.steps, 2e-3, 0)
        with self.assertRaises(NoiseMismatchError):
            solve_coupled(self.model, coarse, initial=self.initial)
        with self.assertRaises(ValueError):
            solve_coupled(self.model, self.noise)

    def test_path_id_is_recorded(self):
        noise = NoisePath.zeros(self.steps, 40, 1e-3, path_id=7)
        self.assertEqual(solve_coupled(self.model, noise, initial=self.initial).path_id, 7)

    def test_estimates(self):
        trajs = [solve_coupled(self.model, sample_path(NoiseConfig(K=40), self.steps,
                                                       1e-3, pid), initial=self.initial)
                 for pid in range(2)]
        est = linearized_estimates(trajs, 12.0, 5.0, 5.0)
        self.assertEqual(set(est), {"u_sup", "u_int", "c_sup", "c_int", "n_sup", "n_int"})
        self.assertTrue(all(math.isfinite(v) and v > 0 for v in est.values()))
        self.assertEqual(linearized_estimates([], 12.0, 5.0, 5.0), {})


class TestTrapezoid(unittest.TestCase):
    def test_values(self):
        self.assertAlmostEqual(trapezoid([0.0, 1.0, 2.0], 0.5), 1.0)
        self.assertEqual(trapezoid([3.0], 0.5), 0.0)
        np.testing.assert_allclose(trapezoid(np.ones((3, 2)), 1.0), [2.0, 2.0])


if __name__ == "__main__":
    unittest.main()
