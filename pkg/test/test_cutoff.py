import math
import unittest

import numpy as np

from chemostokes.cutoff import (CutoffSpec, RunningSup, check_stop, phi, phi_kappa,
                                phi_lipschitz, theta, update, xi_product)
from chemostokes.errors import ConfigurationError


class TestProfile(unittest.TestCase):
    def test_plateau_and_support(self):
        for x in (0.0, 0.5, -1.0, 1.0):
            self.assertEqual(phi(x), 1.0)
        for x in (2.0, -2.5, 10.0):
            self.assertEqual(phi(x), 0.0)
        self.assertAlmostEqual(phi(1.5), 0.5)

    def test_monotone_between_one_and_two(self):
        values = [phi(x) for x in np.linspace(1.0, 2.0, 201)]
        self.assertTrue(np.all(np.diff(values) <= 0))
        self.assertTrue(all(0.0 <= v <= 1.0 for v in values))

    def test_symmetric(self):
        for x in (1.2, 1.7):
            self.assertEqual(phi(x), phi(-x))

    def test_kappa_scaling(self):
        self.assertAlmostEqual(phi_kappa(6.0, 4.0), phi(1.5))
        with self.assertRaises(ConfigurationError):
            phi_kappa(1.0, 0.0)

    def test_lipschitz(self):
        lip = phi_lipschitz()
        self.assertGreater(lip, 1.0)
        self.assertLess(lip, 10.0)
        xs = np.linspace(0.9, 2.1, 97)
        for a, b in zip(xs[:-1], xs[1:]):
            self.assertLessEqual(abs(phi(a) - phi(b)), lip * (b - a) + 1e-12)
        self.assertAlmostEqual(CutoffSpec(2.0).lipschitz, lip / 2.0)


class TestRunningSup(unittest.TestCase):
    def setUp(self):
        self.tracker = RunningSup()

    def test_running_supremum(self):
        for t, value in enumerate([1.0, 3.0, 2.0, 5.0, 0.0]):
            update(self.tracker, float(t), value)
        self.assertEqual([h for _, h in self.tracker.history], [1.0, 3.0, 3.0, 5.0, 5.0])
        self.assertEqual(self.tracker.current_sup, 5.0)
        self.assertEqual(len(self.tracker), 5)

    def test_stopping_time(self):
        for t, value in [(0.0, 1.0), (0.1, 3.9), (0.2, 4.0), (0.3, 7.0)]:
            self.tracker.update(t, value)
        self.assertEqual(check_stop(self.tracker, 4.0), 0.2)
        self.assertIsNone(check_stop(self.tracker, 8.0))

    def test_theta_follows_supremum(self):
        self.tracker.update(0.0, 6.0)
        self.tracker.update(0.1, 1.0)
        self.assertAlmostEqual(theta(self.tracker, 4.0), phi(1.5))

    def test_rejects_bad_records(self):
        self.tracker.update(1.0, 1.0)
        with self.assertRaises(ConfigurationError) as ctx:
            self.tracker.update(0.5, 1.0)
        self.assertEqual(ctx.exception.key, "t")
        with self.assertRaises(ConfigurationError):
            self.tracker.update(2.0, -1.0)
        with self.assertRaises(ConfigurationError):
            self.tracker.update(2.0, math.nan)

    def test_copy_is_independent(self):
        self.tracker.update(0.0, 1.0)
        other = self.tracker.copy()
        other.update(1.0, 9.0)
        self.assertEqual(self.tracker.current_sup, 1.0)
        self.assertEqual(len(self.tracker), 1)


class TestCutoffSpec(unittest.TestCase):
    def test_call(self):
        spec = CutoffSpec(4.0)
        self.assertEqual(spec(3.0), 1.0)
        self.assertEqual(spec(8.0), 0.0)
        with self.assertRaises(ConfigurationError):
            CutoffSpec(-1.0)

    def test_product(self):
        self.assertEqual(xi_product([]), 1.0)
        self.assertAlmostEqual(xi_product([0.5, 0.5, 1.0]), 0.25)


if __name__ == "__main__":
    unittest.main()
