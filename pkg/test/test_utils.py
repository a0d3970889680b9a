"""
:synopsis:
    Tests of the logging facade, the kernel guard, the writers and the path workers
"""
import json
import math
import os
import tempfile
import threading
import unittest
from unittest import mock

import numpy as np

from chemostokes import conf
from chemostokes.errors import BlowUpError, NumericalWarning
from chemostokes.utils.io import (IO, catch_numerical_error, logger, warn_numerical,
                                  write_csv, write_json)
from chemostokes.utils.path_threading import run_paths


@catch_numerical_error("c")
def _scaled(values, factor):
    return np.asarray(values) * factor


class TestIO(unittest.TestCase):
    def tearDown(self):
        conf.v = True
        conf.vv = False

    def test_verbosity_gating(self):
        conf.v, conf.vv = False, False
        with mock.patch.object(logger, "info") as info, \
                mock.patch.object(logger, "debug") as debug:
            IO.info("hidden")
            IO.debug("hidden")
            IO.list([1, 2])
        info.assert_not_called()
        debug.assert_not_called()
        conf.v = True
        with self.assertLogs("chemostokes", level="INFO") as logs:
            IO.info("shown")
            IO.error("always")
        self.assertEqual(len(logs.records), 2)
        self.assertIn("ERROR: always", logs.output[1])

    def test_debug_needs_very_verbose(self):
        conf.vv = True
        with self.assertLogs("chemostokes", level="DEBUG") as logs:
            IO.debug("detail")
        self.assertIn("DEBUG: detail", logs.output[0])

    def test_warn_numerical(self):
        with self.assertLogs("chemostokes", level="WARNING"):
            with self.assertWarns(NumericalWarning):
                warn_numerical("gamma below threshold")


class TestKernelGuard(unittest.TestCase):
    def test_finite_result_passes(self):
        np.testing.assert_array_equal(_scaled([1.0, 2.0], 2.0), [2.0, 4.0])

    def test_overflow_becomes_blow_up(self):
        with self.assertRaises(BlowUpError) as ctx:
            _scaled([1e300], 1e300)
        self.assertEqual(ctx.exception.equation, "c")

    def test_nan_output_becomes_blow_up(self):
        with self.assertRaises(BlowUpError):
            _scaled([math.nan], 1.0)


class TestWriters(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def test_csv_keeps_column_order_and_float_repr(self):
        path = os.path.join(self.tmp.name, "rows.csv")
        write_csv(path, ["b", "a"], [{"a": 0.1, "b": 1, "extra": "x"}])
        with open(path) as handle:
            self.assertEqual(handle.read(), "b,a\n1,0.1\n")

    def test_json_is_sorted(self):
        path = os.path.join(self.tmp.name, "out.json")
        write_json(path, {"z": 1, "a": [1.5]})
        with open(path) as handle:
            text = handle.read()
        self.assertTrue(text.endswith("\n"))
        self.assertLess(text.index('"a"'), text.index('"z"'))
        self.assertEqual(json.loads(text), {"z": 1, "a": [1.5]})


class TestRunPaths(unittest.TestCase):
    def setUp(self):
        conf.v = False

    def test_results_follow_path_order(self):
        for workers in (1, 3, 8):
            self.assertEqual(run_paths(lambda pid: pid * pid, [4, 0, 2, 1, 3], workers),
                             [0, 1, 4, 9, 16])
        self.assertEqual(run_paths(lambda pid: pid, [], 4), [])

    def test_threads_are_used(self):
        names = run_paths(lambda pid: threading.current_thread().name, range(4), 2)
        self.assertTrue(all(name != threading.main_thread().name for name in names))
        self.assertEqual(conf.path_threads, [])

    def test_lowest_failing_path_is_raised(self):
        def fail(pid):
            if pid in (2, 5):
                raise ValueError("path %d" % pid)
            return pid

        for workers in (1, 3):
            with self.assertRaises(ValueError) as ctx:
                run_paths(fail, range(6), workers)
            self.assertEqual(str(ctx.exception), "path 2")

    def test_halt_flag(self):
        conf.threading_halt = True
        try:
            with self.assertRaises(RuntimeError):
                run_paths(lambda pid: pid, range(3), 1)
        finally:
            conf.threading_halt = False


if __name__ == "__main__":
    unittest.main()
