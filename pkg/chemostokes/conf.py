# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Configuration globals shared between the chemostokes modules

:description:
    This file defines package wide configuration variables. The module is used to
    house "globals" that need to be shared between modules: print verbosity, the list
    of live worker threads, the halt flag for the worker pool and the flat table of
    run defaults that the config loader starts from.

:applications:
    chemostokes CLI, tests

:see_also:
    ./cli/config.py -- load_config()
    ./utils/path_threading.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import math

# -----------------------------------------------------------------------------
# PACKAGE GLOBAL VARIABLES AND INITIAL SETTINGS
# -----------------------------------------------------------------------------

# -------------------------------------
# verbose print settings

# Enable for verbose printing
v = True
# Enable for very verbose printing
vv = False

# list of active path worker threads, use for cleanup if needed
path_threads = []
# if set to true, will be used to cancel existing/future threads from starting
threading_halt = False

# -------------------------------------
# Run defaults

DEFAULT_Q = 5.0

# every key accepted by the flat config file, with its default and type
DEFAULTS = {
    # grid
    "nx": 64,
    "ny": 64,
    "side": 2.0 * math.pi,
    "K": 200,
    # model
    "r_n": 1.0,
    "r_c": 1.0,
    "r_u": 1.0,
    "chi": 1.0,
    "zeta": 5.0,
    "beta": 1.0,
    "q": DEFAULT_Q,
    "delta1": 0.1,
    "delta2": 0.1,
    "delta_n": 1.0,
    "delta_c": 1.0,
    "theta": "",
    # noise
    "gamma1": 2.5,
    "gamma2": 2.5,
    "gamma3": 1.5,
    "master_seed": 20240611,
    "noise_scale1": 1.0,
    "noise_scale2": 1.0,
    "noise_scale3": 1.0,
    # fixed point
    "m_star": 12,
    "r_star": DEFAULT_Q,
    "s_star2": 2.0 / (DEFAULT_Q + 1.0),
    "tol": 1e-6,
    "max_iter": 30,
    "haar_level": 0,
    # run
    "T": 0.5,
    "dt": 1e-3,
    "paths": 32,
    "kappa": 4.0,
    "kappa_list": "1,2,4,8",
    "mode": "simulate",
    "out": "chemostokes_out",
    "workers": 1,
    "checkpoint_every": 50,
    "max_escalations": 8,
    "escalation": "increment",
    "enforce_stability": True,
    # initial data
    "n0_mean": 0.2,
    "n0_amp": 0.1,
    "c0_amp": 0.1,
    "u0_amp": 0.1,
}

# keys whose value is derived from q unless the file sets them
Q_DERIVED_KEYS = ("m_star", "r_star", "s_star2")
