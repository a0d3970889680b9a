# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Monte-Carlo estimate of P(tau_kappa <= T) over a list of cut-off levels

:description:
    Before tau_kappa the cut-off is inactive, so tau_kappa is the first time the uncut
    run reaches h >= kappa. One uncut run per path therefore decides the event for every
    kappa at once (common random numbers), which makes the estimates pathwise monotone in
    kappa. Each row reports the binomial standard error and the Chebyshev bound
    E[h(T)^delta] / kappa^delta next to the estimate.

:see_also:
    ./segments.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import math

import numpy as np

from ..errors import BlowUpError, ConfigurationError
from ..linearized.solver import solve_coupled
from ..noise.wiener import sample_path
from ..utils.io import IO
from ..utils.path_threading import run_paths

MIN_PATHS = 16

EXCEEDANCE_COLUMNS = ["kappa", "p_hat", "stderr", "count", "paths", "markov_bound",
                      "kappa_power"]

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def markov_bound(sup_samples, kappa, delta=2.0):
    """
    E[h^delta] / kappa^delta, an upper bound of P(h >= kappa).

    :param sup_samples: per-path sup_{[0,T]} |u|_{L^2}
    """
    samples = np.asarray(sup_samples, dtype=float)
    if kappa <= 0:
        return math.inf
    return float(np.mean(samples ** delta)) / kappa ** delta


def path_supremum(model, initial, noise_config, steps, path_id):
    """sup_{[0,T]} |u|_{L^2} of one uncut run; a blown-up path counts as infinite."""
    noise = sample_path(noise_config, steps, model.dt, path_id)
    try:
        traj = solve_coupled(model, noise, math.inf, initial, steps=steps)
    except BlowUpError as e:
        IO.warning("path %d blew up (%s), counted as an exceedance" % (path_id, e))
        return math.inf
    return float(traj.sup[-1])


def exceedance_prob(model, initial, kappa_list, paths, noise_config, steps=None,
                    first_path=0, workers=1, delta=2.0, decay_power=2.0):
    """
    Table of P(tau_kappa <= T) estimates.

    :param kappa_list: cut-off levels
    :param paths: number of Monte-Carlo paths, >= 16
    :param steps: horizon in steps, defaults to model.steps
    :param first_path: path id of the first path
    :param workers: worker threads
    :param delta: moment order of the Chebyshev bound
    :param decay_power: exponent m1 of the reported product p_hat * kappa^m1
    :return: (rows, sup_samples)
    :rtype: tuple
    """
    if paths < MIN_PATHS:
        raise ConfigurationError("exceedance estimates need at least %d paths, got %d"
                                 % (MIN_PATHS, paths), key="paths")
    steps = model.steps if steps is None else int(steps)
    ids = list(range(first_path, first_path + paths))
    sups = np.array(run_paths(
        lambda pid: path_supremum(model, initial, noise_config, steps, pid), ids, workers))
    rows = []
    for kappa in kappa_list:
        hits = int(np.sum(sups >= kappa))
        p = hits / float(paths)
        rows.append({
            "kappa": float(kappa),
            "p_hat": p,
            "stderr": math.sqrt(p * (1.0 - p) / paths),
            "count": hits,
            "paths": int(paths),
            "markov_bound": markov_bound(sups[np.isfinite(sups)], kappa, delta),
            "kappa_power": p * float(kappa) ** decay_power,
        })
    return rows, sups


def is_nonincreasing(rows, slack=0.0):
    """p_hat nonincreasing along increasing kappa, up to `slack` standard errors."""
    ordered = sorted(rows, key=lambda r: r["kappa"])
    for a, b in zip(ordered[:-1], ordered[1:]):
        se = math.hypot(a["stderr"], b["stderr"])
        if b["p_hat"] > a["p_hat"] + slack * se:
            return False
    return True
