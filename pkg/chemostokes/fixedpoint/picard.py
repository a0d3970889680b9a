# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Pathwise Picard iteration of xi -> n-component of V_kappa(xi)

:description:
    With the noise path fixed, the driver iterates

        xi_{j+1} = Proj_l( n-component of solve_linearized(xi_j) )

    and stops once |xi_{j+1} - xi_j|_X / max(|xi_j|_X, eps) < tol. Non-convergence is a
    reported outcome, not an error: the returned PicardResult carries the full residual
    history and a diverged flag.

:see_also:
    ./xnorm.py
    ../linearized/solver.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import math

from ..linearized.solver import solve_linearized
from ..utils.io import IO, write_csv
from .xnorm import haar_project, x_norm

EPSILON = 1e-14

RESIDUAL_COLUMNS = ["iter", "residual", "x_norm"]

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- CLASSES --#


class PicardResult(object):
    """
    Outcome of one Picard run.

    xi: last iterate; history: list of (iter, residual, x_norm) tuples; trajectory: the
    linearized solve that produced xi.
    """
    def __init__(self, xi, history, converged, trajectory, path_id=None):
        self.xi = xi
        self.history = history
        self.converged = converged
        self.trajectory = trajectory
        self.path_id = path_id

    @property
    def diverged(self):
        return not self.converged

    @property
    def iterations(self):
        return len(self.history)

    @property
    def residuals(self):
        return [r for _, r, _ in self.history]

    def __repr__(self):
        return "PicardResult(converged=%r, iterations=%d, residual=%.3g)" % (
            self.converged, self.iterations, self.residuals[-1] if self.history else math.nan)

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def picard_map(xi, noise, model, config, initial):
    """One application of xi -> Proj_l(n(V_kappa(xi))); returns (new xi, trajectory)."""
    traj = solve_linearized(xi, noise, model, config.kappa, initial)
    new = traj.n_path()
    if config.haar_level:
        new = haar_project(new, config.haar_level)
    return new, traj


def picard(xi0, noise, model, config, initial):
    """
    Iterate the linearized solve to its pathwise fixed point.

    :param xi0: starting input
    :type xi0: ScalarTrajectory
    :type noise: NoisePath
    :type model: Model
    :type config: FixpointConfig
    :param initial: initial state shared by every iterate
    :rtype: PicardResult
    """
    xi = xi0
    history = []
    traj = None
    converged = False
    for j in range(1, config.max_iter + 1):
        new, traj = picard_map(xi, noise, model, config, initial)
        size = x_norm(new, config)
        residual = x_norm(new - xi, config) / max(x_norm(xi, config), EPSILON)
        history.append((j, residual, size))
        IO.debug("picard iter %d: residual %.3e |xi|_X %.4g" % (j, residual, size))
        xi = new
        if not math.isfinite(residual):
            break
        if residual < config.tol:
            converged = True
            break
    if not converged:
        IO.warning("picard did not reach tol=%g in %d iterations (path %r)"
                   % (config.tol, len(history), noise.path_id))
    return PicardResult(xi, history, converged, traj, noise.path_id)


def lipschitz_probe(xi1, xi2, noise, model, config, initial):
    """
    |V(xi1) - V(xi2)|_X / |xi1 - xi2|_X for one noise path.

    :raises ValueError: when xi1 and xi2 coincide
    """
    gap = x_norm(xi1 - xi2, config)
    if gap == 0:
        raise ValueError("lipschitz_probe needs two distinct inputs")
    v1, _ = picard_map(xi1, noise, model, config.replace(haar_level=0), initial)
    v2, _ = picard_map(xi2, noise, model, config.replace(haar_level=0), initial)
    return x_norm(v1 - v2, config) / gap


def write_residual_csv(history, path):
    """Residual history as CSV with columns iter, residual, x_norm."""
    rows = [dict(zip(RESIDUAL_COLUMNS, (int(j), float(r), float(x))))
            for j, r, x in history]
    write_csv(path, RESIDUAL_COLUMNS, rows)
