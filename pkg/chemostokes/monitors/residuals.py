# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Residuals of the integral equations a solution has to satisfy

:description:
    For each unknown x in (n, c, u) the trajectory is compared with

        x_0 + sum_{i < j} [ (E - 1) x_i + drift_i + noise_i ]

    where E is the integrating factor of the linear part (E = 1 for n) and drift_i,
    noise_i are the discrete deterministic and stochastic integrals the stepper adds
    over [t_i, t_{i+1}]. The pieces come from the stepper's *_increment functions, so a
    trajectory produced by the solver has residuals at round-off level and an altered
    trajectory has residuals of the size of the alteration.

    Norms: H^-1 for n, L^2 for c and u, reported at evenly spaced checkpoints.

:see_also:
    ../linearized/stepper.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import math

import numpy as np

from ..errors import GridMismatchError, NoiseMismatchError
from ..linearized.stepper import c_increment, n_increment, u_increment
from ..spectral.fields import SpectralField, VectorField
from ..utils.io import write_csv

CHECKPOINTS = 8

RESIDUAL_DEFN_COLUMNS = ["t", "n_Hm1", "c_L2", "u_L2"]

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- CLASSES --#


class ResidualReport(object):
    """Residual norms per equation at the checkpoint times."""
    def __init__(self, times, n, c, u):
        self.times = np.asarray(times, dtype=float)
        self.n = np.asarray(n, dtype=float)
        self.c = np.asarray(c, dtype=float)
        self.u = np.asarray(u, dtype=float)

    @property
    def max_n(self):
        return float(np.max(self.n)) if self.n.size else 0.0

    @property
    def max_c(self):
        return float(np.max(self.c)) if self.c.size else 0.0

    @property
    def max_u(self):
        return float(np.max(self.u)) if self.u.size else 0.0

    @property
    def max(self):
        return max(self.max_n, self.max_c, self.max_u)

    def rows(self):
        return [{"t": float(t), "n_Hm1": float(a), "c_L2": float(b), "u_L2": float(c)}
                for t, a, b, c in zip(self.times, self.n, self.c, self.u)]

    def __repr__(self):
        return "ResidualReport(n=%.3g, c=%.3g, u=%.3g)" % (self.max_n, self.max_c,
                                                           self.max_u)

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def checkpoint_indices(steps, count=CHECKPOINTS):
    """`count` distinct step indices in (0, steps], evenly spaced, ending at steps."""
    if steps < 1:
        return np.array([], dtype=int)
    idx = np.unique(np.rint(np.linspace(0, steps, count + 1)[1:]).astype(int))
    return idx[idx > 0]


def _check_noise(traj, noise, model):
    if traj.basis is not model.basis:
        raise GridMismatchError("trajectory and model live on different bases")
    noise.check(traj.steps, traj.basis.K)
    if not math.isclose(noise.dt, traj.dt, rel_tol=1e-12) or \
            not math.isclose(model.dt, traj.dt, rel_tol=1e-12):
        raise NoiseMismatchError("trajectory at dt=%g, noise at dt=%g, model at dt=%g"
                                 % (traj.dt, noise.dt, model.dt))


def residual_defn(traj, noise, model, initial=None, checkpoints=CHECKPOINTS):
    """
    Residuals of the three integral equations along a trajectory.

    :type traj: Trajectory
    :param noise: the increments that drove the run
    :type noise: NoisePath
    :type model: Model
    :param initial: initial state of the identities, defaults to the first state of traj
    :rtype: ResidualReport
    :raises NoiseMismatchError: when the noise cannot have driven the trajectory
    """
    _check_noise(traj, noise, model)
    b = traj.basis
    S = traj.steps
    xi_all = traj.xi_values
    start = traj.state(0) if initial is None else initial

    ref_n = start.n.coeffs.copy()
    ref_c = start.c.coeffs.copy()
    ref_u = start.u.array.copy()
    marks = set(int(j) for j in checkpoint_indices(S, checkpoints))
    times, res_n, res_c, res_u = [], [], [], []
    weight = 1.0 / (1.0 + b.lam)
    for i in range(S):
        n_i = SpectralField(traj.n[i], b)
        c_i = SpectralField(traj.c[i], b)
        u_i = VectorField.from_array(traj.u[i], b)
        xi_i = SpectralField(xi_all[i], b)

        dn, gn = n_increment(n_i, xi_i, c_i, u_i, model, noise.dW1[i])
        ref_n += dn.coeffs + gn.coeffs

        dc, gc = c_increment(c_i, xi_i, u_i, traj.theta[i], model, noise.dW2[i])
        ref_c += (model.E_c - 1.0) * c_i.coeffs + dc.coeffs + gc.coeffs

        du, gu = u_increment(u_i, xi_i, model, noise.dW3[i])
        ref_u += (model.E_u - 1.0) * u_i.array + du.array + gu.array

        j = i + 1
        if j in marks:
            times.append(traj.t0 + j * traj.dt)
            res_n.append(math.sqrt(float(np.sum(weight * (traj.n[j] - ref_n) ** 2))))
            res_c.append(float(np.linalg.norm(traj.c[j] - ref_c)))
            res_u.append(float(np.linalg.norm(traj.u[j] - ref_u)))
    return ResidualReport(times, res_n, res_c, res_u)


def write_residual_defn_csv(report, path):
    write_csv(path, RESIDUAL_DEFN_COLUMNS, report.rows())
