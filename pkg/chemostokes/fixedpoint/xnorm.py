# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Iteration metric of the fixed point driver and the shifted Haar projection

:description:
    The metric on density inputs is

        |xi|_X = ( sum_{i < S} dt |xi(t_i)|_{H^{-s**}_2}^{m*} )^(1/m*),   s** = 2 / (q + 1)

    the integrability-2 stand-in for L^{m*}(0, T; H^{-s**}_{r*}). ensemble_mnorm is its
    Monte-Carlo M^m norm over paths. haar_project replaces xi by the piecewise constant
    function whose value on dyadic cell i >= 1 is the (trapezoidal) mean of xi over cell
    i - 1, and xi(0) on the first cell.

:see_also:
    ./picard.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import dataclasses
import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError
from ..linearized.model import ScalarTrajectory
from ..linearized.solver import trapezoid

MNorm = namedtuple("MNorm", ["value", "stderr"])

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- CLASSES --#


@dataclass(frozen=True)
class FixpointConfig(object):
    """
    Fixed point settings.

    haar_level: order of the shifted Haar projection, 0 switches it off
    """
    kappa: float = 4.0
    m_star: int = 12
    s_star2: float = 2.0 / 6.0
    r_star: float = 5.0
    tol: float = 1e-6
    max_iter: int = 30
    haar_level: int = 0

    @classmethod
    def for_q(cls, q, **overrides):
        """Minimal admissible exponents for porous exponent q."""
        values = dict(m_star=int(math.ceil(2 * q + 2)), s_star2=2.0 / (q + 1.0), r_star=q)
        values.update(overrides)
        return cls(**values)

    def validate(self, q):
        if self.m_star < 2 * q + 2:
            raise ConfigurationError("m_star=%r must be >= 2q+2=%g" % (self.m_star, 2 * q + 2),
                                     key="m_star")
        if not math.isclose(self.s_star2, 2.0 / (q + 1.0), rel_tol=1e-12):
            raise ConfigurationError("s_star2 must equal 2/(q+1)=%.12g" % (2.0 / (q + 1.0)),
                                     key="s_star2")
        if not q <= self.r_star < q + 1:
            raise ConfigurationError("r_star must lie in [q, q+1)", key="r_star")
        if not self.tol > 0 or self.max_iter < 1:
            raise ConfigurationError("tol must be positive and max_iter >= 1", key="tol")
        if self.haar_level < 0:
            raise ConfigurationError("haar_level must be >= 0", key="haar_level")
        return self

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def x_norm(xi, config):
    """
    |xi|_X with the H^{-s**}_2 spatial norm and a left Riemann sum in time.

    :type xi: ScalarTrajectory
    :type config: FixpointConfig
    :rtype: float
    """
    w = xi.basis.weights(-config.s_star2)
    spatial = np.sqrt(np.sum(w * xi.values[:-1] ** 2, axis=1))
    m = config.m_star
    peak = float(np.max(spatial)) if spatial.size else 0.0
    if peak == 0.0:
        return 0.0
    # scaled by the peak so large m* does not overflow
    return peak * float(np.sum(xi.dt * (spatial / peak) ** m)) ** (1.0 / m)


def ensemble_mnorm(paths, config):
    """
    ((1/N) sum |xi_p|_X^m*)^(1/m*) with a delta-method standard error.

    :param paths: ScalarTrajectory per path, or their precomputed x_norm values
    :type config: FixpointConfig
    :rtype: MNorm
    """
    x = np.array([x_norm(p, config) if isinstance(p, ScalarTrajectory) else float(p)
                  for p in paths])
    if x.size == 0:
        raise ValueError("ensemble_mnorm needs at least one path")
    m = float(config.m_star)
    peak = float(np.max(x))
    if peak == 0.0:
        return MNorm(0.0, 0.0)
    moments = (x / peak) ** m
    mean = float(np.mean(moments))
    value = peak * mean ** (1.0 / m)
    if x.size == 1:
        return MNorm(value, 0.0)
    se_moment = float(np.std(moments, ddof=1)) / math.sqrt(x.size)
    return MNorm(value, peak * mean ** (1.0 / m - 1.0) * se_moment / m)


def haar_project(f, level):
    """
    Shifted Haar projection of order `level` (0 returns f).

    :type f: ScalarTrajectory
    :rtype: ScalarTrajectory
    """
    if level == 0:
        return f.copy()
    cells = 2 ** int(level)
    S = f.steps
    if S % cells:
        raise ConfigurationError("%d steps cannot be split into %d dyadic cells"
                                 % (S, cells), key="haar_level")
    width = S // cells
    out = np.empty_like(f.values)
    out[:width] = f.values[0]
    for m in range(1, cells):
        prev = f.values[(m - 1) * width:m * width + 1]
        mean = trapezoid(prev, 1.0) / width
        stop = (m + 1) * width if m < cells - 1 else S + 1
        out[m * width:stop] = mean
    return ScalarTrajectory(out, f.dt, f.basis)


def bounded_set_radius(paths, m_star, r_star, q):
    """
    E sup |xi|^{4m*/r*}_{H^-1} + E (int |xi|^{q+1}_{L^{q+1}})^{2m*/r*} over the paths.

    :param paths: list of ScalarTrajectory
    :rtype: float
    """
    a = m_star / r_star
    sups, ints = [], []
    for xi in paths:
        b = xi.basis
        hm1 = np.sum(xi.values ** 2 / (1.0 + b.lam), axis=1)
        values = np.abs(b.to_grid(xi.values))
        cell = b.grid.area / b.grid.size
        lq = cell * np.sum(values ** (q + 1), axis=(1, 2))
        sups.append(np.max(hm1) ** (2 * a))
        ints.append(trapezoid(lq, xi.dt) ** (2 * a))
    return float(np.mean(sups) + np.mean(ints))
