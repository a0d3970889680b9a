# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Empirical constant of the interpolation bound behind the fixed point metric

:description:
    For density trajectories xi the bound reads

        |xi|^r_{L^m(0,T;H^-s_r)} <= C ( |xi|^2_{L^inf(0,T;H^-1)}
                                      + |xi|^{q+1}_{L^{q+1}(0,T;L^{q+1})} )

    for m > q + 1, s in (0, 1) and 1/r >= 1/m + s/2. Only integrability r = 2 is
    measured; the left side then uses the same H^-s_2 norm and left Riemann sum as the
    fixed point metric. The check reports the ratio left / right per sample and its
    maximum over the samples.

:see_also:
    ../fixedpoint/xnorm.py -- x_norm()

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
from collections import namedtuple

import numpy as np

from ..errors import ConfigurationError
from ..fixedpoint.xnorm import FixpointConfig, x_norm
from ..linearized.solver import trapezoid

InterpolationResult = namedtuple("InterpolationResult", ["max_ratio", "ratios", "skipped"])

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def check_exponents(m, s, q, r=2.0):
    if r != 2:
        raise ConfigurationError("only the integrability r = 2 is measured, got r=%r" % r,
                                 key="r")
    if not 0.0 < s < 1.0:
        raise ConfigurationError("s must lie in (0, 1), got %r" % s, key="s")
    if not m > q + 1:
        raise ConfigurationError("m must exceed q + 1 = %g, got %r" % (q + 1, m), key="m")
    if 1.0 / r < 1.0 / m + s / 2.0:
        raise ConfigurationError("1/r >= 1/m + s/2 fails for r=%g, m=%g, s=%g" % (r, m, s),
                                 key="s")


def interpolation_sides(xi, m, s, q, r=2.0):
    """
    (left, right) of the bound for one trajectory.

    :type xi: ScalarTrajectory
    :rtype: tuple
    """
    left = x_norm(xi, FixpointConfig(m_star=m, s_star2=s)) ** r
    b = xi.basis
    hm1 = np.sum(xi.values ** 2 / (1.0 + b.lam), axis=1)
    cell = b.grid.area / b.grid.size
    lq = cell * np.sum(np.abs(b.to_grid(xi.values)) ** (q + 1.0), axis=(1, 2))
    right = float(np.max(hm1)) + trapezoid(lq, xi.dt)
    return left, right


def interpolation_check(samples, m, s, q, r=2.0):
    """
    Max over samples of left / right; trajectories with a vanishing right side are
    skipped.

    :param samples: list of ScalarTrajectory
    :param m: time integrability, > q + 1
    :param s: negative Sobolev order, in (0, 1)
    :param q: porous exponent
    :param r: spatial integrability, only 2 is supported
    :rtype: InterpolationResult
    """
    check_exponents(m, s, q, r)
    ratios = []
    skipped = 0
    for xi in samples:
        left, right = interpolation_sides(xi, m, s, q, r)
        if right == 0.0:
            skipped += 1
            continue
        ratios.append(left / right)
    ratios = np.array(ratios)
    best = float(np.max(ratios)) if ratios.size else float("nan")
    return InterpolationResult(best, ratios, skipped)
