# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Pre-sampled increments of the three independent Wiener processes

:description:
    Every path is driven by three cylindrical Wiener processes truncated to K modes: W1
    (cell density), W2 (chemical signal) and W3 (velocity, one scalar process per
    component). The increments of one process on one path are drawn from a Philox
    counter based generator keyed by (master_seed, path_id, process), so a path is a pure
    function of its key and never depends on which worker sampled it or in which order.

:applications:
    linearized solver, fixed point driver, gluing, Monte-Carlo ensembles

:see_also:
    ./operators.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError, NoiseMismatchError

# process keys of the seed sequence
PROCESS_N = 1
PROCESS_C = 2
PROCESS_U = 3

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def path_generator(master_seed, path_id, process):
    """Philox generator for one (seed, path, process) key."""
    seq = np.random.SeedSequence([int(master_seed) & 0xFFFFFFFFFFFFFFFF,
                                  int(path_id), int(process)])
    return np.random.Generator(np.random.Philox(seq))


def sample_path(config, steps, dt, path_id):
    """
    Draw the increments of W1, W2 and W3 over `steps` time steps of size dt.

    :param config: noise intensities, truncation and seed
    :type config: NoiseConfig
    :param steps: number of time steps, >= 1
    :param dt: step size, > 0
    :param path_id: path key
    :rtype: NoisePath
    """
    if int(steps) != steps or steps < 1:
        raise ConfigurationError("steps must be a positive integer, got %r" % steps,
                                 key="steps")
    if not dt > 0:
        raise ConfigurationError("dt must be positive, got %r" % dt, key="dt")
    steps = int(steps)
    K = config.K
    sd = np.sqrt(dt)
    dW1 = path_generator(config.master_seed, path_id, PROCESS_N).standard_normal((steps, K))
    dW2 = path_generator(config.master_seed, path_id, PROCESS_C).standard_normal((steps, K))
    dW3 = path_generator(config.master_seed, path_id, PROCESS_U).standard_normal(
        (steps, 2, K))
    return NoisePath(dW1 * sd, dW2 * sd, dW3 * sd, float(dt), int(path_id))

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- CLASSES --#


@dataclass(frozen=True)
class NoiseConfig(object):
    """Noise intensities gamma1..3, mode truncation K and the master seed."""
    gamma1: float = 2.5
    gamma2: float = 2.5
    gamma3: float = 1.5
    K: int = 200
    master_seed: int = 20240611

    @property
    def admissible(self):
        """True in the regime gamma1 > 2, gamma2 > 2, gamma3 > 1."""
        return self.gamma1 > 2 and self.gamma2 > 2 and self.gamma3 > 1


class NoisePath(object):
    """
    Increments of one noise realization.

    dW1, dW2 have shape (steps, K); dW3 has shape (steps, 2, K). Row i is the increment
    over [t_i, t_i + dt).
    """
    def __init__(self, dW1, dW2, dW3, dt, path_id=0):
        dW1, dW2, dW3 = (np.asarray(a, dtype=float) for a in (dW1, dW2, dW3))
        if dW1.ndim != 2 or dW2.shape != dW1.shape or dW3.shape != (
                dW1.shape[0], 2, dW1.shape[1]):
            raise NoiseMismatchError("inconsistent increment shapes %s %s %s"
                                     % (dW1.shape, dW2.shape, dW3.shape))
        self.dW1 = dW1
        self.dW2 = dW2
        self.dW3 = dW3
        self.dt = float(dt)
        self.path_id = path_id

    @classmethod
    def zeros(cls, steps, K, dt, path_id=0):
        """Noise switched off."""
        return cls(np.zeros((steps, K)), np.zeros((steps, K)), np.zeros((steps, 2, K)),
                   dt, path_id)

    @property
    def steps(self):
        return self.dW1.shape[0]

    @property
    def K(self):
        return self.dW1.shape[1]

    def coarsen(self, factor):
        """
        Sum blocks of `factor` consecutive increments, giving the same realization
        sampled at step dt * factor.
        """
        factor = int(factor)
        if factor < 1 or self.steps % factor:
            raise NoiseMismatchError("cannot coarsen %d steps by %d" % (self.steps, factor))
        s = self.steps // factor
        return NoisePath(self.dW1.reshape(s, factor, -1).sum(axis=1),
                         self.dW2.reshape(s, factor, -1).sum(axis=1),
                         self.dW3.reshape(s, factor, 2, -1).sum(axis=1),
                         self.dt * factor, self.path_id)

    def window(self, start, stop):
        """Increments of steps [start, stop)."""
        return NoisePath(self.dW1[start:stop], self.dW2[start:stop], self.dW3[start:stop],
                         self.dt, self.path_id)

    def check(self, steps, K):
        if self.steps < steps or self.K != K:
            raise NoiseMismatchError("noise path with %d steps and %d modes cannot drive "
                                     "%d steps on %d modes" % (self.steps, self.K, steps, K))
        return self

    def __repr__(self):
        return "NoisePath(path_id=%r, steps=%d, K=%d, dt=%g)" % (
            self.path_id, self.steps, self.K, self.dt)
