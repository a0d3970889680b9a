# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Smooth cut-off profile, running suprema and stopping time detection

:description:
    The profile is the smooth partition of unity

        phi(x) = psi(2 - |x|) / (psi(2 - |x|) + psi(|x| - 1)),  psi(t) = exp(-1/t) for t > 0

    equal to 1 on |x| <= 1, to 0 on |x| >= 2 and monotone in between. The cut-off value
    of a tracked quantity is Theta_kappa = phi(h / kappa), with h the running supremum of
    the quantity. The stopping time tau_kappa is the first recorded time with h >= kappa.

:see_also:
    ../linearized/solver.py
    ../glue/segments.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import functools
import math

import numpy as np

from ..errors import ConfigurationError

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def _psi(t):
    return math.exp(-1.0 / t) if t > 0 else 0.0


def phi(x):
    """
    Smooth cut-off profile.

    :param x: real argument
    :return: value in [0, 1]
    :rtype: float
    """
    a = abs(float(x))
    if a <= 1.0:
        return 1.0
    if a >= 2.0:
        return 0.0
    left = _psi(2.0 - a)
    return left / (left + _psi(a - 1.0))


def phi_kappa(x, kappa):
    """phi(x / kappa)"""
    if not kappa > 0:
        raise ConfigurationError("kappa must be positive, got %r" % kappa, key="kappa")
    return phi(x / kappa)


@functools.lru_cache(maxsize=1)
def phi_lipschitz():
    """Lipschitz constant of the profile, max |phi'| sampled finely on [1, 2]."""
    x = np.linspace(1.0, 2.0, 20001)
    values = np.array([phi(v) for v in x])
    return float(np.max(np.abs(np.diff(values)) / np.diff(x)))


def theta(tracker, kappa):
    """
    Cut-off value Theta_kappa = phi(current_sup / kappa).

    :type tracker: RunningSup
    :rtype: float
    """
    return phi_kappa(tracker.current_sup, kappa)


def update(tracker, t, value):
    """Record value at time t; returns the tracker."""
    return tracker.update(t, value)


def check_stop(tracker, kappa):
    """
    First recorded time at which the running supremum reached kappa.

    :return: stopping time or None
    """
    for t, sup in tracker.history:
        if sup >= kappa:
            return t
    return None


def xi_product(thetas):
    """Product of several cut-off values."""
    out = 1.0
    for value in thetas:
        out *= value
    return out

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- CLASSES --#


class RunningSup(object):
    """
    Running supremum h(t) = sup_{s <= t} value(s) of one tracked quantity.

    history holds (time, running sup) pairs in recording order.
    """
    def __init__(self):
        self.current_sup = 0.0
        self.history = []
        self._last_time = None

    def update(self, t, value):
        if value < 0 or not math.isfinite(value):
            raise ConfigurationError("tracked value must be finite and nonnegative, got %r"
                                     % value, key="value")
        if self._last_time is not None and t < self._last_time:
            raise ConfigurationError("time regression: %r after %r" % (t, self._last_time),
                                     key="t")
        self._last_time = t
        self.current_sup = max(self.current_sup, float(value))
        self.history.append((t, self.current_sup))
        return self

    def copy(self):
        other = RunningSup()
        other.current_sup = self.current_sup
        other.history = list(self.history)
        other._last_time = self._last_time
        return other

    def __len__(self):
        return len(self.history)

    def __repr__(self):
        return "RunningSup(current_sup=%g, records=%d)" % (self.current_sup,
                                                           len(self.history))


class CutoffSpec(object):
    """Threshold kappa of the cut-off phi_kappa; the profile is fixed (see phi)."""
    def __init__(self, kappa):
        if not kappa > 0:
            raise ConfigurationError("kappa must be positive, got %r" % kappa, key="kappa")
        self.kappa = float(kappa)

    def __call__(self, h):
        return phi(h / self.kappa)

    @property
    def lipschitz(self):
        """|Theta(h1) - Theta(h2)| <= lipschitz * |h1 - h2|"""
        return phi_lipschitz() / self.kappa

    def __repr__(self):
        return "CutoffSpec(kappa=%g)" % self.kappa
