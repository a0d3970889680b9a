# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Model coefficients, system states and trajectories

:description:
    ModelParams collects the scalar coefficients of the Ito system

        dn = [ -r_n (-Laplace)(|n|^(q-1) n) + theta xi - chi div(xi grad c) - delta_n u.grad xi ] dt
             + g_gamma1(n) dW1
        dc = [ -(r_c (-Laplace) + alpha) c + beta xi - delta_c Theta u.grad c ] dt
             + g_gamma2(c) dW2
        du = [ -r_u A u + Pi(e^{-delta_1 (-Laplace)} xi, e^{-delta_2 (-Laplace)} xi) ] dt
             + sigma_gamma3 dW3

    with theta and alpha derived from the noise intensities unless overridden. A Model
    binds the parameters to a SpectralBasis and precomputes the exponential integrating
    factors of the linear parts.

:see_also:
    ./stepper.py
    ./solver.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError, GridMismatchError
from ..noise.operators import ito_alpha, ito_theta
from ..spectral.fields import (SpectralField, VectorField, divergence, helmholtz_project,
                               transform)
from ..utils.io import IO

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def exponential_factors(rate, dt):
    """
    E = exp(-rate dt) and phi1 = (1 - E) / rate, with phi1 = dt where rate == 0.

    :param rate: array of decay rates
    :rtype: tuple
    """
    rate = np.asarray(rate, dtype=float)
    E = np.exp(-rate * dt)
    zero = rate == 0
    phi1 = np.where(zero, dt, -np.expm1(-rate * dt) / np.where(zero, 1.0, rate))
    return E, phi1


def initial_state(basis, n0_mean=0.2, n0_amp=0.1, c0_amp=0.1, u0_amp=0.1):
    """
    Deterministic smooth initial data on the lowest diagonal modes:

        n0 = n0_mean + n0_amp cos(kx) cos(ky)
        c0 = c0_amp sin(kx) sin(ky)
        u0 = u0_amp (-sin(kx) cos(ky), cos(kx) sin(ky))

    :rtype: SystemState
    """
    x, y = basis.grid.nodes()
    k = basis.grid.wavenumber
    n0 = transform(n0_mean + n0_amp * np.cos(k * x) * np.cos(k * y), basis)
    c0 = transform(c0_amp * np.sin(k * x) * np.sin(k * y), basis)
    u0 = VectorField(transform(-u0_amp * np.sin(k * x) * np.cos(k * y), basis),
                     transform(u0_amp * np.cos(k * x) * np.sin(k * y), basis))
    return SystemState(n0, c0, helmholtz_project(u0))

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- CLASSES --#


@dataclass(frozen=True)
class ModelParams(object):
    """
    Model and scheme coefficients.

    theta: Ito drift constant of the n-equation, None derives it from gamma1
    noise_scale: multipliers of the W1, W2 and W3 forcing, (0, 0, 0) switches noise off
    """
    r_n: float = 1.0
    r_c: float = 1.0
    r_u: float = 1.0
    chi: float = 1.0
    zeta: float = 5.0
    beta: float = 1.0
    q: float = 5.0
    delta1: float = 0.1
    delta2: float = 0.1
    delta_n: float = 1.0
    delta_c: float = 1.0
    gamma1: float = 2.5
    gamma2: float = 2.5
    gamma3: float = 1.5
    dt: float = 1e-3
    steps: int = 500
    theta: float = None
    noise_scale: tuple = (1.0, 1.0, 1.0)
    enforce_stability: bool = True

    def validate(self):
        for name in ("r_n", "r_c", "r_u"):
            if not getattr(self, name) > 0:
                raise ConfigurationError("%s must be positive" % name, key=name)
        if not self.q > 4:
            raise ConfigurationError("porous exponent q must exceed 4, got %r" % self.q,
                                     key="q")
        if not self.dt > 0:
            raise ConfigurationError("dt must be positive", key="dt")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ConfigurationError("steps must be a positive integer", key="steps")
        for name in ("delta1", "delta2"):
            if getattr(self, name) < 0:
                raise ConfigurationError("%s must be >= 0" % name, key=name)
        if len(self.noise_scale) != 3:
            raise ConfigurationError("noise_scale needs three entries", key="noise_scale")
        return self

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    @property
    def horizon(self):
        return self.dt * self.steps

    @property
    def noise_off(self):
        return all(s == 0 for s in self.noise_scale)


class Model(object):
    """
    ModelParams bound to a SpectralBasis.

    Precomputes the integrating factors exp(-rate dt) and phi1 of the u- and c-equations
    and the derived constants theta and alpha.
    """
    def __init__(self, params, basis):
        self.params = params.validate()
        self.basis = basis
        self.alpha = ito_alpha(params.zeta, params.gamma2)
        if params.theta is None:
            self.theta = ito_theta(params.gamma1, basis.eigen, basis.K).value
        else:
            self.theta = float(params.theta)
        if not basis.band_interior:
            raise ConfigurationError("nonlinear terms need every retained mode strictly "
                                     "inside the resolved band; lower K", key="K")
        lam = basis.lam
        self.E_u, self.phi1_u = exponential_factors(params.r_u * lam, params.dt)
        self.E_c, self.phi1_c = exponential_factors(params.r_c * lam + self.alpha, params.dt)
        IO.debug("model: theta=%.6g alpha=%.6g K=%d dt=%g" % (self.theta, self.alpha,
                                                              basis.K, params.dt))

    @property
    def dt(self):
        return self.params.dt

    @property
    def steps(self):
        return self.params.steps

    def with_params(self, **changes):
        return Model(self.params.replace(**changes), self.basis)

    def __repr__(self):
        return "Model(%r, theta=%.6g, alpha=%.6g)" % (self.basis, self.theta, self.alpha)


class SystemState(object):
    """The triple (n, c, u) at one time instant."""
    __slots__ = ("n", "c", "u")

    def __init__(self, n, c, u):
        if not (n.basis is c.basis is u.basis):
            raise GridMismatchError("state components live on different bases")
        self.n = n
        self.c = c
        self.u = u

    @property
    def basis(self):
        return self.n.basis

    def copy(self):
        return SystemState(self.n.copy(), self.c.copy(), self.u.copy())

    def divergence_error(self):
        """|div u| / |u|, 0 for u = 0."""
        norm = self.u.norm()
        return divergence(self.u).norm() / norm if norm > 0 else 0.0

    def __repr__(self):
        return "SystemState(|n|=%.4g, |c|=%.4g, |u|=%.4g)" % (self.n.norm(), self.c.norm(),
                                                             self.u.norm())


class ScalarTrajectory(object):
    """
    Scalar field sampled on the uniform time grid t_i = i dt, i = 0..steps.

    values has shape (steps + 1, K).
    """
    def __init__(self, values, dt, basis):
        values = np.asarray(values, dtype=float)
        if values.ndim != 2 or values.shape[1] != basis.K:
            raise GridMismatchError("trajectory values of shape %s on a basis of %d modes"
                                    % (values.shape, basis.K))
        self.values = values
        self.dt = float(dt)
        self.basis = basis

    @classmethod
    def constant(cls, field, steps, dt):
        return cls(np.tile(field.coeffs, (steps + 1, 1)), dt, field.basis)

    @classmethod
    def zeros(cls, basis, steps, dt):
        return cls(np.zeros((steps + 1, basis.K)), dt, basis)

    @property
    def steps(self):
        return self.values.shape[0] - 1

    @property
    def times(self):
        return np.arange(self.steps + 1) * self.dt

    def at(self, i):
        return SpectralField(self.values[i], self.basis)

    def copy(self):
        return ScalarTrajectory(self.values.copy(), self.dt, self.basis)

    def _check(self, other):
        if other.values.shape != self.values.shape or other.basis is not self.basis:
            raise GridMismatchError("trajectories on different grids")
        return other.values

    def __add__(self, other):
        return ScalarTrajectory(self.values + self._check(other), self.dt, self.basis)

    def __sub__(self, other):
        return ScalarTrajectory(self.values - self._check(other), self.dt, self.basis)

    def __mul__(self, scalar):
        return ScalarTrajectory(self.values * scalar, self.dt, self.basis)

    __rmul__ = __mul__

    def __repr__(self):
        return "ScalarTrajectory(steps=%d, K=%d, dt=%g)" % (self.steps, self.basis.K,
                                                           self.dt)


class Trajectory(object):
    """
    Time-indexed states of one path.

    n, c: (S + 1, K); u: (S + 1, 2, K); theta: cut-off value used in step i;
    sup: running supremum h(t_i) of |u|_{L^2}; xi: frozen input of a linearized solve,
    None when xi = n (coupled run).
    """
    def __init__(self, basis, dt, n, c, u, theta, sup, xi=None, kappa=math.inf, t0=0.0,
                 path_id=None, stopped=False):
        self.basis = basis
        self.dt = float(dt)
        self.n = np.asarray(n, dtype=float)
        self.c = np.asarray(c, dtype=float)
        self.u = np.asarray(u, dtype=float)
        self.theta = np.asarray(theta, dtype=float)
        self.sup = np.asarray(sup, dtype=float)
        self.xi = None if xi is None else np.asarray(xi, dtype=float)
        self.kappa = kappa
        self.t0 = float(t0)
        self.path_id = path_id
        self.stopped = stopped

    @property
    def steps(self):
        return self.n.shape[0] - 1

    @property
    def times(self):
        return self.t0 + np.arange(self.steps + 1) * self.dt

    @property
    def xi_values(self):
        return self.n if self.xi is None else self.xi

    def state(self, i):
        b = self.basis
        return SystemState(SpectralField(self.n[i], b), SpectralField(self.c[i], b),
                           VectorField.from_array(self.u[i], b))

    @property
    def final_state(self):
        return self.state(self.steps)

    def n_path(self):
        return ScalarTrajectory(self.n, self.dt, self.basis)

    def xi_path(self):
        return ScalarTrajectory(self.xi_values, self.dt, self.basis)

    def truncate(self, last):
        """Trajectory restricted to states 0..last."""
        end = last + 1
        return Trajectory(self.basis, self.dt, self.n[:end], self.c[:end], self.u[:end],
                          self.theta[:end], self.sup[:end],
                          None if self.xi is None else self.xi[:end], self.kappa, self.t0,
                          self.path_id, self.stopped)

    def __repr__(self):
        return "Trajectory(steps=%d, t0=%g, dt=%g, kappa=%g)" % (self.steps, self.t0,
                                                                 self.dt, self.kappa)
