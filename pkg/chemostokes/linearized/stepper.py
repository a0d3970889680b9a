# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    One exponential Euler-Maruyama step of each sub-equation

:description:
    The u- and c-equations take the exact integrating factor of their linear part

        x' = E x + phi1 f(t_i) + noise_i,   E = exp(-rate dt), phi1 = (1 - E) / rate

    with the nonlinear forcing f and the noise increment frozen at the left end of the
    step. The n-equation is fully explicit:

        n' = n + dt [ -r_n lambda P(|n|^(q-1) n) + theta xi - chi div(xi grad c)
                      - delta_n div(xi u) ] + g_gamma1(n) dW1

    Every term of the n drift except theta xi is in divergence form and has a vanishing
    constant mode, so the scheme conserves the integral of n when theta = 0 and the noise
    is off. div(xi u) equals u.grad xi for the divergence-free velocities produced here.

    The *_increment functions return the pieces (drift, noise) a step adds; the residual
    monitors rebuild the integral identities from the same functions.

:see_also:
    ./solver.py
    ../monitors/residuals.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import math

import numpy as np

from ..noise.operators import apply_g, apply_sigma
from ..spectral.fields import (SpectralField, VectorField, advect, flux_divergence,
                               heat_smooth, helmholtz_project, lp_norm, pointwise_map,
                               transport_divergence)
from ..utils.io import catch_numerical_error

C_SAFE = 0.5

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def u_forcing(xi, model):
    """Pi(e^{-delta_1 (-Laplace)} xi, e^{-delta_2 (-Laplace)} xi)"""
    p = model.params
    return helmholtz_project(VectorField(heat_smooth(xi, p.delta1), heat_smooth(xi, p.delta2)))


def u_increment(u, xi, model, dW3):
    """(phi1 f, noise) of one u-step; the linear part is applied by the caller."""
    p = model.params
    forcing = u_forcing(xi, model)
    drift = VectorField(forcing.u1 * model.phi1_u, forcing.u2 * model.phi1_u)
    s3 = p.noise_scale[2]
    if s3 == 0:
        return drift, VectorField.zeros(u.basis)
    return drift, apply_sigma(p.gamma3, dW3, u.basis) * s3


@catch_numerical_error("u")
def step_u(u, xi, model, dW3):
    """
    u' = exp(-r_u lambda dt) u + phi1 Pi(xi * Phi) + sigma_gamma3 dW3

    :type u: VectorField
    :type xi: SpectralField
    :type model: Model
    :param dW3: increments of shape (2, K)
    :rtype: VectorField
    """
    drift, noise = u_increment(u, xi, model, dW3)
    return VectorField(u.u1 * model.E_u, u.u2 * model.E_u) + drift + noise


def c_forcing(c, xi, u, theta_cut, model):
    """beta xi - delta_c Theta u.grad c"""
    p = model.params
    f = xi * p.beta
    if theta_cut != 0 and p.delta_c != 0:
        f = f - advect(u, c) * (p.delta_c * theta_cut)
    return f


def c_increment(c, xi, u, theta_cut, model, dW2):
    p = model.params
    drift = c_forcing(c, xi, u, theta_cut, model) * model.phi1_c
    s2 = p.noise_scale[1]
    if s2 == 0:
        return drift, SpectralField.zeros(c.basis)
    return drift, apply_g(c, p.gamma2, dW2) * s2


@catch_numerical_error("c")
def step_c(c, xi, u, theta_cut, model, dW2):
    """
    c' = exp(-(r_c lambda + alpha) dt) c + phi1 (beta xi - delta_c Theta u.grad c)
         + g_gamma2(c) dW2

    :param theta_cut: cut-off value in [0, 1]
    :rtype: SpectralField
    """
    if not 0.0 <= theta_cut <= 1.0:
        raise ValueError("cut-off value must lie in [0, 1], got %r" % theta_cut)
    drift, noise = c_increment(c, xi, u, theta_cut, model, dW2)
    return c * model.E_c + drift + noise


def porous_flux(n, q):
    """Dealiased |n|^(q-1) n."""
    return pointwise_map(n, lambda v: np.abs(v) ** (q - 1.0) * v)


def n_drift(n, xi, c, u, model):
    """Right-hand side of the n-equation without noise."""
    p = model.params
    P = porous_flux(n, p.q)
    drift = SpectralField(-p.r_n * n.basis.lam * P.coeffs, n.basis)
    if model.theta != 0:
        drift = drift + xi * model.theta
    if p.chi != 0:
        drift = drift - flux_divergence(xi, c) * p.chi
    if p.delta_n != 0:
        drift = drift - transport_divergence(u, xi) * p.delta_n
    return drift


def n_increment(n, xi, c, u, model, dW1):
    p = model.params
    drift = n_drift(n, xi, c, u, model) * p.dt
    s1 = p.noise_scale[0]
    if s1 == 0:
        return drift, SpectralField.zeros(n.basis)
    return drift, apply_g(n, p.gamma1, dW1) * s1


@catch_numerical_error("n")
def step_n(n, xi, c, u, model, dW1):
    """
    Explicit Euler-Maruyama step of the porous-medium equation driven by xi.

    :rtype: SpectralField
    """
    drift, noise = n_increment(n, xi, c, u, model, dW1)
    return n + drift + noise


def stability_dt(n, params):
    """
    Largest stable explicit step of the porous term,
    C_SAFE / (lambda_max q max|n|^(q-1) r_n), infinite for n = 0.

    :type n: SpectralField
    :type params: ModelParams
    """
    peak = lp_norm(n, math.inf)
    if peak == 0:
        return math.inf
    denom = n.basis.lam_max * params.q * peak ** (params.q - 1.0) * params.r_n
    if denom == 0:
        return math.inf
    return C_SAFE / denom
