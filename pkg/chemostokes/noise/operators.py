# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Colored noise operators, Hilbert-Schmidt diagnostics and Ito correction constants

:description:
    The multiplicative operator g_gamma and the additive operator sigma_gamma map one
    step of per-mode Brownian increments to a field:

        g_gamma(psi) dbeta     = psi * sum_{lambda_k > 0} lambda_k^(-gamma/2) phi_k dbeta_k
        sigma_gamma dbeta      = Pi ( sum_{lambda_k > 0} lambda_k^(-gamma/2) phi_k dbeta_k )

    where the product is dealiased and Pi is the Leray projection applied to the two
    independently colored velocity components.

    Hilbert-Schmidt norms are reported two ways. hs_norm_g sums the exact squared
    Sobolev norms of psi * phi_k on the torus. hs_envelope_g sums the general-domain
    envelope sup|phi_k|^2 ~ lambda_k^(d-1) (or the H^-1 multiplier weight lambda_k), whose
    convergence thresholds gamma > 3d/2 - 1 and gamma > 1 + d/2 are the ones the
    admissibility rules use.

:see_also:
    ./wiener.py
    ../spectral/fields.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import functools
import math
from collections import namedtuple

import numpy as np

from ..errors import ConfigurationError, NoiseMismatchError
from ..spectral.basis import SpectralBasis, eigen_growth_bounds
from ..spectral.fields import SpectralField, VectorField, helmholtz_project
from ..utils.io import IO, warn_numerical

SeriesValue = namedtuple("SeriesValue", ["value", "tail_bound"])

HS_CHUNK = 64

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def colored_weights(lam, gamma):
    """lambda^(-gamma/2) on positive eigenvalues, 0 on the constant mode."""
    lam = np.asarray(lam, dtype=float)
    positive = lam > 0
    return np.where(positive, np.power(np.where(positive, lam, 1.0), -0.5 * gamma), 0.0)


def colored_field(basis, gamma, increments):
    """Coefficients of sum lambda_k^(-gamma/2) phi_k dbeta_k (leading axes allowed)."""
    increments = np.asarray(increments, dtype=float)
    if increments.shape[-1] != basis.K:
        raise NoiseMismatchError("increments carry %d modes, basis has %d"
                                 % (increments.shape[-1], basis.K))
    return colored_weights(basis.lam, gamma) * increments


def apply_g(psi, gamma, increments):
    """
    Multiplicative colored noise g_gamma(psi) applied to one step of increments.

    :param psi: multiplier field
    :type psi: SpectralField
    :param gamma: noise intensity exponent
    :param increments: per-mode Brownian increments, length K
    :rtype: SpectralField
    """
    basis = psi.basis
    w = colored_field(basis, gamma, increments)
    return SpectralField(basis.product(psi.coeffs, w), basis)


def apply_sigma(gamma3, increments, basis):
    """
    Additive divergence-free colored noise.

    :param increments: array of shape (2, K), one increment vector per component
    :rtype: VectorField
    """
    increments = np.asarray(increments, dtype=float)
    if increments.shape != (2, basis.K):
        raise NoiseMismatchError("velocity increments must have shape (2, %d), got %s"
                                 % (basis.K, increments.shape))
    w = colored_field(basis, gamma3, increments)
    return helmholtz_project(VectorField.from_array(w, basis))


@functools.lru_cache(maxsize=8)
def _basis_for(grid, K):
    return SpectralBasis(grid, K)


def hs_norm_g(psi, gamma, s, K):
    """
    (sum_{k < K, lambda_k > 0} lambda_k^-gamma |psi phi_k|^2_{H^s})^(1/2)

    The products are formed on a grid of twice the resolution, so every |psi phi_k|
    is the exact norm of the product (not of its projection on the retained modes).

    :param psi: multiplier
    :type psi: SpectralField
    :param K: number of sorted modes summed, may exceed psi's own truncation
    :rtype: float
    """
    if K <= 0:
        return 0.0
    grid = psi.basis.grid
    modes = _basis_for(grid, int(K))
    if not (modes.band_interior and psi.basis.band_interior):
        raise ConfigurationError("exact Hilbert-Schmidt sums need modes strictly inside "
                                 "the resolved band; lower K", key="K")
    shape = (2 * grid.nx, 2 * grid.ny)
    size = shape[0] * shape[1]
    psi_vals = np.fft.ifft2(psi.basis.to_hat(psi.coeffs, shape)).real * size

    kap = grid.wavenumber
    fx = np.fft.fftfreq(shape[0], d=1.0 / shape[0])
    fy = np.fft.fftfreq(shape[1], d=1.0 / shape[1])
    lam_hat = kap ** 2 * (fx[:, None] ** 2 + fy[None, :] ** 2)
    weight = (1.0 + lam_hat) ** s * grid.area

    index = np.flatnonzero(modes.lam > 0)
    total = 0.0
    for start in range(0, len(index), HS_CHUNK):
        chunk = index[start:start + HS_CHUNK]
        unit = np.zeros((len(chunk), modes.K))
        unit[np.arange(len(chunk)), chunk] = 1.0
        phi = np.fft.ifft2(modes.to_hat(unit, shape), axes=(-2, -1)).real * size
        F = np.fft.fft2(psi_vals * phi, axes=(-2, -1)) / size
        sq = np.sum(weight * np.abs(F) ** 2, axis=(-2, -1))
        total += float(np.sum(modes.lam[chunk] ** (-gamma) * sq))
    return math.sqrt(total)


def envelope_weight(s, d=2):
    """Growth exponent w of |psi phi_k|^2 <= C lambda_k^w |psi|^2 on a general domain."""
    return float(d - 1) if s >= 0 else 1.0


def hs_envelope_g(gamma, s, K, eigen, d=2):
    """
    (sum_{k < K, lambda_k > 0} lambda_k^(-gamma + w(s)))^(1/2)

    Diverges for gamma <= 3d/2 - 1 at s = 0 and gamma <= 1 + d/2 at s = -1.
    """
    lam = _positive_eigenvalues(eigen, K)
    w = envelope_weight(s, d)
    return math.sqrt(float(np.sum(lam ** (-gamma + w))))


def hs_norm_sigma(gamma3, eigen, K):
    """(sum_{k < K, lambda_k > 0} lambda_k^-gamma3)^(1/2), finite for gamma3 > d/2."""
    lam = _positive_eigenvalues(eigen, K)
    return math.sqrt(float(np.sum(lam ** (-gamma3))))


def _positive_eigenvalues(eigen, K):
    if K > len(eigen):
        raise ConfigurationError("K=%d exceeds the %d resolvable modes" % (K, len(eigen)),
                                 key="K")
    lam = eigen.eigenvalues[:max(int(K), 0)]
    return lam[lam > 0]


def series_tail(exponent, eigen, K):
    """
    Upper bound of sum_{k >= K} lambda_k^-exponent from lambda_k >= c k.

    :return: the bound, math.inf when the series diverges
    """
    if exponent <= 1:
        return math.inf
    c, _ = eigen_growth_bounds(eigen, len(eigen))
    if K < 1:
        return c ** (-exponent) * (1.0 + 1.0 / (exponent - 1.0))
    return c ** (-exponent) * K ** (1.0 - exponent) / (exponent - 1.0)


def ito_theta(gamma1, eigen, K):
    """
    Ito drift constant theta = 1/2 sum_{k < K, lambda_k > 0} lambda_k^-gamma1.

    :rtype: SeriesValue
    """
    lam = _positive_eigenvalues(eigen, K)
    value = 0.5 * float(np.sum(lam ** (-gamma1)))
    return SeriesValue(value, 0.5 * series_tail(gamma1, eigen, K))


def ito_alpha(zeta, gamma2):
    """alpha = zeta - gamma2^2 / 2; warns when the c-equation loses its damping."""
    alpha = zeta - 0.5 * gamma2 ** 2
    if alpha <= 0:
        warn_numerical("alpha = zeta - gamma2^2/2 = %g <= 0, the c-equation is not "
                       "coercive" % alpha)
    return alpha


def stratonovich_to_ito(zeta, gamma1, gamma2, eigen, K):
    """Correction constants (theta, alpha) of the Ito form."""
    return ito_theta(gamma1, eigen, K).value, ito_alpha(zeta, gamma2)


def thresholds(d=2):
    """Finiteness thresholds of gamma1, gamma2 and gamma3 in dimension d."""
    return {"gamma1": 1.0 + d / 2.0, "gamma2": 1.5 * d - 1.0, "gamma3": d / 2.0}


def threshold_report(config, eigen, d=2):
    """
    Admissibility and truncation tails of the three noise intensities.

    :type config: NoiseConfig
    :rtype: dict
    """
    limits = thresholds(d)
    s_of = {"gamma1": -1, "gamma2": 0, "gamma3": 0}
    report = {}
    for name, bound in limits.items():
        gamma = getattr(config, name)
        w = 0.0 if name == "gamma3" else envelope_weight(s_of[name], d)
        report[name] = {
            "gamma": gamma,
            "threshold": bound,
            "admissible": gamma > bound,
            "tail_bound": series_tail(gamma - w, eigen, config.K),
        }
        if gamma <= bound:
            IO.warning("%s = %g is below the finiteness threshold %g; the truncated noise "
                       "series grows with K" % (name, gamma, bound))
    return report
