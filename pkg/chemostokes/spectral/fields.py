# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Scalar and vector spectral fields and the operators acting on them

:description:
    A SpectralField is a coefficient vector over the retained eigenbasis of a
    SpectralBasis. A VectorField pairs two of them. The module level functions are the
    field operators used by the solver: transforms, Sobolev and Lebesgue norms, the
    Helmholtz-Leray projection, heat smoothing, powers of -Laplace, spectral derivatives
    and dealiased pointwise products.

    Every operator is a pure function of its inputs and returns a new field.

:see_also:
    ./basis.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import math

import numpy as np

from ..errors import ConfigurationError, GridMismatchError

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- CLASSES --#


class SpectralField(object):
    """
    Real coefficients of a scalar field against the orthonormal eigenbasis.

    :param coeffs: array of length K
    :param basis: the SpectralBasis the coefficients refer to
    """
    __slots__ = ("coeffs", "basis")

    def __init__(self, coeffs, basis):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (basis.K,):
            raise GridMismatchError("expected %d coefficients, got shape %s"
                                    % (basis.K, coeffs.shape))
        self.coeffs = coeffs
        self.basis = basis

    @classmethod
    def zeros(cls, basis):
        return cls(np.zeros(basis.K), basis)

    @classmethod
    def mode(cls, basis, index, amplitude=1.0):
        """amplitude * phi_index"""
        coeffs = np.zeros(basis.K)
        coeffs[index] = amplitude
        return cls(coeffs, basis)

    @classmethod
    def constant(cls, basis, value):
        """The constant function `value`; phi_0 = 1/L."""
        return cls.mode(basis, 0, value * basis.L)

    def copy(self):
        return SpectralField(self.coeffs.copy(), self.basis)

    def norm(self):
        """L^2 norm (Parseval)."""
        return float(np.linalg.norm(self.coeffs))

    def mean(self):
        """Integral over the torus."""
        return float(self.coeffs[0] * self.basis.L)

    '''-----------------------------------Arithmetic-----------------------------------'''
    def _other(self, other):
        if isinstance(other, SpectralField):
            if other.basis is not self.basis:
                raise GridMismatchError("fields live on different bases")
            return other.coeffs
        return other

    def __add__(self, other):
        return SpectralField(self.coeffs + self._other(other), self.basis)

    def __sub__(self, other):
        return SpectralField(self.coeffs - self._other(other), self.basis)

    def __mul__(self, scalar):
        return SpectralField(self.coeffs * scalar, self.basis)

    __rmul__ = __mul__

    def __neg__(self):
        return SpectralField(-self.coeffs, self.basis)

    def __repr__(self):
        return "SpectralField(K=%d, |.|=%.6g)" % (self.basis.K, self.norm())


class VectorField(object):
    """Two-component field u = (u1, u2) on a common basis."""
    __slots__ = ("u1", "u2")

    def __init__(self, u1, u2):
        if u1.basis is not u2.basis:
            raise GridMismatchError("vector components live on different bases")
        self.u1 = u1
        self.u2 = u2

    @classmethod
    def zeros(cls, basis):
        return cls(SpectralField.zeros(basis), SpectralField.zeros(basis))

    @classmethod
    def from_array(cls, array, basis):
        """Build from a (2, K) coefficient array."""
        return cls(SpectralField(array[0], basis), SpectralField(array[1], basis))

    @property
    def basis(self):
        return self.u1.basis

    @property
    def array(self):
        return np.stack([self.u1.coeffs, self.u2.coeffs])

    def copy(self):
        return VectorField(self.u1.copy(), self.u2.copy())

    def norm(self):
        return float(math.hypot(self.u1.norm(), self.u2.norm()))

    def __add__(self, other):
        return VectorField(self.u1 + other.u1, self.u2 + other.u2)

    def __sub__(self, other):
        return VectorField(self.u1 - other.u1, self.u2 - other.u2)

    def __mul__(self, scalar):
        return VectorField(self.u1 * scalar, self.u2 * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return VectorField(-self.u1, -self.u2)

    def __repr__(self):
        return "VectorField(K=%d, |.|=%.6g)" % (self.basis.K, self.norm())

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def transform(values, basis):
    """
    Physical grid values -> SpectralField.

    :param values: array of shape (nx, ny)
    :type values: np.ndarray
    :param basis: target basis
    :type basis: SpectralBasis
    :rtype: SpectralField
    """
    values = np.asarray(values, dtype=float)
    if values.shape != (basis.grid.nx, basis.grid.ny):
        raise GridMismatchError("values of shape %s on a %dx%d grid"
                                % (values.shape, basis.grid.nx, basis.grid.ny))
    return SpectralField(basis.from_grid(values), basis)


def to_physical(field):
    """SpectralField -> values on the transform grid nodes."""
    return field.basis.to_grid(field.coeffs)


def sobolev_norm(field, s):
    """
    H^s_2 norm with weight (1 + lambda_k)^s on the squared coefficients.

    :type field: SpectralField or VectorField
    :param s: smoothness index
    :rtype: float
    """
    if isinstance(field, VectorField):
        return float(math.hypot(sobolev_norm(field.u1, s), sobolev_norm(field.u2, s)))
    w = field.basis.weights(s)
    return float(math.sqrt(np.sum(w * field.coeffs ** 2)))


def lp_norm(field, p):
    """
    L^p norm by trapezoidal (equal weight) quadrature on the transform grid.

    :param p: exponent >= 1 or math.inf
    :rtype: float
    """
    if not p >= 1:
        raise ConfigurationError("L^p exponent must be >= 1, got %r" % p, key="p")
    values = np.abs(to_physical(field))
    if math.isinf(p):
        return float(values.max())
    grid = field.basis.grid
    cell = grid.area / grid.size
    return float((cell * np.sum(values ** p)) ** (1.0 / p))


def helmholtz_project(v):
    """
    Leray projection onto mean-free divergence-free fields.

    Each wavevector k is handled independently: a -> a - k (k.a)/|k|^2. The constant
    mode is removed. Modes whose derivative wavevector vanishes (pure Nyquist labels)
    carry no divergence and pass through.

    :type v: VectorField
    :rtype: VectorField
    """
    basis = v.basis
    kx, ky = basis.kx, basis.ky
    k2 = kx ** 2 + ky ** 2
    a1, a2 = v.u1.coeffs, v.u2.coeffs
    safe = np.where(k2 > 0, k2, 1.0)
    dot = np.where(k2 > 0, (kx * a1 + ky * a2) / safe, 0.0)
    p1 = a1 - kx * dot
    p2 = a2 - ky * dot
    zero = basis.lam == 0.0
    p1 = np.where(zero, 0.0, p1)
    p2 = np.where(zero, 0.0, p2)
    return VectorField(SpectralField(p1, basis), SpectralField(p2, basis))


def heat_smooth(field, delta):
    """Multiply coefficient k by exp(-delta lambda_k)."""
    if delta < 0:
        raise ConfigurationError("smoothing scale must be >= 0, got %r" % delta,
                                 key="delta")
    if delta == 0:
        return field.copy()
    return SpectralField(field.coeffs * np.exp(-delta * field.basis.lam), field.basis)


def neg_laplacian_power(field, a):
    """
    (-Laplace)^a: coefficient k times lambda_k^a for lambda_k > 0. The zero mode is
    dropped for a < 0 and kept as is for a >= 0.
    """
    lam = field.basis.lam
    positive = lam > 0
    mult = np.where(positive, np.power(np.where(positive, lam, 1.0), a),
                    1.0 if a >= 0 else 0.0)
    return SpectralField(field.coeffs * mult, field.basis)


def gradient(field):
    basis = field.basis
    return VectorField(SpectralField(basis.ddx(field.coeffs), basis),
                       SpectralField(basis.ddy(field.coeffs), basis))


def divergence(v):
    basis = v.basis
    return SpectralField(basis.ddx(v.u1.coeffs) + basis.ddy(v.u2.coeffs), basis)


def laplacian(field):
    return SpectralField(-field.basis.lam * field.coeffs, field.basis)


def dealiased_product(f, g):
    """Pointwise product f*g evaluated on the 3/2 padded grid."""
    if f.basis is not g.basis:
        raise GridMismatchError("fields live on different bases")
    return SpectralField(f.basis.product(f.coeffs, g.coeffs), f.basis)


def pointwise_map(field, fn):
    """fn applied to the padded grid values of field, projected back."""
    return SpectralField(field.basis.pointwise_map(field.coeffs, fn), field.basis)


def advect(u, f):
    """Dealiased u . grad f, with the gradient taken exactly on the padded grid."""
    basis = f.basis
    dx, dy = basis.padded_gradient(f.coeffs)
    vals = basis.to_grid(u.u1.coeffs, padded=True) * dx
    vals += basis.to_grid(u.u2.coeffs, padded=True) * dy
    return SpectralField(basis.from_grid(vals, padded=True), basis)


def flux_divergence(weight, potential):
    """Dealiased div(weight * grad potential); the constant mode is exactly zero."""
    basis = weight.basis
    w = basis.to_grid(weight.coeffs, padded=True)
    dx, dy = basis.padded_gradient(potential.coeffs)
    return SpectralField(basis.padded_divergence(w * dx, w * dy), basis)


def transport_divergence(u, f):
    """Dealiased div(f u); equals u . grad f for divergence-free u."""
    basis = f.basis
    fv = basis.to_grid(f.coeffs, padded=True)
    flux_x = fv * basis.to_grid(u.u1.coeffs, padded=True)
    flux_y = fv * basis.to_grid(u.u2.coeffs, padded=True)
    return SpectralField(basis.padded_divergence(flux_x, flux_y), basis)


def l2_pairing(f, g):
    """<f, g>_{L^2} from the coefficients."""
    if isinstance(f, VectorField):
        return l2_pairing(f.u1, g.u1) + l2_pairing(f.u2, g.u2)
    return float(np.dot(f.coeffs, g.coeffs))
