# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Laplacian eigenbasis of the periodic torus and the transforms built on it

:description:
    The torus [0, L)^2 is sampled on an nx x ny grid. Every FFT index (j, k) of that grid
    labels one real orthonormal eigenfunction of -Laplace:

        constant / self-conjugate (Nyquist) labels   phi = cos(kappa (j x + k y)) / L
        lexicographically larger label of a pair     phi = sqrt(2)/L cos(kappa (j x + k y))
        lexicographically smaller label of a pair    phi = sqrt(2)/L sin(kappa (j' x + k' y))

    where (j', k') is the larger label of the pair and kappa = 2 pi / L. Labels are sorted
    by (lambda, j, k), so ties are broken lexicographically and the ordering, and with it
    every noise stream keyed by mode index, is deterministic.

    SpectralBasis keeps the first K sorted modes and owns the coefficient <-> grid maps on
    the transform grid and on the 3/2 zero-padded grid used for pointwise products.

:see_also:
    ./fields.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError, GridMismatchError

# mode kinds
SELF_CONJUGATE = 0
PAIR_COS = 1
PAIR_SIN = 2

PADDING = 1.5

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def _wrap(m, n):
    """Map an integer wavenumber into the FFT range [-n/2, n/2 - 1]."""
    return ((m + n // 2) % n) - n // 2


def _fft_ints(n):
    return np.fft.fftfreq(n, d=1.0 / n).round().astype(int)


def build_eigenbasis(grid):
    """
    Enumerate all nx*ny eigenmodes resolvable on the grid, sorted by eigenvalue.

    :param grid: validated torus grid
    :type grid: Grid
    :return: sorted eigen data with multiplicities
    :rtype: EigenData
    """
    grid.validate()
    nx, ny = grid.nx, grid.ny
    jj, kk = np.meshgrid(_fft_ints(nx), _fft_ints(ny), indexing="ij")
    j = jj.ravel()
    k = kk.ravel()
    cj = _wrap(-j, nx)
    ck = _wrap(-k, ny)

    self_conj = (cj == j) & (ck == k)
    larger = (j > cj) | ((j == cj) & (k > ck))
    kind = np.where(self_conj, SELF_CONJUGATE, np.where(larger, PAIR_COS, PAIR_SIN))
    partner = np.stack([np.where(kind == PAIR_SIN, cj, j),
                        np.where(kind == PAIR_SIN, ck, k)], axis=1)

    lam = grid.wavenumber ** 2 * (j ** 2 + k ** 2).astype(float)
    order = np.lexsort((k, j, lam))
    modes = np.stack([j, k], axis=1)[order]
    return EigenData(modes=modes,
                     eigenvalues=lam[order],
                     kinds=kind[order],
                     partners=partner[order],
                     side_length=grid.side_length)


def eigen_growth_bounds(eigen, K, d=2):
    """
    Smallest and largest ratio lambda_k / k^(2/d) over sorted k = 1..K-1.

    :return: (c, C)
    :rtype: tuple
    """
    if K < 2:
        raise ConfigurationError("need at least two modes for growth bounds", key="K")
    k = np.arange(1, K)
    ratio = eigen.eigenvalues[1:K] / k ** (2.0 / d)
    return float(ratio.min()), float(ratio.max())


def eigenfunction_sup(eigen, K):
    """
    sup |phi_k| for the first K modes: 1/L for self-conjugate labels, sqrt(2)/L otherwise.
    Bounded uniformly in k on the torus.
    """
    L = eigen.side_length
    kinds = eigen.kinds[:K]
    return np.where(kinds == SELF_CONJUGATE, 1.0 / L, math.sqrt(2.0) / L)

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- CLASSES --#


@dataclass(frozen=True)
class Grid(object):
    """Periodic transform grid on [0, side_length)^2."""
    nx: int
    ny: int
    side_length: float = 2.0 * math.pi

    def validate(self):
        for name, n in (("nx", self.nx), ("ny", self.ny)):
            if int(n) != n or n < 4 or n % 2:
                raise ConfigurationError("%s must be an even integer >= 4, got %r"
                                         % (name, n), key=name)
        if not self.side_length > 0:
            raise ConfigurationError("side length must be positive", key="side")
        return self

    @property
    def size(self):
        return self.nx * self.ny

    @property
    def area(self):
        return self.side_length ** 2

    @property
    def wavenumber(self):
        return 2.0 * math.pi / self.side_length

    def nodes(self):
        """Quadrature node coordinates (x, y), each of shape (nx, ny)."""
        x = np.arange(self.nx) * self.side_length / self.nx
        y = np.arange(self.ny) * self.side_length / self.ny
        return np.meshgrid(x, y, indexing="ij")


@dataclass(frozen=True, eq=False)
class EigenData(object):
    """
    Sorted eigenmodes of -Laplace on the torus.

    modes       (N, 2) integer labels (j, k)
    eigenvalues (N,)   lambda = (2 pi / L)^2 (j^2 + k^2), ascending
    kinds       (N,)   SELF_CONJUGATE, PAIR_COS or PAIR_SIN
    partners    (N, 2) cosine label sharing the wavevector (the label itself unless PAIR_SIN)
    """
    modes: np.ndarray
    eigenvalues: np.ndarray
    kinds: np.ndarray
    partners: np.ndarray
    side_length: float

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def index_map(self):
        return {(int(j), int(k)): i for i, (j, k) in enumerate(self.modes)}


class SpectralBasis(object):
    """
    The first K eigenmodes of a grid together with the transform machinery.

    Coefficient arrays may carry leading batch dimensions; the last axis is the mode axis.
    """
    def __init__(self, grid, K=None):
        self.grid = grid.validate()
        self.eigen = build_eigenbasis(grid)
        if K is None:
            K = len(self.eigen)
        if int(K) != K or K < 1 or K > grid.size:
            raise ConfigurationError("K must lie in [1, nx*ny=%d], got %r"
                                     % (grid.size, K), key="K")
        self.K = int(K)
        L = grid.side_length
        self.L = L

        self.modes = self.eigen.modes[:self.K]
        self.lam = self.eigen.eigenvalues[:self.K]
        self.kinds = self.eigen.kinds[:self.K]
        self.partners = self.eigen.partners[:self.K]
        self.lam_max = float(self.lam[-1])

        # derivative wavevector of the cosine partner, Nyquist components zeroed
        pj, pk = self.partners[:, 0], self.partners[:, 1]
        kap = grid.wavenumber
        self.kx = np.where(np.abs(pj) == grid.nx // 2, 0.0, kap * pj)
        self.ky = np.where(np.abs(pk) == grid.ny // 2, 0.0, kap * pk)

        # partner index inside the retained set (-1 when the partner was truncated)
        lookup = {(int(j), int(k)): i for i, (j, k) in enumerate(self.modes)}
        partner_of = np.full(self.K, -1)
        for i, (j, k) in enumerate(self.modes):
            kind = self.kinds[i]
            if kind == PAIR_COS:
                partner_of[i] = lookup.get((_wrap(-j, grid.nx), _wrap(-k, grid.ny)), -1)
            elif kind == PAIR_SIN:
                partner_of[i] = lookup.get((int(pj[i]), int(pk[i])), -1)
        self.partner_of = partner_of

        self.band_interior = bool(np.all(np.abs(self.partners[:, 0]) < grid.nx // 2)
                                  and np.all(np.abs(self.partners[:, 1]) < grid.ny // 2))
        self.padded_shape = (int(math.ceil(PADDING * grid.nx)),
                             int(math.ceil(PADDING * grid.ny)))
        self._build_slots()

    # ------------------------------------------------------------------ slots
    def _build_slots(self):
        """Group retained labels by shared cosine wavevector."""
        slot_of = {}
        cos_idx, sin_idx, slot_kind, slot_wave = [], [], [], []
        for i in range(self.K):
            key = (int(self.partners[i, 0]), int(self.partners[i, 1]))
            if key not in slot_of:
                slot_of[key] = len(slot_wave)
                slot_wave.append(key)
                cos_idx.append(-1)
                sin_idx.append(-1)
                slot_kind.append(SELF_CONJUGATE if self.kinds[i] == SELF_CONJUGATE
                                 else PAIR_COS)
            s = slot_of[key]
            if self.kinds[i] == PAIR_SIN:
                sin_idx[s] = i
            else:
                cos_idx[s] = i
        self._slot_wave = np.array(slot_wave, dtype=int).reshape(-1, 2)
        self._slot_cos = np.array(cos_idx)
        self._slot_sin = np.array(sin_idx)
        self._slot_pair = np.array(slot_kind) == PAIR_COS

    def _slot_positions(self, shape):
        mx, my = shape
        wj, wk = self._slot_wave[:, 0], self._slot_wave[:, 1]
        return (wj % mx, wk % my), ((-wj) % mx, (-wk) % my)

    def _label_positions(self, shape):
        mx, my = shape
        return self.partners[:, 0] % mx, self.partners[:, 1] % my

    # ------------------------------------------------------------ hat <-> coeffs
    def to_hat(self, coeffs, shape=None):
        """
        Normalized Fourier array F (f = sum F e^{i kappa m.x}) of the coefficient field.

        :param shape: target FFT shape, defaults to the transform grid
        """
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape[-1] != self.K:
            raise GridMismatchError("expected %d coefficients, got %d"
                                    % (self.K, coeffs.shape[-1]))
        shape = shape or (self.grid.nx, self.grid.ny)
        if shape != (self.grid.nx, self.grid.ny) and not self.band_interior:
            raise ConfigurationError("zero padding needs every retained mode strictly "
                                     "inside the resolved band; lower K", key="K")
        lead = coeffs.shape[:-1]
        zero = np.zeros(lead + (1,))
        padded = np.concatenate([coeffs, zero], axis=-1)
        a = padded[..., self._slot_cos]
        b = padded[..., self._slot_sin]
        L = self.L
        w = 1.0 / (math.sqrt(2.0) * L)
        z = np.where(self._slot_pair, w * (a - 1j * b), a / L)

        F = np.zeros(lead + tuple(shape), dtype=complex)
        (px, py), (mx, my) = self._slot_positions(shape)
        pair = self._slot_pair
        F[..., px, py] = z
        F[..., mx[pair], my[pair]] = np.conj(z[..., pair])
        return F

    def from_hat(self, F):
        """Project a normalized Fourier array on the retained modes."""
        shape = F.shape[-2:]
        ix, iy = self._label_positions(shape)
        vals = F[..., ix, iy]
        L = self.L
        root2L = math.sqrt(2.0) * L
        return np.where(self.kinds == PAIR_COS, root2L * vals.real,
                        np.where(self.kinds == PAIR_SIN, -root2L * vals.imag,
                                 L * vals.real))

    # ----------------------------------------------------------- grid values
    def to_grid(self, coeffs, padded=False):
        shape = self.padded_shape if padded else (self.grid.nx, self.grid.ny)
        F = self.to_hat(coeffs, shape)
        return np.fft.ifft2(F, axes=(-2, -1)).real * (shape[0] * shape[1])

    def from_grid(self, values, padded=False):
        shape = self.padded_shape if padded else (self.grid.nx, self.grid.ny)
        values = np.asarray(values, dtype=float)
        if values.shape[-2:] != tuple(shape):
            raise GridMismatchError("grid values of shape %s do not match %s"
                                    % (values.shape[-2:], shape))
        F = np.fft.fft2(values, axes=(-2, -1)) / (shape[0] * shape[1])
        return self.from_hat(F)

    # ------------------------------------------------------------ derivatives
    def ddx(self, coeffs):
        return self._derivative(coeffs, self.kx)

    def ddy(self, coeffs):
        return self._derivative(coeffs, self.ky)

    def _derivative(self, coeffs, wave):
        coeffs = np.asarray(coeffs, dtype=float)
        out = np.zeros_like(coeffs)
        has = self.partner_of >= 0
        cos = has & (self.kinds == PAIR_COS)
        sin = has & (self.kinds == PAIR_SIN)
        # d/dx (a cos) = -k a sin ; d/dx (b sin) = k b cos
        out[..., self.partner_of[cos]] = -wave[cos] * coeffs[..., cos]
        out[..., self.partner_of[sin]] = wave[sin] * coeffs[..., sin]
        return out

    def _padded_wavenumbers(self):
        mx, my = self.padded_shape
        kap = self.grid.wavenumber
        fx = _fft_ints(mx).astype(float)
        fy = _fft_ints(my).astype(float)
        if mx % 2 == 0:
            fx[mx // 2] = 0.0
        if my % 2 == 0:
            fy[my // 2] = 0.0
        return kap * fx[:, None], kap * fy[None, :]

    def padded_gradient(self, coeffs):
        """Exact gradient of the field sampled on the padded grid, (d/dx, d/dy)."""
        F = self.to_hat(coeffs, self.padded_shape)
        kx, ky = self._padded_wavenumbers()
        scale = self.padded_shape[0] * self.padded_shape[1]
        dx = np.fft.ifft2(1j * kx * F, axes=(-2, -1)).real * scale
        dy = np.fft.ifft2(1j * ky * F, axes=(-2, -1)).real * scale
        return dx, dy

    def padded_divergence(self, flux_x, flux_y):
        """Coefficients of div(flux) for a flux sampled on the padded grid."""
        shape = self.padded_shape
        scale = shape[0] * shape[1]
        kx, ky = self._padded_wavenumbers()
        Fx = np.fft.fft2(flux_x, axes=(-2, -1)) / scale
        Fy = np.fft.fft2(flux_y, axes=(-2, -1)) / scale
        return self.from_hat(1j * kx * Fx + 1j * ky * Fy)

    # -------------------------------------------------------------- products
    def product(self, *coeff_arrays):
        """Dealiased pointwise product of several coefficient fields."""
        vals = self.to_grid(coeff_arrays[0], padded=True)
        for c in coeff_arrays[1:]:
            vals = vals * self.to_grid(c, padded=True)
        return self.from_grid(vals, padded=True)

    def pointwise_map(self, coeffs, fn):
        """Apply fn pointwise on the padded grid and project back."""
        return self.from_grid(fn(self.to_grid(coeffs, padded=True)), padded=True)

    def weights(self, s):
        """Sobolev weights (1 + lambda)^s."""
        return (1.0 + self.lam) ** s

    def check(self, coeffs):
        coeffs = np.asarray(coeffs)
        if coeffs.shape[-1] != self.K:
            raise GridMismatchError("field with %d modes used on a basis of %d"
                                    % (coeffs.shape[-1], self.K))
        return coeffs

    def __repr__(self):
        return "SpectralBasis(nx=%d, ny=%d, side=%g, K=%d)" % (
            self.grid.nx, self.grid.ny, self.L, self.K)
