# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Plain text snapshots of spectral fields

:description:
    A snapshot holds one scalar field:

        grid <nx> <ny> <side> <K> ordering=lex
        <j> <k> <coeff>
        ...

    one line per retained mode in sorted order. Floats are written with repr so a
    snapshot read back reproduces the coefficients bit for bit.

:see_also:
    ./basis.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import os

import numpy as np

from ..errors import GridMismatchError
from .basis import Grid, SpectralBasis
from .fields import SpectralField

ORDERING = "ordering=lex"

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def write_snapshot(field, path):
    """
    Write one SpectralField to `path`.

    :type field: SpectralField
    :param path: output file path
    :type path: str
    """
    basis = field.basis
    grid = basis.grid
    lines = ["grid %d %d %r %d %s" % (grid.nx, grid.ny, float(grid.side_length),
                                      basis.K, ORDERING)]
    for (j, k), value in zip(basis.modes, field.coeffs):
        lines.append("%d %d %r" % (j, k, float(value)))
    with open(path, "w") as handle:
        handle.write("\n".join(lines) + "\n")


def write_state_snapshots(state, directory, tag):
    """Write the n, c, u1 and u2 components of a state as four snapshot files."""
    names = {"n": state.n, "c": state.c, "u1": state.u.u1, "u2": state.u.u2}
    paths = []
    for name, field in names.items():
        path = os.path.join(directory, "snapshot_%s_%s.txt" % (tag, name))
        write_snapshot(field, path)
        paths.append(path)
    return paths


def read_snapshot(path, basis=None):
    """
    Read a snapshot back.

    :param basis: basis to attach the field to; built from the header when omitted
    :rtype: SpectralField
    """
    with open(path) as handle:
        header = handle.readline().split()
        rows = [line.split() for line in handle if line.strip()]
    if len(header) != 6 or header[0] != "grid" or header[5] != ORDERING:
        raise GridMismatchError("%s is not a snapshot file" % path)
    nx, ny, side, K = int(header[1]), int(header[2]), float(header[3]), int(header[4])
    if basis is None:
        basis = SpectralBasis(Grid(nx, ny, side), K)
    elif (basis.grid.nx, basis.grid.ny, basis.K) != (nx, ny, K):
        raise GridMismatchError("snapshot grid %dx%d K=%d does not match %r"
                                % (nx, ny, K, basis))
    if len(rows) != K:
        raise GridMismatchError("snapshot lists %d modes, header says %d" % (len(rows), K))
    labels = np.array([[int(r[0]), int(r[1])] for r in rows])
    if not np.array_equal(labels, basis.modes):
        raise GridMismatchError("snapshot mode ordering differs from the basis ordering")
    return SpectralField(np.array([float(r[2]) for r in rows]), basis)
