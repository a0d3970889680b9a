"""Laplacian eigenbasis on the periodic torus, transforms, norms and projections."""
from .basis import (Grid, EigenData, SpectralBasis, build_eigenbasis,
                    eigen_growth_bounds, eigenfunction_sup)
from .fields import (SpectralField, VectorField, transform, to_physical, sobolev_norm,
                     lp_norm, helmholtz_project, heat_smooth, neg_laplacian_power,
                     gradient, divergence, laplacian, dealiased_product, pointwise_map,
                     advect, flux_divergence, transport_divergence, l2_pairing)
from .snapshot import write_snapshot, read_snapshot, write_state_snapshots
