"""Pathwise Picard driver, the surrogate X-norm and the shifted Haar projection."""
from .xnorm import (FixpointConfig, MNorm, x_norm, ensemble_mnorm, haar_project,
                    bounded_set_radius)
from .picard import PicardResult, picard, picard_map, lipschitz_probe, write_residual_csv
