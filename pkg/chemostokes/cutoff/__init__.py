"""Smooth cut-off profile, running suprema and stopping times."""
from .cutoff import (CutoffSpec, RunningSup, phi, phi_kappa, phi_lipschitz, theta, update,
                     check_stop, xi_product)
