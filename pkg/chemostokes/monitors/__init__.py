"""Energy functionals, integral-equation residuals and the interpolation probe."""
from .energy import (EnergyReport, energy_report, lyapunov, kappa_verdict,
                     uniform_kappa_check, write_energy_csv, ENERGY_COLUMNS)
from .residuals import (ResidualReport, residual_defn, checkpoint_indices,
                        write_residual_defn_csv)
from .interpolation import (InterpolationResult, interpolation_check, interpolation_sides,
                            check_exponents)
