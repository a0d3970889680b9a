"""Wiener increments, colored noise operators and Ito correction constants."""
from .wiener import NoiseConfig, NoisePath, sample_path, path_generator
from .operators import (apply_g, apply_sigma, hs_norm_g, hs_envelope_g, hs_norm_sigma,
                        ito_theta, ito_alpha, stratonovich_to_ito, threshold_report,
                        thresholds, series_tail, colored_weights)
