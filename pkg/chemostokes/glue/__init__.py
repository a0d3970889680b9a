"""Stopping-time segments, escalation, gluing and exceedance estimates."""
from .segments import (Segment, GlobalRun, run_local, escalate_and_glue, next_kappa,
                       segment_path_id, with_noise_scale)
from .exceedance import (exceedance_prob, markov_bound, path_supremum, is_nonincreasing,
                         EXCEEDANCE_COLUMNS)
