# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Local solutions up to the stopping time and their gluing into a global run

:description:
    run_local integrates the coupled system with cut-off level kappa and ends the segment
    at the first grid time where h(t) = sup |u|_{L^2} reaches kappa. Before that time the
    cut-off value is identically 1, so the segment solves the uncut system.

    escalate_and_glue restarts from the exact terminal state of a stopped segment with a
    fresh noise path (path id run_id * 2^20 + segment index) and a raised kappa, until the
    horizon is reached or the escalation budget is spent. kappa is raised before every
    segment until it exceeds h of the state the segment starts from, so segments never
    have zero length.

:see_also:
    ../linearized/solver.py -- solve_coupled()
    ./exceedance.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import numpy as np

from ..errors import BlowUpError, ConfigurationError
from ..linearized.model import Trajectory
from ..linearized.solver import solve_coupled
from ..noise.wiener import sample_path
from ..spectral.fields import sobolev_norm
from ..utils.io import IO

SEGMENT_STRIDE = 2 ** 20

ESCALATIONS = ("increment", "double")

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- CLASSES --#


class Segment(object):
    """
    One local solution on [start, end], end = min(tau_kappa, horizon).

    blown_up marks a segment whose integration failed; its trajectory is None and its
    terminal state is the state it started from.
    """
    def __init__(self, start, end, kappa, trajectory, terminal, path_id, stopped,
                 blown_up=False, error=None):
        self.start = start
        self.end = end
        self.kappa = kappa
        self.trajectory = trajectory
        self.terminal = terminal
        self.path_id = path_id
        self.stopped = stopped
        self.blown_up = blown_up
        self.error = error

    @property
    def steps(self):
        return 0 if self.trajectory is None else self.trajectory.steps

    def summary(self):
        state = self.terminal
        return {
            "start": float(self.start),
            "end": float(self.end),
            "kappa": float(self.kappa),
            "stopped": bool(self.stopped),
            "blown_up": bool(self.blown_up),
            "path_id": int(self.path_id),
            "steps": int(self.steps),
            "terminal": {
                "u_L2": state.u.norm(),
                "c_L2": state.c.norm(),
                "n_Hm1": sobolev_norm(state.n, -1),
                "mass_n": state.n.mean(),
            },
            "error": self.error,
        }

    def __repr__(self):
        return "Segment([%g, %g], kappa=%g, stopped=%r)" % (self.start, self.end,
                                                          self.kappa, self.stopped)


class GlobalRun(object):
    """Ordered segments of one glued run."""
    def __init__(self, segments, escalations, completed):
        self.segments = segments
        self.escalations = escalations
        self.completed = completed

    @property
    def blown_up(self):
        return any(s.blown_up for s in self.segments)

    @property
    def end(self):
        return self.segments[-1].end if self.segments else 0.0

    def glued(self):
        """One Trajectory over [0, end]; boundary states appear once."""
        parts = [s.trajectory for s in self.segments if s.trajectory is not None]
        if not parts:
            raise ValueError("no integrated segment to glue")
        first = parts[0]

        def cat(name):
            arrays = [getattr(first, name)] + [getattr(p, name)[1:] for p in parts[1:]]
            return np.concatenate(arrays, axis=0)

        return Trajectory(first.basis, first.dt, cat("n"), cat("c"), cat("u"),
                          cat("theta"), cat("sup"), xi=None,
                          kappa=self.segments[-1].kappa, t0=first.t0,
                          path_id=first.path_id, stopped=not self.completed)

    def boundary_jumps(self):
        """Max coefficient jump between each terminal state and the next initial state."""
        jumps = []
        parts = [s.trajectory for s in self.segments if s.trajectory is not None]
        for left, right in zip(parts[:-1], parts[1:]):
            jumps.append(max(float(np.max(np.abs(left.n[-1] - right.n[0]))),
                             float(np.max(np.abs(left.c[-1] - right.c[0]))),
                             float(np.max(np.abs(left.u[-1] - right.u[0])))))
        return jumps

    def summary(self):
        return {
            "completed": bool(self.completed),
            "escalations": int(self.escalations),
            "end": float(self.end),
            "segments": [s.summary() for s in self.segments],
        }

    def __repr__(self):
        return "GlobalRun(segments=%d, escalations=%d, completed=%r)" % (
            len(self.segments), self.escalations, self.completed)

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def run_local(state0, kappa, model, noise, horizon, t0=0.0):
    """
    Coupled run from state0 until the stopping time tau_kappa or `horizon` steps.

    :type state0: SystemState
    :param kappa: cut-off level, the run stops at the first grid time with h >= kappa
    :type model: Model
    :type noise: NoisePath
    :param horizon: maximal number of steps
    :param t0: start time
    :rtype: Segment
    """
    try:
        traj = solve_coupled(model, noise, kappa, state0, steps=horizon,
                             stop_at_kappa=True, t0=t0)
    except BlowUpError as e:
        IO.warning("segment starting at t=%g blew up: %s" % (t0, e))
        return Segment(t0, t0, kappa, None, state0, noise.path_id, stopped=False,
                       blown_up=True, error=str(e))
    end = t0 + traj.steps * model.dt
    return Segment(t0, end, kappa, traj, traj.final_state, noise.path_id,
                   stopped=traj.stopped)


def next_kappa(kappa, escalation):
    if escalation == "increment":
        return kappa + 1.0
    if escalation == "double":
        return 2.0 * kappa
    raise ConfigurationError("escalation must be one of %s" % (ESCALATIONS,),
                             key="escalation")


def segment_path_id(run_id, segment):
    return int(run_id) * SEGMENT_STRIDE + int(segment)


def escalate_and_glue(state0, kappa0, model, steps, noise_config, run_id=0,
                      max_escalations=8, escalation="increment", models=None):
    """
    Glue local solutions with independent noise and escalating kappa.

    :param state0: initial state
    :param kappa0: first cut-off level, > 0
    :param model: Model used by every segment unless `models` is given
    :param steps: horizon in steps of model.dt
    :param noise_config: NoiseConfig carrying the master seed
    :param run_id: index of this run inside an ensemble
    :param models: optional per-segment models; the last one repeats
    :rtype: GlobalRun
    """
    if not kappa0 > 0:
        raise ConfigurationError("kappa0 must be positive, got %r" % kappa0, key="kappa")
    next_kappa(kappa0, escalation)
    segments = []
    kappa = float(kappa0)
    state = state0
    t = 0.0
    remaining = int(steps)
    escalations = 0
    index = 0
    while remaining > 0:
        h = state.u.norm()
        while h >= kappa and escalations < max_escalations:
            kappa = next_kappa(kappa, escalation)
            escalations += 1
            IO.debug("run %d: h=%.4g at t=%g, kappa -> %g" % (run_id, h, t, kappa))
        if h >= kappa:
            IO.warning("run %d: escalation budget of %d exhausted at t=%g"
                       % (run_id, max_escalations, t))
            break
        seg_model = model
        if models:
            seg_model = models[min(index, len(models) - 1)]
        path_id = segment_path_id(run_id, index)
        noise = sample_path(noise_config, remaining, seg_model.dt, path_id)
        segment = run_local(state, kappa, seg_model, noise, remaining, t0=t)
        segments.append(segment)
        if segment.blown_up:
            break
        remaining -= segment.steps
        t = segment.end
        state = segment.terminal
        if not segment.stopped:
            break
        index += 1
    completed = remaining == 0 and not any(s.blown_up for s in segments)
    return GlobalRun(segments, escalations, completed)


def with_noise_scale(model, scale):
    """Copy of a model with every noise amplitude multiplied by `scale`."""
    p = model.params
    return model.with_params(noise_scale=tuple(s * scale for s in p.noise_scale))

