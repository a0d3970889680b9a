# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Linearized solve V_kappa(xi) and the directly coupled run

:description:
    solve_linearized freezes the density input xi and integrates the split system in
    order: u over the whole horizon (tracking h(t) = sup |u|_{L^2} and the cut-off
    Theta = phi(h / kappa)), then c with that Theta, then n. c and u never see the n
    initial condition.

    solve_coupled feeds xi = n back at every step. Step i uses xi_i, the noise row i and
    Theta_i, so the pathwise fixed point of xi -> n(V_kappa(xi)) is exactly the coupled
    trajectory.

:see_also:
    ./stepper.py
    ../fixedpoint/picard.py
    ../glue/segments.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import math

import numpy as np

from ..cutoff.cutoff import RunningSup, phi_kappa
from ..errors import BlowUpError, GridMismatchError, NoiseMismatchError, StabilityError
from ..spectral.fields import SpectralField, VectorField
from ..utils.io import IO, warn_numerical
from .model import Trajectory
from .stepper import stability_dt, step_c, step_n, step_u

# numpy >= 2 renamed trapz
_trapezoid = getattr(np, "trapezoid", None) or np.trapz

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def _cutoff(sup, kappa):
    if math.isinf(kappa):
        return 1.0
    return phi_kappa(sup, kappa)


def _run_step(kernel, step, *args):
    """Call a step kernel and stamp the step index on a blow-up."""
    try:
        return kernel(*args)
    except BlowUpError as e:
        e.step = step
        raise


def check_stability(n, model):
    """Refuse (or warn about) a dt above the porous stability bound of n."""
    bound = stability_dt(n, model.params)
    if model.dt > bound:
        message = "dt=%g exceeds the porous stability bound %.4g" % (model.dt, bound)
        if model.params.enforce_stability:
            raise StabilityError(message, dt=model.dt, bound=bound)
        warn_numerical(message)
    return bound


def _check_inputs(model, noise, steps, initial):
    basis = model.basis
    if initial.basis is not basis:
        raise GridMismatchError("initial state and model live on different bases")
    noise.check(steps, basis.K)
    if not math.isclose(noise.dt, model.dt, rel_tol=1e-12):
        raise NoiseMismatchError("noise sampled at dt=%g, model runs at dt=%g"
                                 % (noise.dt, model.dt))


class _StabilityWatch(object):
    """Warns once when dt leaves the stability region during a run."""
    def __init__(self, model):
        self.model = model
        self.warned = False

    def __call__(self, n, step):
        if self.warned:
            return
        bound = stability_dt(n, self.model.params)
        if self.model.dt > bound:
            self.warned = True
            warn_numerical("step %d: dt=%g above the porous stability bound %.4g"
                           % (step, self.model.dt, bound))


def solve_linearized(xi, noise, model, kappa=math.inf, initial=None, path_id=None):
    """
    V_kappa(xi): the split system driven by a frozen input.

    :param xi: frozen density input on the full time grid
    :type xi: ScalarTrajectory
    :param noise: increments for at least xi.steps steps
    :type noise: NoisePath
    :type model: Model
    :param kappa: cut-off threshold of the velocity supremum
    :param initial: initial state (n0, c0, u0)
    :type initial: SystemState
    :rtype: Trajectory
    """
    if initial is None:
        raise ValueError("solve_linearized needs an initial state")
    S = xi.steps
    basis = model.basis
    if xi.basis is not basis:
        raise GridMismatchError("input trajectory and model live on different bases")
    if not math.isclose(xi.dt, model.dt, rel_tol=1e-12):
        raise GridMismatchError("input sampled at dt=%g, model runs at dt=%g"
                                % (xi.dt, model.dt))
    _check_inputs(model, noise, S, initial)
    check_stability(initial.n, model)
    dt = model.dt
    K = basis.K

    # u over the whole horizon, with its running supremum
    u_arr = np.empty((S + 1, 2, K))
    sup = np.empty(S + 1)
    theta = np.empty(S + 1)
    tracker = RunningSup()
    u = initial.u
    u_arr[0] = u.array
    for i in range(S):
        tracker.update(i * dt, u.norm())
        sup[i] = tracker.current_sup
        theta[i] = _cutoff(sup[i], kappa)
        u = _run_step(step_u, i, u, xi.at(i), model, noise.dW3[i])
        u_arr[i + 1] = u.array
    tracker.update(S * dt, u.norm())
    sup[S] = tracker.current_sup
    theta[S] = _cutoff(sup[S], kappa)

    # c with the recorded cut-off
    c_arr = np.empty((S + 1, K))
    c = initial.c
    c_arr[0] = c.coeffs
    for i in range(S):
        u_i = VectorField.from_array(u_arr[i], basis)
        c = _run_step(step_c, i, c, xi.at(i), u_i, theta[i], model, noise.dW2[i])
        c_arr[i + 1] = c.coeffs

    # n last
    n_arr = np.empty((S + 1, K))
    n = initial.n
    n_arr[0] = n.coeffs
    watch = _StabilityWatch(model)
    for i in range(S):
        u_i = VectorField.from_array(u_arr[i], basis)
        c_i = SpectralField(c_arr[i], basis)
        n = _run_step(step_n, i, n, xi.at(i), c_i, u_i, model, noise.dW1[i])
        n_arr[i + 1] = n.coeffs
        watch(n, i + 1)

    IO.debug("linearized solve: %d steps, sup|u|=%.4g" % (S, sup[S]))
    return Trajectory(basis, dt, n_arr, c_arr, u_arr, theta, sup, xi=xi.values,
                      kappa=kappa, path_id=path_id if path_id is not None else noise.path_id)


def solve_coupled(model, noise, kappa=math.inf, initial=None, steps=None,
                  stop_at_kappa=False, t0=0.0, path_id=None):
    """
    The coupled system: xi = n fed back every step, cut-off active.

    :param steps: number of steps, defaults to model.steps
    :param stop_at_kappa: end the run at the first grid time with h >= kappa
    :param t0: start time of the run (for glued segments)
    :rtype: Trajectory
    """
    if initial is None:
        raise ValueError("solve_coupled needs an initial state")
    S = model.steps if steps is None else int(steps)
    basis = model.basis
    _check_inputs(model, noise, S, initial)
    check_stability(initial.n, model)
    dt = model.dt
    K = basis.K

    n_arr = np.empty((S + 1, K))
    c_arr = np.empty((S + 1, K))
    u_arr = np.empty((S + 1, 2, K))
    sup = np.empty(S + 1)
    theta = np.empty(S + 1)
    tracker = RunningSup()
    watch = _StabilityWatch(model)

    n, c, u = initial.n, initial.c, initial.u
    last = S
    stopped = False
    for i in range(S + 1):
        n_arr[i] = n.coeffs
        c_arr[i] = c.coeffs
        u_arr[i] = u.array
        tracker.update(t0 + i * dt, u.norm())
        sup[i] = tracker.current_sup
        theta[i] = _cutoff(sup[i], kappa)
        if stop_at_kappa and sup[i] >= kappa:
            last = i
            stopped = True
            break
        if i == S:
            break
        u_next = _run_step(step_u, i, u, n, model, noise.dW3[i])
        c_next = _run_step(step_c, i, c, n, u, theta[i], model, noise.dW2[i])
        n_next = _run_step(step_n, i, n, n, c, u, model, noise.dW1[i])
        n, c, u = n_next, c_next, u_next
        watch(n, i + 1)

    traj = Trajectory(basis, dt, n_arr, c_arr, u_arr, theta, sup, xi=None, kappa=kappa,
                      t0=t0, path_id=path_id if path_id is not None else noise.path_id,
                      stopped=stopped)
    if stopped:
        traj = traj.truncate(last)
        IO.debug("coupled run stopped at step %d (h=%.4g >= kappa=%g)"
                 % (last, sup[last], kappa))
    return traj


def trapezoid(values, dt):
    """Trapezoidal rule on a uniform grid along the first axis."""
    values = np.asarray(values, dtype=float)
    out = _trapezoid(values, dx=dt, axis=0)
    return float(out) if values.ndim == 1 else out


def linearized_estimates(trajectories, m_star, r_star, q):
    """
    Monte-Carlo means of the left-hand sides of the a-priori bounds of the split system.

    :param trajectories: list of Trajectory
    :rtype: dict
    """
    a = m_star / r_star
    rows = []
    for traj in trajectories:
        b = traj.basis
        lam = b.lam
        u2 = np.sum(traj.u ** 2, axis=(1, 2))
        grad_u = np.sum(lam * traj.u ** 2, axis=(1, 2))
        c_h1 = np.sum((1 + lam) * traj.c ** 2, axis=1)
        c_h2 = np.sum((1 + lam) ** 2 * traj.c ** 2, axis=1)
        n_hm1 = np.sum(traj.n ** 2 / (1 + lam), axis=1)
        values = np.abs(b.to_grid(traj.n))
        cell = b.grid.area / b.grid.size
        n_q = cell * np.sum(values ** (q + 1), axis=(1, 2))
        rows.append({
            "u_sup": np.max(u2) ** (4 * a),
            "u_int": trapezoid(grad_u, traj.dt) ** (4 * a),
            "c_sup": np.max(c_h1) ** (4 * a),
            "c_int": trapezoid(c_h2, traj.dt) ** (4 * a),
            "n_sup": np.max(n_hm1) ** (2 * a),
            "n_int": trapezoid(n_q, traj.dt) ** (2 * a),
        })
    return {key: float(np.mean([r[key] for r in rows])) for key in rows[0]} if rows else {}
