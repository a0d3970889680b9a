# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Acceptance suite of the verify mode

:description:
    Every check measures one number, compares it with a threshold and records
    (name, passed, value, threshold). A check that raises is recorded as failed with the
    error message; the suite always runs to the end and writes verify.json.

    Groups:
        noise        truncation increments of the noise series and the HS/H^-1 ratio
        eigen        growth bounds of the sorted eigenvalues
        algebra      Leray projection, cut-off profile, shifted Haar projection
        scheme       closed-form linear solution, strong order, OU variance
        conservation mass of n without and with the Ito drift
        fixpoint     Picard iteration in the linear and the default regime
        kappa        uniform-in-kappa Lyapunov bound
        glue         exceedance monotonicity, segment continuity, determinism
        continuity   Lipschitz probe of the linearized operator
        interpolation  empirical constant of the interpolation bound

    Random test fields come from Philox streams keyed by (master_seed, stream, 0), so the
    suite is deterministic for a given config.

:see_also:
    ./run.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import math
import os

import numpy as np

from ..cutoff.cutoff import phi
from ..errors import ChemostokesError
from ..fixedpoint.picard import lipschitz_probe, picard
from ..fixedpoint.xnorm import bounded_set_radius, haar_project, x_norm
from ..glue.exceedance import MIN_PATHS, exceedance_prob, is_nonincreasing
from ..glue.segments import escalate_and_glue
from ..linearized.model import ScalarTrajectory, SystemState, initial_state
from ..linearized.solver import solve_coupled, solve_linearized
from ..linearized.stepper import step_u, u_forcing
from ..monitors.energy import uniform_kappa_check
from ..monitors.interpolation import interpolation_check
from ..monitors.residuals import residual_defn
from ..noise.operators import hs_envelope_g, hs_norm_g
from ..noise.wiener import NoisePath, path_generator, sample_path
from ..spectral.basis import Grid, SpectralBasis, build_eigenbasis, eigen_growth_bounds
from ..spectral.fields import (SpectralField, VectorField, gradient, helmholtz_project,
                               sobolev_norm)
from ..utils.io import IO, write_json

# acceptance scale of the noise and eigenvalue checks
THRESHOLD_GRID = 64
SERIES_K = (400, 800)
SERIES_TOL = 0.01
HS_FIELDS = 100
HS_K = (400, 100)
HS_SLACK = 1.05
EIGEN_K = (50, 200, 800)
EIGEN_SPREAD = 10.0

ALGEBRA_TOL = 1e-12
HAAR_STEPS = 64
HAAR_LEVELS = (1, 2, 3, 4)

LINEAR_DT = 1e-4
LINEAR_T = 0.1
LINEAR_TOL = 1e-6
ORDER_T = 0.1
ORDER_PATHS = 8
ORDER_REFINE = 8
ORDER_RANGE = (1.6, 2.4)
OU_PATHS = 64
OU_SE = 3.0

MASS_TOL = 1e-12
GROWTH_DT = 1e-4
GROWTH_T = 0.2
GROWTH_TOL = 1e-4

FIXPOINT_PATHS = 32
FIXPOINT_SHARE = 0.9
RESIDUAL_TOL = 1e-10
LINEAR_FP_TOL = 1e-9
LINEAR_FP_ITER = 60

JUMP_TOL = 1e-12
GLUE_RUNS = 2
GLUE_KAPPA_FACTOR = 1.05

PROBE_PAIRS = 50
PROBE_STEPS = 100
STABILITY = 0.2
INTERP_SAMPLES = 100

# Philox stream ids of the random test fields
STREAM_HS = 1
STREAM_ALGEBRA = 2
STREAM_HAAR = 3
STREAM_PROBE = 4
STREAM_INTERP = 6

# path ids of the noise realizations used by the suite
PATHS_ORDER = 10 ** 6
PATHS_OU = 2 * 10 ** 6
PATHS_FIXPOINT = 3 * 10 ** 6
PATHS_PROBE = 4 * 10 ** 6

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def _check(name, value, threshold, passed=None):
    value = float(value)
    if passed is None:
        passed = value <= threshold
    return {"name": name, "passed": bool(passed), "value": value,
            "threshold": float(threshold)}


def _stream(config, stream):
    return path_generator(config["master_seed"], stream, 0)


def _random_field(rng, basis, amplitude=1.0, decay=1.0):
    coeffs = rng.standard_normal(basis.K) * (1.0 + basis.lam) ** (-decay)
    return SpectralField(amplitude * coeffs, basis)


'''---------------Noise and eigenvalues---------------'''


def check_noise(config):
    grid = Grid(THRESHOLD_GRID, THRESHOLD_GRID, config["side"])
    eigen = build_eigenbasis(grid)
    lo, hi = SERIES_K

    def increment(gamma, s):
        return hs_envelope_g(gamma, s, hi, eigen) / hs_envelope_g(gamma, s, lo, eigen) - 1.0

    converging = max(increment(config["gamma1"], -1), increment(config["gamma2"], 0))
    diverging = min(increment(1.5, -1), increment(1.5, 0))

    basis = SpectralBasis(grid, min(int(config["K"]), HS_K[1]))
    rng = _stream(config, STREAM_HS)
    fields = [_random_field(rng, basis, decay=0.5) for _ in range(HS_FIELDS)]
    ratios = {}
    for K in HS_K:
        ratios[K] = max(hs_norm_g(f, config["gamma1"], -1, K) / sobolev_norm(f, -1)
                        for f in fields)
    calibration = ratios[HS_K[0]]
    return [
        _check("noise_series_converges", converging, SERIES_TOL, converging < SERIES_TOL),
        _check("noise_series_diverges_below_threshold", diverging, SERIES_TOL,
               diverging >= SERIES_TOL),
        _check("hs_sobolev_ratio", ratios[HS_K[1]] / calibration, HS_SLACK),
    ]


def check_eigen(config):
    eigen = build_eigenbasis(Grid(THRESHOLD_GRID, THRESHOLD_GRID, config["side"]))
    bounds = [eigen_growth_bounds(eigen, K) for K in EIGEN_K]
    spread = max(C for _, C in bounds) / min(c for c, _ in bounds)
    return [_check("eigenvalue_growth_spread", spread, EIGEN_SPREAD, spread < EIGEN_SPREAD)]


'''---------------Projection algebra---------------'''


def check_algebra(config):
    basis = config.basis
    rng = _stream(config, STREAM_ALGEBRA)
    v = VectorField(_random_field(rng, basis), _random_field(rng, basis))
    pv = helmholtz_project(v)
    idempotence = (helmholtz_project(pv) - pv).norm() / v.norm()
    grad = gradient(_random_field(rng, basis))
    kill = helmholtz_project(grad).norm() / grad.norm()

    xs = np.linspace(0.0, 3.0, 301)
    values = np.array([phi(x) for x in xs])
    violations = int(np.sum((values < 0) | (values > 1)))
    violations += int(np.sum(values[xs <= 1.0] != 1.0) + np.sum(values[xs >= 2.0] != 0.0))

    fp = config.fixpoint_config()
    dt = 1.0 / HAAR_STEPS
    hrng = _stream(config, STREAM_HAAR)
    growth = 0.0
    for _ in range(4):
        steps = hrng.standard_normal((HAAR_STEPS, basis.K)) * math.sqrt(dt)
        walk = np.vstack([np.zeros(basis.K), np.cumsum(steps, axis=0)])
        f = ScalarTrajectory(walk, dt, basis)
        size = x_norm(f, fp)
        for level in HAAR_LEVELS:
            growth = max(growth, x_norm(haar_project(f, level), fp) / size - 1.0)

    t = np.arange(HAAR_STEPS + 1)[:, None] * dt
    a = _random_field(hrng, basis).coeffs
    b = _random_field(hrng, basis).coeffs
    smooth = ScalarTrajectory(np.sin(2 * math.pi * t) * a + t * b, dt, basis)
    errors = [x_norm(haar_project(smooth, level) - smooth, fp) for level in HAAR_LEVELS]
    increases = sum(1 for e1, e2 in zip(errors[:-1], errors[1:]) if e2 >= e1)
    return [
        _check("helmholtz_idempotence", idempotence, ALGEBRA_TOL),
        _check("helmholtz_gradient_kill", kill, ALGEBRA_TOL),
        _check("cutoff_profile_violations", violations, 0),
        _check("haar_contraction_excess", max(growth, 0.0), ALGEBRA_TOL),
        _check("haar_error_increases", increases, 0),
    ]


'''---------------Scheme consistency---------------'''


def _first_mode(basis, lam):
    return int(np.flatnonzero(basis.lam == lam)[0])


def _duhamel(rate, t):
    """(1 - exp(-rate t)) / rate per time (rows) and mode (columns), t where rate = 0."""
    rt = np.outer(t, rate)
    safe = np.where(rate == 0, 1.0, rate)
    return np.where(rate == 0, t[:, None], -np.expm1(-rt) / safe)


def check_closed_form(config):
    basis = config.basis
    S = int(round(LINEAR_T / LINEAR_DT))
    model = config.model().with_params(chi=0.0, delta_n=0.0, delta_c=0.0,
                                       noise_scale=(0.0, 0.0, 0.0), dt=LINEAR_DT, steps=S)
    p = model.params
    i1, i2 = _first_mode(basis, 1.0), _first_mode(basis, 2.0)
    source = SpectralField.mode(basis, i1, 0.1) + SpectralField.mode(basis, i2, 0.05)
    xi = ScalarTrajectory.constant(source, S, LINEAR_DT)
    n0 = SpectralField.zeros(basis)
    c0 = SpectralField.mode(basis, i1, 0.1)
    u0 = helmholtz_project(VectorField(SpectralField.mode(basis, i2, 0.1),
                                       SpectralField.zeros(basis)))
    initial = SystemState(n0, c0, u0)
    traj = solve_linearized(xi, NoisePath.zeros(S, basis.K, LINEAR_DT), model, math.inf,
                            initial)
    t = traj.times
    lam = basis.lam

    rate_u = p.r_u * lam
    forcing = u_forcing(source, model).array
    u_exact = (np.exp(-np.outer(t, rate_u))[:, None, :] * u0.array
               + _duhamel(rate_u, t)[:, None, :] * forcing)
    rate_c = p.r_c * lam + model.alpha
    c_exact = (np.exp(-np.outer(t, rate_c)) * c0.coeffs
               + _duhamel(rate_c, t) * (p.beta * source.coeffs))
    # n0 = 0 keeps the porous term of order |theta t xi|^q
    n_exact = np.outer(t, model.theta * source.coeffs)

    err_u = np.max(np.abs(traj.u - u_exact))
    err_c = np.max(np.abs(traj.c - c_exact))
    err_n = np.max(np.abs(traj.n - n_exact))
    return [_check("linear_closed_form", max(err_u, err_c, err_n), LINEAR_TOL)]


def _u_endpoint(model, noise):
    basis = model.basis
    u = VectorField.zeros(basis)
    xi = SpectralField.zeros(basis)
    for i in range(noise.steps):
        u = step_u(u, xi, model, noise.dW3[i])
    return u


def check_strong_order(config):
    base = config.model()
    noise_config = config.noise_config()
    h = base.dt
    S = int(round(ORDER_T / h))
    fine_dt = h / ORDER_REFINE
    models = {f: base.with_params(dt=h / f, steps=S * f) for f in (1, 2, ORDER_REFINE)}
    errors = {1: [], 2: []}
    for p in range(ORDER_PATHS):
        fine = sample_path(noise_config, S * ORDER_REFINE, fine_dt, PATHS_ORDER + p)
        reference = _u_endpoint(models[ORDER_REFINE], fine)
        for f in (1, 2):
            u = _u_endpoint(models[f], fine.coarsen(ORDER_REFINE // f))
            errors[f].append((u - reference).norm())
    ratio = float(np.mean(errors[1]) / np.mean(errors[2]))
    lo, hi = ORDER_RANGE
    return [_check("strong_order_ratio", ratio, hi, lo <= ratio <= hi)]


def check_ou_variance(config):
    model = config.model()
    basis = model.basis
    p = model.params
    noise_config = config.noise_config()
    S = model.steps
    T = S * model.dt
    energies = []
    for k in range(OU_PATHS):
        noise = sample_path(noise_config, S, model.dt, PATHS_OU + k)
        energies.append(_u_endpoint(model, noise).norm() ** 2)
    lam = basis.lam[basis.lam > 0]
    rate = p.r_u * lam
    exact = p.noise_scale[2] ** 2 * float(np.sum(lam ** (-p.gamma3)
                                                 * -np.expm1(-2 * rate * T) / (2 * rate)))
    se = float(np.std(energies, ddof=1)) / math.sqrt(OU_PATHS)
    z = abs(float(np.mean(energies)) - exact) / se if se > 0 else math.inf
    return [_check("ou_variance_zscore", z, OU_SE)]


'''---------------Conservation---------------'''


def check_conservation(config):
    basis = config.basis
    initial = config.initial_state()
    model = config.model().with_params(theta=0.0, noise_scale=(0.0, 0.0, 0.0))
    S = model.steps
    traj = solve_coupled(model, NoisePath.zeros(S, basis.K, model.dt), math.inf, initial)
    mass = traj.n[:, 0] * basis.L
    drift = float(np.max(np.abs(mass - mass[0])))

    S = int(round(GROWTH_T / GROWTH_DT))
    growing = config.model().with_params(noise_scale=(0.0, 0.0, 0.0), dt=GROWTH_DT, steps=S)
    traj = solve_coupled(growing, NoisePath.zeros(S, basis.K, GROWTH_DT), math.inf, initial)
    ratio = traj.n[-1, 0] / traj.n[0, 0]
    expected = math.exp(growing.theta * GROWTH_T)
    return [
        _check("mass_drift", drift, MASS_TOL),
        _check("mass_growth_relative_error", abs(ratio / expected - 1.0), GROWTH_TOL),
    ]


'''---------------Fixed point---------------'''


def check_fixpoint(config):
    basis = config.basis
    fp = config.fixpoint_config()
    noise_config = config.noise_config()

    linear = config.model().with_params(chi=0.0, delta_n=0.0, delta_c=0.0,
                                        noise_scale=(0.0, 0.0, 0.0))
    small = initial_state(basis, 0.0, 1e-2, 1e-2, 1e-2)
    S = linear.steps
    noise = NoisePath.zeros(S, basis.K, linear.dt, PATHS_FIXPOINT)
    tight = fp.replace(tol=LINEAR_FP_TOL, max_iter=max(fp.max_iter, LINEAR_FP_ITER),
                       haar_level=0)
    res = picard(ScalarTrajectory.constant(small.n, S, linear.dt), noise, linear, tight,
                 small)
    decreasing = all(b < a for a, b in zip(res.residuals[:-1], res.residuals[1:]))
    residual = residual_defn(res.trajectory, noise, linear).max
    direct = solve_coupled(linear, noise, tight.kappa, small).n
    scale = max(float(np.max(np.abs(direct))), 1e-300)
    mismatch = float(np.max(np.abs(res.xi.values - direct))) / scale
    cold = picard(ScalarTrajectory.zeros(basis, S, linear.dt), noise, linear, tight, small)
    spread = x_norm(cold.xi - res.xi, tight) / max(x_norm(res.xi, tight), 1e-300)
    checks = [
        _check("picard_linear_converged",
               0 if res.converged and cold.converged and decreasing else 1, 0),
        _check("picard_linear_residual", residual, RESIDUAL_TOL),
        _check("picard_linear_matches_direct_solve", mismatch, LINEAR_TOL),
        _check("picard_linear_start_independent", spread, 10 * tight.tol),
    ]

    model = config.model()
    initial = config.initial_state()
    xi0 = ScalarTrajectory.constant(initial.n, model.steps, model.dt)
    paths = max(int(config["paths"]), FIXPOINT_PATHS)
    converged = 0
    for k in range(paths):
        noise = sample_path(noise_config, model.steps, model.dt, PATHS_FIXPOINT + 1 + k)
        if picard(xi0, noise, model, fp, initial).converged:
            converged += 1
    share = converged / float(paths)
    checks.append(_check("picard_default_converged_share", share, FIXPOINT_SHARE,
                         share >= FIXPOINT_SHARE))
    return checks


'''---------------Uniform bound and gluing---------------'''


def check_kappa(config):
    verdict, rows, _ = uniform_kappa_check(config.model(), config.initial_state(),
                                           config.kappa_list, int(config["paths"]),
                                           config.noise_config(), p=1.0,
                                           workers=config["workers"])
    return [_check("uniform_kappa_lyapunov", verdict["value"], verdict["threshold"],
                   verdict["passed"])]


def check_glue(config):
    model = config.model()
    initial = config.initial_state()
    noise_config = config.noise_config()
    paths = max(int(config["paths"]), MIN_PATHS)
    rows, _ = exceedance_prob(model, initial, config.kappa_list, paths, noise_config,
                              workers=config["workers"])
    ordered = sorted(rows, key=lambda r: r["kappa"])
    rise = max([0.0] + [b["p_hat"] - a["p_hat"] for a, b in zip(ordered[:-1], ordered[1:])])

    kappa0 = GLUE_KAPPA_FACTOR * initial.u.norm()
    jumps = [0.0]
    same = True
    for run_id in range(GLUE_RUNS):
        first = escalate_and_glue(initial, kappa0, model, model.steps, noise_config,
                                  run_id=run_id, max_escalations=config["max_escalations"],
                                  escalation=config["escalation"])
        again = escalate_and_glue(initial, kappa0, model, model.steps, noise_config,
                                  run_id=run_id, max_escalations=config["max_escalations"],
                                  escalation=config["escalation"])
        jumps.extend(first.boundary_jumps())
        if first.summary() != again.summary():
            same = False
        elif not first.blown_up:
            a, b = first.glued(), again.glued()
            same = same and all(np.array_equal(getattr(a, n), getattr(b, n))
                                for n in ("n", "c", "u", "theta", "sup"))
    return [
        _check("exceedance_nonincreasing", rise, 0.0, is_nonincreasing(rows)),
        _check("glue_boundary_jump", max(jumps), JUMP_TOL),
        _check("glue_deterministic", 0 if same else 1, 0),
    ]


'''---------------Continuity and interpolation---------------'''


def _probe_sample(config, model, initial, sample):
    basis = model.basis
    fp = config.fixpoint_config()
    S = model.steps
    rng = _stream(config, STREAM_PROBE + sample)
    base = ScalarTrajectory.constant(initial.n, S, model.dt)
    ratios, inputs = [], []
    for k in range(PROBE_PAIRS):
        xi1 = base + ScalarTrajectory.constant(_random_field(rng, basis, 0.05), S, model.dt)
        xi2 = xi1 + ScalarTrajectory.constant(_random_field(rng, basis, 0.01), S, model.dt)
        noise = sample_path(config.noise_config(), S, model.dt,
                            PATHS_PROBE + sample * PROBE_PAIRS + k)
        ratios.append(lipschitz_probe(xi1, xi2, noise, model, fp, initial))
        inputs.append(xi1)
    radius = bounded_set_radius(inputs, fp.m_star, fp.r_star, model.params.q)
    IO.debug("continuity probe sample %d: radius of the input set %.4g" % (sample, radius))
    return max(ratios)


def _stability(a, b):
    top = max(abs(a), abs(b))
    return abs(a - b) / top if top > 0 else 0.0


def check_continuity(config):
    steps = min(config.steps, PROBE_STEPS)
    model = config.model().with_params(steps=steps)
    initial = config.initial_state()
    first = _probe_sample(config, model, initial, 0)
    second = _probe_sample(config, model, initial, 1)
    finite = math.isfinite(first) and math.isfinite(second)
    spread = _stability(first, second) if finite else math.inf
    return [_check("lipschitz_probe_stability", spread, STABILITY, finite and spread <= STABILITY)]


def _interpolation_sample(config, rng, steps, dt):
    basis = config.basis
    t = (np.arange(steps + 1) / float(steps))[:, None]
    samples = []
    for _ in range(INTERP_SAMPLES):
        f0 = _random_field(rng, basis, 0.3).coeffs
        f1 = _random_field(rng, basis, 0.3).coeffs
        samples.append(ScalarTrajectory(f0 + t * f1, dt, basis))
    fp = config.fixpoint_config()
    return interpolation_check(samples, fp.m_star, fp.s_star2, config["q"]).max_ratio


def check_interpolation(config):
    steps = min(config.steps, PROBE_STEPS)
    dt = config["dt"]
    rng = _stream(config, STREAM_INTERP)
    first = _interpolation_sample(config, rng, steps, dt)
    second = _interpolation_sample(config, rng, steps, dt)
    spread = _stability(first, second)
    return [_check("interpolation_constant_stability", spread, STABILITY)]


CHECK_GROUPS = [
    ("noise", check_noise),
    ("eigen", check_eigen),
    ("algebra", check_algebra),
    ("closed_form", check_closed_form),
    ("strong_order", check_strong_order),
    ("ou_variance", check_ou_variance),
    ("conservation", check_conservation),
    ("fixpoint", check_fixpoint),
    ("kappa", check_kappa),
    ("glue", check_glue),
    ("continuity", check_continuity),
    ("interpolation", check_interpolation),
]


def run_checks(config, groups=None):
    """
    Run the selected check groups (all by default) and collect their records.

    :param groups: optional list of group names
    :rtype: list
    """
    selected = [(name, fn) for name, fn in CHECK_GROUPS if groups is None or name in groups]
    checks = []
    for name, fn in selected:
        IO.info("verify: %s" % name)
        try:
            checks.extend(fn(config))
        except (ChemostokesError, FloatingPointError, ValueError) as e:
            IO.error("verify group %s failed: %s" % (name, e))
            record = _check(name, math.nan, math.nan, False)
            record["error"] = str(e)
            checks.append(record)
    return checks


def verify(config, groups=None):
    """
    Run the acceptance suite and write verify.json.

    :type config: RunConfig
    :return: 0 when every check passed, 1 otherwise
    :rtype: int
    """
    checks = run_checks(config, groups)
    failures = [c["name"] for c in checks if not c["passed"]]
    os.makedirs(config["out"], exist_ok=True)
    write_json(os.path.join(config["out"], "verify.json"),
               {"passed": not failures, "checks": checks, "failures": failures})
    for c in checks:
        IO.info("%-40s %s  value=%.4g threshold=%.4g"
                % (c["name"], "PASS" if c["passed"] else "FAIL", c["value"], c["threshold"]))
    if failures:
        IO.list(failures)
    return 0 if not failures else 1
