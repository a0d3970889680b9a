# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Energy functionals, the Lyapunov functional and the uniform-in-kappa check

:description:
    energy_report evaluates the p = 1 instance of every functional appearing in the
    a-priori estimate of the cut-off system: sup |u|^2, int |grad u|^2, sup |c|^2,
    int |c|^2_{H^1}, sup |n|^2_{H^-1} and int |n|^{q+1}_{L^{q+1}}, plus the mass series
    of n. Time integrals use the trapezoidal rule; spatial norms are exact coefficient
    sums except the L^{q+1} norm, which is a grid quadrature.

    uniform_kappa_check runs the coupled system for several cut-off levels and compares
    the Monte-Carlo Lyapunov values. kappa_verdict holds the decision rule on its own.

:see_also:
    ../linearized/solver.py -- trapezoid(), linearized_estimates()
    ./residuals.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import math

import numpy as np

from ..errors import BlowUpError, ConfigurationError
from ..linearized.solver import solve_coupled, trapezoid
from ..noise.wiener import sample_path
from ..utils.io import IO, write_csv
from ..utils.path_threading import run_paths

ENERGY_COLUMNS = ["path_id", "kappa", "sup_u2", "int_uV", "sup_c2", "int_cH1", "sup_nHm1",
                  "int_nq", "mass_drift"]

FUNCTIONALS = ("sup_u2", "int_uV", "sup_c2", "int_cH1", "sup_nHm1", "int_nq")

GROWTH_FACTOR = 1.25
SE_FACTOR = 3.0

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- CLASSES --#


class EnergyReport(object):
    """
    Energy functionals of one trajectory.

    mass: integral of n at every time step; mass_drift: max |mass(t) - mass(0)|.
    """
    def __init__(self, sup_u2, int_uV, sup_c2, int_cH1, sup_nHm1, int_nq, mass,
                 path_id=None, kappa=math.inf):
        self.sup_u2 = sup_u2
        self.int_uV = int_uV
        self.sup_c2 = sup_c2
        self.int_cH1 = int_cH1
        self.sup_nHm1 = sup_nHm1
        self.int_nq = int_nq
        self.mass = np.asarray(mass, dtype=float)
        self.path_id = path_id
        self.kappa = kappa

    @property
    def mass_drift(self):
        if self.mass.size == 0:
            return 0.0
        return float(np.max(np.abs(self.mass - self.mass[0])))

    def functionals(self):
        return [getattr(self, name) for name in FUNCTIONALS]

    def is_finite(self):
        return all(math.isfinite(v) and v >= 0 for v in self.functionals())

    def row(self):
        row = {name: float(getattr(self, name)) for name in FUNCTIONALS}
        row["path_id"] = -1 if self.path_id is None else int(self.path_id)
        row["kappa"] = float(self.kappa)
        row["mass_drift"] = self.mass_drift
        return row

    def __repr__(self):
        return "EnergyReport(%s)" % ", ".join("%s=%.4g" % (name, getattr(self, name))
                                             for name in FUNCTIONALS)

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def energy_report(traj, q):
    """
    Energy functionals of a complete trajectory.

    :type traj: Trajectory
    :param q: porous exponent, the n-integral is int |n|^{q+1}_{L^{q+1}} dt
    :rtype: EnergyReport
    """
    b = traj.basis
    lam = b.lam
    u2 = np.sum(traj.u ** 2, axis=(1, 2))
    grad_u = np.sum(lam * traj.u ** 2, axis=(1, 2))
    c2 = np.sum(traj.c ** 2, axis=1)
    c_h1 = np.sum((1.0 + lam) * traj.c ** 2, axis=1)
    n_hm1 = np.sum(traj.n ** 2 / (1.0 + lam), axis=1)
    cell = b.grid.area / b.grid.size
    n_q = cell * np.sum(np.abs(b.to_grid(traj.n)) ** (q + 1.0), axis=(1, 2))
    return EnergyReport(sup_u2=float(np.max(u2)),
                        int_uV=trapezoid(grad_u, traj.dt),
                        sup_c2=float(np.max(c2)),
                        int_cH1=trapezoid(c_h1, traj.dt),
                        sup_nHm1=float(np.max(n_hm1)),
                        int_nq=trapezoid(n_q, traj.dt),
                        mass=traj.n[:, 0] * b.L,
                        path_id=traj.path_id,
                        kappa=traj.kappa)


def lyapunov(reports, p=1.0, m_star=None, r_star=None):
    """
    Monte-Carlo mean of sum of the p-th powers of every functional.

    :param reports: EnergyReport per path
    :param p: moment order, within [1, 2 m*/r*] when m_star and r_star are given
    :return: (mean, standard error)
    :rtype: tuple
    """
    if p < 1:
        raise ConfigurationError("lyapunov moment p must be >= 1, got %r" % p, key="p")
    if m_star is not None and r_star is not None and p > 2.0 * m_star / r_star:
        raise ConfigurationError("lyapunov moment p=%g exceeds 2 m*/r* = %g"
                                 % (p, 2.0 * m_star / r_star), key="p")
    reports = list(reports)
    if not reports:
        raise ValueError("lyapunov needs at least one report")
    values = np.array([sum(v ** p for v in r.functionals()) for r in reports])
    mean = float(np.mean(values))
    if values.size == 1:
        return mean, 0.0
    return mean, float(np.std(values, ddof=1)) / math.sqrt(values.size)


def kappa_verdict(rows):
    """
    PASS iff max_kappa L <= 1.25 min_kappa L + 3 sqrt(se_max^2 + se_min^2); any
    blown-up kappa fails.

    :param rows: dicts with kappa, lyapunov, stderr and blown_up
    :rtype: dict
    """
    if len(rows) < 3:
        raise ConfigurationError("the uniform check needs at least 3 kappa values",
                                 key="kappa_list")
    broken = [r["kappa"] for r in rows if r.get("blown_up")]
    if broken:
        return {"passed": False, "offending_kappa": broken[0], "reason": "blow-up",
                "value": math.inf, "threshold": math.nan}
    hi = max(rows, key=lambda r: r["lyapunov"])
    lo = min(rows, key=lambda r: r["lyapunov"])
    threshold = (GROWTH_FACTOR * lo["lyapunov"]
                 + SE_FACTOR * math.hypot(hi["stderr"], lo["stderr"]))
    passed = hi["lyapunov"] <= threshold
    return {"passed": bool(passed),
            "offending_kappa": None if passed else hi["kappa"],
            "reason": "" if passed else "growth in kappa",
            "value": float(hi["lyapunov"]),
            "threshold": float(threshold)}


def _coupled_runner(model, initial, noise_config, steps):
    def run(kappa, path_id):
        noise = sample_path(noise_config, steps, model.dt, path_id)
        return solve_coupled(model, noise, kappa, initial, steps=steps)
    return run


def uniform_kappa_check(model, initial, kappa_list, paths, noise_config, p=1.0,
                        steps=None, workers=1, simulate=None):
    """
    Lyapunov values of the coupled run across cut-off levels.

    Every kappa uses the same path ids, so the table compares the same noise realizations.

    :param kappa_list: at least three cut-off levels
    :param paths: Monte-Carlo paths per level
    :param simulate: optional callable (kappa, path_id) -> Trajectory replacing the
        coupled solve
    :return: (verdict, rows, reports)
    :rtype: tuple
    """
    if len(kappa_list) < 3:
        raise ConfigurationError("the uniform check needs at least 3 kappa values",
                                 key="kappa_list")
    steps = model.steps if steps is None else int(steps)
    if simulate is None:
        simulate = _coupled_runner(model, initial, noise_config, steps)
    q = model.params.q
    rows, reports = [], []
    for kappa in kappa_list:
        try:
            batch = run_paths(lambda pid: energy_report(simulate(kappa, pid), q),
                              list(range(paths)), workers)
        except BlowUpError as e:
            IO.warning("uniform check: blow-up at kappa=%g (%s)" % (kappa, e))
            rows.append({"kappa": float(kappa), "lyapunov": math.inf, "stderr": math.nan,
                         "paths": int(paths), "blown_up": True})
            continue
        value, se = lyapunov(batch, p)
        rows.append({"kappa": float(kappa), "lyapunov": value, "stderr": se,
                     "paths": int(paths), "blown_up": False})
        reports.extend(batch)
        IO.info("kappa=%g: lyapunov %.5g +- %.2g" % (kappa, value, se))
    return kappa_verdict(rows), rows, reports


def write_energy_csv(reports, path):
    """EnergyReports as CSV, one row per path and kappa."""
    write_csv(path, ENERGY_COLUMNS, [r.row() for r in reports])
