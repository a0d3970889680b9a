# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Experiment orchestration of the simulate, fixpoint and glue modes

:description:
    Each mode builds the basis, model and initial state from a RunConfig, dispatches the
    independent noise paths to the worker pool and writes its artifacts into the output
    directory:

        simulate   trajectory.csv, energy.csv, residuals.csv, snapshots, plot.gp
        fixpoint   residuals.csv (Picard histories), fixpoint.json
        glue       glue.json, exceedance.csv

    Path results are merged in path-id order, so the bytes written do not depend on the
    number of workers.

:see_also:
    ./config.py
    ./verify.py
    ./main.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import os

from ..fixedpoint.picard import RESIDUAL_COLUMNS, picard
from ..glue.exceedance import EXCEEDANCE_COLUMNS, MIN_PATHS, exceedance_prob
from ..glue.segments import escalate_and_glue
from ..linearized.model import ScalarTrajectory
from ..linearized.solver import solve_coupled
from ..monitors.energy import energy_report, write_energy_csv
from ..monitors.residuals import RESIDUAL_DEFN_COLUMNS, residual_defn
from ..noise.operators import threshold_report
from ..noise.wiener import sample_path
from ..spectral.fields import sobolev_norm
from ..spectral.snapshot import write_state_snapshots
from ..utils.io import IO, write_csv, write_json
from ..utils.path_threading import run_paths
from .verify import verify

TRAJECTORY_COLUMNS = ["path_id", "step", "t", "u_L2", "c_L2", "n_Hm1", "mass_n", "theta",
                      "sup"]

PLOT_SCRIPT = """\
# gnuplot script written by chemostokes
set datafile separator ","
set key autotitle columnhead
set xlabel "t"
set terminal pngcairo size 900,600
set output "trajectory.png"
set multiplot layout 2,2
set ylabel "|u|_L2"
plot "trajectory.csv" using 3:4 with points pt 7 ps 0.4
set ylabel "|c|_L2"
plot "trajectory.csv" using 3:5 with points pt 7 ps 0.4
set ylabel "|n|_H-1"
plot "trajectory.csv" using 3:6 with points pt 7 ps 0.4
set ylabel "mass of n"
plot "trajectory.csv" using 3:7 with points pt 7 ps 0.4
unset multiplot
"""

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def output_path(config, name):
    directory = config["out"]
    os.makedirs(directory, exist_ok=True)
    return os.path.join(directory, name)


def checkpoint_steps(steps, every):
    """Steps 0, every, 2 every, ... and always the last one."""
    marks = list(range(0, steps + 1, every))
    if marks[-1] != steps:
        marks.append(steps)
    return marks


def trajectory_rows(traj, every):
    rows = []
    for i in checkpoint_steps(traj.steps, every):
        state = traj.state(i)
        rows.append({
            "path_id": int(traj.path_id),
            "step": i,
            "t": float(traj.times[i]),
            "u_L2": state.u.norm(),
            "c_L2": state.c.norm(),
            "n_Hm1": sobolev_norm(state.n, -1),
            "mass_n": state.n.mean(),
            "theta": float(traj.theta[i]),
            "sup": float(traj.sup[i]),
        })
    return rows


def _setup(config):
    model = config.model()
    initial = config.initial_state()
    noise_config = config.noise_config()
    IO.block("noise thresholds:")
    IO.dict(threshold_report(noise_config, config.basis.eigen))
    return model, initial, noise_config


def simulate(config):
    """
    Coupled runs with cut-off level `kappa`, one per path.

    :type config: RunConfig
    :return: exit code
    """
    model, initial, noise_config = _setup(config)
    steps = config.steps
    kappa = config["kappa"]
    every = config["checkpoint_every"]

    def one_path(pid):
        noise = sample_path(noise_config, steps, model.dt, pid)
        traj = solve_coupled(model, noise, kappa, initial, steps=steps)
        residual = residual_defn(traj, noise, model)
        return (trajectory_rows(traj, every), energy_report(traj, model.params.q),
                residual, traj.final_state if pid == 0 else None)

    results = run_paths(one_path, range(config["paths"]), config["workers"])

    rows = [row for r in results for row in r[0]]
    rows.sort(key=lambda row: (row["step"], row["path_id"]))
    write_csv(output_path(config, "trajectory.csv"), TRAJECTORY_COLUMNS, rows)
    write_energy_csv([r[1] for r in results], output_path(config, "energy.csv"))

    residual_rows = []
    for pid, r in enumerate(results):
        for row in r[2].rows():
            row["path_id"] = pid
            residual_rows.append(row)
    write_csv(output_path(config, "residuals.csv"), ["path_id"] + RESIDUAL_DEFN_COLUMNS,
              residual_rows)
    write_state_snapshots(results[0][3], config["out"], "final")
    with open(output_path(config, "plot.gp"), "w") as handle:
        handle.write(PLOT_SCRIPT)

    worst = max(r[2].max for r in results)
    IO.info("simulate: %d paths, %d steps, max integral-equation residual %.3g"
            % (config["paths"], steps, worst))
    return 0


def fixpoint(config):
    """
    Picard iteration to the pathwise fixed point, one per path, started from the
    constant-in-time initial density.

    :return: exit code
    """
    model, initial, noise_config = _setup(config)
    fp = config.fixpoint_config()
    steps = config.steps
    xi0 = ScalarTrajectory.constant(initial.n, steps, model.dt)

    def one_path(pid):
        noise = sample_path(noise_config, steps, model.dt, pid)
        return picard(xi0, noise, model, fp, initial)

    results = run_paths(one_path, range(config["paths"]), config["workers"])
    rows = []
    for pid, res in enumerate(results):
        for j, r, x in res.history:
            rows.append({"path_id": pid, "iter": j, "residual": float(r), "x_norm": float(x)})
    write_csv(output_path(config, "residuals.csv"), ["path_id"] + RESIDUAL_COLUMNS, rows)

    converged = sum(1 for res in results if res.converged)
    write_json(output_path(config, "fixpoint.json"), {
        "paths": len(results),
        "converged": converged,
        "tol": fp.tol,
        "max_iter": fp.max_iter,
        "per_path": [{"path_id": pid, "converged": bool(res.converged),
                      "iterations": res.iterations,
                      "final_residual": float(res.residuals[-1])}
                     for pid, res in enumerate(results)],
    })
    IO.info("fixpoint: %d of %d paths converged" % (converged, len(results)))
    return 0


def glue(config):
    """
    Glued runs with escalating cut-off levels and the exceedance table.

    :return: exit code
    """
    model, initial, noise_config = _setup(config)
    steps = config.steps

    def one_run(run_id):
        return escalate_and_glue(initial, config["kappa"], model, steps, noise_config,
                                 run_id=run_id, max_escalations=config["max_escalations"],
                                 escalation=config["escalation"])

    runs = run_paths(one_run, range(config["paths"]), config["workers"])
    write_json(output_path(config, "glue.json"), {
        "kappa0": float(config["kappa"]),
        "escalation": config["escalation"],
        "runs": [dict(run.summary(), run_id=i) for i, run in enumerate(runs)],
    })

    if config["paths"] >= MIN_PATHS:
        rows, _ = exceedance_prob(model, initial, config.kappa_list, config["paths"],
                                  noise_config, steps=steps, workers=config["workers"])
        write_csv(output_path(config, "exceedance.csv"), EXCEEDANCE_COLUMNS, rows)
    else:
        IO.warning("exceedance table skipped: %d paths, at least %d needed"
                   % (config["paths"], MIN_PATHS))
    completed = sum(1 for run in runs if run.completed)
    IO.info("glue: %d of %d runs reached T" % (completed, len(runs)))
    return 0


def run(mode, config):
    """
    Run one mode and write its artifacts; the config is echoed first.

    :param mode: simulate, fixpoint, glue or verify
    :type config: RunConfig
    :return: exit code, 0 when every declared check passed
    :rtype: int
    """
    modes = {"simulate": simulate, "fixpoint": fixpoint, "glue": glue, "verify": verify}
    if mode not in modes:
        raise ValueError("unknown mode %r" % mode)
    config.echo(config["out"])
    IO.info("chemostokes %s -> %s" % (mode, config["out"]))
    return modes[mode](config)
