# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Command line entry point

:description:
    chemostokes <mode> --config <file> [--out <dir>] [--seed <u64>] [--paths N]
                       [--kappa k1,k2,...] [--workers N] [--quiet | --debug]

    Exit codes: 0 every check passed, 1 a check failed, 2 configuration error,
    3 numerical blow-up or stability violation. Configuration errors and blow-ups are
    also written to <out>/failure.json.

:applications:
    installed as the ``chemostokes`` console script

:see_also:
    ./run.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import argparse
import os
import sys

from .. import conf
from ..errors import BlowUpError, ConfigurationError, StabilityError
from ..utils.io import IO, write_json
from .config import MODES, load_config, parse_kappa_list
from .run import run

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def build_parser():
    parser = argparse.ArgumentParser(
        prog="chemostokes",
        description="Stochastic chemotaxis-Stokes porous-medium simulator and checks")
    parser.add_argument("mode", choices=MODES, help="what to run")
    parser.add_argument("--config", default=None, help="flat key = value config file")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--seed", type=int, default=None, help="master seed")
    parser.add_argument("--paths", type=int, default=None, help="number of noise paths")
    parser.add_argument("--kappa", default=None,
                        help="cut-off level, or comma separated list of levels")
    parser.add_argument("--workers", type=int, default=None, help="worker threads")
    parser.add_argument("--quiet", action="store_true", help="warnings and errors only")
    parser.add_argument("--debug", action="store_true", help="very verbose output")
    return parser


def overrides_from(args):
    """Config values set on the command line."""
    values = {"mode": args.mode}
    if args.out is not None:
        values["out"] = args.out
    if args.seed is not None:
        values["master_seed"] = args.seed
    if args.paths is not None:
        values["paths"] = args.paths
    if args.workers is not None:
        values["workers"] = args.workers
    if args.kappa is not None:
        kappas = parse_kappa_list(args.kappa)
        values["kappa_list"] = ",".join(repr(k) for k in kappas)
        values["kappa"] = kappas[0]
    return values


def _report_failure(out, kind, error):
    if not out:
        return
    try:
        os.makedirs(out, exist_ok=True)
        write_json(os.path.join(out, "failure.json"),
                   {"kind": kind, "message": str(error),
                    "key": getattr(error, "key", None),
                    "step": getattr(error, "step", None),
                    "equation": getattr(error, "equation", None)})
    except OSError as e:
        IO.error("could not write failure.json: %s" % e)


def main(argv=None):
    """
    Parse the command line, run the mode and return its exit code.

    :param argv: argument list, sys.argv[1:] by default
    :rtype: int
    """
    args = build_parser().parse_args(argv)
    conf.v = not args.quiet
    conf.vv = bool(args.debug) and not args.quiet
    out = args.out
    try:
        config = load_config(args.config, overrides_from(args))
        out = config["out"]
        return run(args.mode, config)
    except ConfigurationError as e:
        IO.error("configuration error: %s" % e)
        _report_failure(out, "configuration", e)
        return EXIT_CONFIG
    except (BlowUpError, StabilityError) as e:
        IO.error("numerical failure: %s" % e)
        _report_failure(out, "numerical", e)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
