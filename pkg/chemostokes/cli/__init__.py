"""Configuration, run modes, acceptance suite and the command line entry point."""
from .config import RunConfig, load_config, parse_lines, MODES
from .run import run, simulate, fixpoint, glue
from .verify import verify, run_checks, CHECK_GROUPS
from .main import main
