# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Flat key = value run configuration

:description:
    A config file holds one ``key = value`` pair per line; ``#`` starts a comment and
    blank lines are ignored. Keys are the entries of conf.DEFAULTS and values are coerced
    to the type of their default. m_star, r_star and s_star2 follow q unless the file
    sets them.

    load_config validates everything the run will need (grid, model, fixed point
    exponents, run settings) and warns about noise intensities below their finiteness
    thresholds, which stay allowed for divergence experiments. RunConfig.echo writes the
    resolved config back in the same format, sorted by key; loading the echo reproduces
    the config.

:see_also:
    ../conf.py
    ./run.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import math
import os

from .. import conf
from ..errors import ConfigurationError
from ..fixedpoint.xnorm import FixpointConfig
from ..glue.segments import ESCALATIONS
from ..linearized.model import Model, ModelParams, initial_state
from ..noise.operators import thresholds
from ..noise.wiener import NoiseConfig
from ..spectral.basis import Grid, SpectralBasis
from ..utils.io import IO, warn_numerical

MODES = ("simulate", "fixpoint", "glue", "verify")

ECHO_NAME = "config.echo"

_TRUE = ("1", "true", "yes", "on")
_FALSE = ("0", "false", "no", "off")

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def coerce(key, text):
    """Convert the text of `key` to the type of its default."""
    if key not in conf.DEFAULTS:
        raise ConfigurationError("unknown config key %r" % key, key=key)
    default = conf.DEFAULTS[key]
    text = text.strip()
    try:
        if isinstance(default, bool):
            low = text.lower()
            if low in _TRUE:
                return True
            if low in _FALSE:
                return False
            raise ValueError("not a boolean")
        if isinstance(default, int):
            return int(text)
        if isinstance(default, float):
            return float(text)
    except ValueError:
        raise ConfigurationError("%s = %r: expected %s" % (key, text, type(default).__name__),
                                 key=key)
    return text


def format_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_lines(lines, source="<config>"):
    """Parse key = value lines into a dict of coerced values."""
    values = {}
    for number, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError("%s:%d: expected 'key = value', got %r"
                                     % (source, number, raw.rstrip()))
        key, text = line.split("=", 1)
        key = key.strip()
        if key in values:
            raise ConfigurationError("%s:%d: duplicate key %r" % (source, number, key),
                                     key=key)
        values[key] = coerce(key, text)
    return values


def parse_kappa_list(text):
    try:
        kappas = tuple(float(k) for k in str(text).split(",") if k.strip())
    except ValueError:
        raise ConfigurationError("kappa_list must be comma separated numbers, got %r"
                                 % text, key="kappa_list")
    if not kappas or any(not k > 0 for k in kappas):
        raise ConfigurationError("kappa_list needs positive entries, got %r" % text,
                                 key="kappa_list")
    return kappas


def load_config(path=None, overrides=None):
    """
    Read, complete and validate a run configuration.

    :param path: config file, None for pure defaults
    :param overrides: dict of already-typed values replacing file entries (CLI flags)
    :rtype: RunConfig
    :raises ConfigurationError: unknown key, malformed line or violated constraint
    """
    values = {}
    if path is not None:
        if not os.path.isfile(path):
            raise ConfigurationError("config file %s does not exist" % path)
        with open(path) as handle:
            values = parse_lines(handle, source=path)
    for key, value in (overrides or {}).items():
        if key not in conf.DEFAULTS:
            raise ConfigurationError("unknown config key %r" % key, key=key)
        values[key] = value
    return RunConfig(values).validate()

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- CLASSES --#


class RunConfig(object):
    """
    Resolved configuration of one run.

    values: every key of conf.DEFAULTS with its effective value; explicit: the keys the
    file or the command line set.
    """
    def __init__(self, explicit_values=None):
        explicit_values = dict(explicit_values or {})
        self.explicit = frozenset(explicit_values)
        values = dict(conf.DEFAULTS)
        values.update(explicit_values)
        q = float(values["q"])
        derived = {"m_star": int(math.ceil(2.0 * q + 2.0)), "r_star": q,
                   "s_star2": 2.0 / (q + 1.0)}
        for key in conf.Q_DERIVED_KEYS:
            if key not in self.explicit:
                values[key] = derived[key]
        self.values = values
        self.warnings = []
        self._basis = None

    def __getitem__(self, key):
        return self.values[key]

    '''---------------Derived settings---------------'''

    @property
    def steps(self):
        return int(round(self["T"] / self["dt"]))

    @property
    def kappa_list(self):
        return parse_kappa_list(self["kappa_list"])

    @property
    def grid(self):
        return Grid(int(self["nx"]), int(self["ny"]), float(self["side"]))

    @property
    def basis(self):
        if self._basis is None:
            self._basis = SpectralBasis(self.grid, int(self["K"]))
        return self._basis

    def model_params(self):
        theta = self["theta"]
        return ModelParams(
            r_n=self["r_n"], r_c=self["r_c"], r_u=self["r_u"], chi=self["chi"],
            zeta=self["zeta"], beta=self["beta"], q=self["q"], delta1=self["delta1"],
            delta2=self["delta2"], delta_n=self["delta_n"], delta_c=self["delta_c"],
            gamma1=self["gamma1"], gamma2=self["gamma2"], gamma3=self["gamma3"],
            dt=self["dt"], steps=self.steps,
            theta=None if str(theta).strip() == "" else float(theta),
            noise_scale=(self["noise_scale1"], self["noise_scale2"], self["noise_scale3"]),
            enforce_stability=self["enforce_stability"])

    def model(self):
        return Model(self.model_params(), self.basis)

    def noise_config(self):
        return NoiseConfig(gamma1=self["gamma1"], gamma2=self["gamma2"],
                           gamma3=self["gamma3"], K=int(self["K"]),
                           master_seed=int(self["master_seed"]))

    def fixpoint_config(self):
        return FixpointConfig(kappa=self["kappa"], m_star=int(self["m_star"]),
                              s_star2=self["s_star2"], r_star=self["r_star"],
                              tol=self["tol"], max_iter=int(self["max_iter"]),
                              haar_level=int(self["haar_level"]))

    def initial_state(self):
        return initial_state(self.basis, self["n0_mean"], self["n0_amp"], self["c0_amp"],
                             self["u0_amp"])

    '''---------------Validation and echo---------------'''

    def validate(self):
        """Check every constraint; returns self."""
        grid = self.grid.validate()
        if not 1 <= self["K"] <= grid.size:
            raise ConfigurationError("K must lie in [1, nx*ny=%d], got %r"
                                     % (grid.size, self["K"]), key="K")
        if not self["T"] > 0 or not self["dt"] > 0:
            raise ConfigurationError("T and dt must be positive", key="dt")
        if abs(self.steps * self["dt"] - self["T"]) > 1e-9 * self["T"]:
            raise ConfigurationError("T=%r is not a multiple of dt=%r"
                                     % (self["T"], self["dt"]), key="T")
        if str(self["theta"]).strip():
            try:
                float(self["theta"])
            except ValueError:
                raise ConfigurationError("theta must be empty or a number, got %r"
                                         % self["theta"], key="theta")
        params = self.model_params().validate()
        self.fixpoint_config().validate(params.q)
        if self["mode"] not in MODES:
            raise ConfigurationError("mode must be one of %s" % (MODES,), key="mode")
        if self["escalation"] not in ESCALATIONS:
            raise ConfigurationError("escalation must be one of %s" % (ESCALATIONS,),
                                     key="escalation")
        for key in ("paths", "workers", "checkpoint_every", "max_iter"):
            if self[key] < 1:
                raise ConfigurationError("%s must be >= 1" % key, key=key)
        if self["max_escalations"] < 0:
            raise ConfigurationError("max_escalations must be >= 0", key="max_escalations")
        if not self["kappa"] > 0:
            raise ConfigurationError("kappa must be positive", key="kappa")
        parse_kappa_list(self["kappa_list"])
        for name, bound in thresholds(2).items():
            if not self[name] > bound:
                message = ("%s = %g is below the finiteness threshold %g; the run is "
                           "permitted as a divergence experiment" % (name, self[name], bound))
                self.warnings.append(message)
                warn_numerical(message)
        return self

    def lines(self):
        return ["%s = %s" % (key, format_value(self.values[key]))
                for key in sorted(self.values)]

    def echo(self, directory):
        """Write the resolved config to directory/config.echo and return its path."""
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, ECHO_NAME)
        with open(path, "w") as handle:
            handle.write("\n".join(self.lines()) + "\n")
        IO.debug("config echoed to %s" % path)
        return path

    def __eq__(self, other):
        return isinstance(other, RunConfig) and self.values == other.values

    def __repr__(self):
        return "RunConfig(mode=%s, grid=%dx%d, K=%d, paths=%d)" % (
            self["mode"], self["nx"], self["ny"], self["K"], self["paths"])
