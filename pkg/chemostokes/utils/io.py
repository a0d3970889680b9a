# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Output of printed information and guards around numerical kernels

:description:
    IO is the single outlet for diagnostics. It keeps the classmethod interface
    (info/debug/warning/error/block/list/dict) and routes everything through the
    ``chemostokes`` logger, gated by the ``conf.v`` and ``conf.vv`` verbosity flags.

    catch_numerical_error wraps a time-step kernel so floating point trouble surfaces as
    a BlowUpError naming the equation.

:see_also:
    ../conf.py
    ../errors.py

:license:
    see LICENSE.md

"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import csv
import functools
import json
import logging
import warnings

import numpy as np

from .. import conf
from ..errors import BlowUpError, NumericalWarning

logger = logging.getLogger("chemostokes")
if not logger.handlers:
    _handler = logging.StreamHandler()
    _handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(_handler)
    logger.setLevel(logging.DEBUG)
    logger.propagate = False

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def catch_numerical_error(equation):
    """
    Run a step kernel with numpy overflow/invalid trapping and check its output.

    :param equation: name of the equation the kernel advances ('n', 'c' or 'u')
    :type equation: str
    :return: decorator
    :rtype: function
    """
    def decorator(func):
        @functools.wraps(func)
        def decorated_function(*args, **kwargs):
            """Run the decorated kernel and convert raised errors"""
            try:
                with np.errstate(over="raise", invalid="raise"):
                    result = func(*args, **kwargs)
            except FloatingPointError as e:
                raise BlowUpError("floating point failure in %s-equation: %s"
                                  % (equation, e), equation=equation) from e
            coeffs = getattr(result, "coeffs", None)
            if coeffs is None:
                coeffs = getattr(result, "array", result)
            if not np.all(np.isfinite(coeffs)):
                raise BlowUpError("non-finite values in %s-equation" % equation,
                                  equation=equation)
            return result
        return decorated_function
    return decorator


def warn_numerical(message):
    """Log a warning and raise it as a NumericalWarning so callers can filter it."""
    IO.warning(message)
    warnings.warn(message, NumericalWarning, stacklevel=3)


def write_csv(path, fieldnames, rows):
    """
    Write dict rows with a fixed column order; floats keep their repr so reruns
    produce identical bytes.
    """
    with open(path, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=fieldnames, extrasaction="ignore",
                                lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def write_json(path, obj):
    """Sorted-key, indented JSON with a trailing newline."""
    with open(path, "w") as handle:
        handle.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def print_dict(rand_dict, indent=0):
    """
    Prints a dictionary in a 'pretty' manner.

    :param rand_dict: A dictionary with items in it.
    :type: dict

    :param indent: How much to indent when printing the dictionary.
    :type: int
    """
    for key, value in sorted(rand_dict.items()):
        IO.block('  ' * indent + str(key))
        if isinstance(value, dict):
            print_dict(value, indent + 2)
        else:
            IO.block('  ' * (indent + 2) + str(value))

#----------------------------------------------------------------------------------------#
#----------------------------------------------------------------------------- CLASSES --#


class IO(object):
    """
    This class handles the outputting of printed information.
    """
    @classmethod
    def warning(cls, message):
        """
        Logs a message with the warning label attached. Always emitted.

        :param message: The message to output.
        :type: str
        """
        logger.warning("  WARNING: %s", message)

    @classmethod
    def info(cls, message):
        """
        Logs a message when verbose printing is enabled.

        :param message: The message to output.
        :type: str
        """
        if conf.v:
            logger.info("  %s", message)

    @classmethod
    def debug(cls, message):
        """
        Logs a message with the debug label attached, very verbose mode only.

        :param message: The message to output.
        :type: str
        """
        if conf.vv:
            logger.debug("  DEBUG: %s", message)

    @classmethod
    def error(cls, message):
        """
        Logs a message with the error label attached. Always emitted.

        :param message: The message to output.
        :type: str
        """
        logger.error("  ERROR: %s", message)

    @classmethod
    def block(cls, message):
        """
        Logs one line of a block of text.

        :param message: The message to output.
        :type: str
        """
        if conf.v:
            logger.info("  %s", message)

    @classmethod
    def list(cls, input_list):
        """
        Logs a list in a readable manner.

        :param input_list: The list to print.
        :type: list
        """
        cls.block("LIST CONTENTS:")
        for item in input_list:
            cls.block("  %s" % item)

    @classmethod
    def dict(cls, input_dict):
        """
        Logs a dictionary in a readable manner.

        :param input_dict: The dictionary to print.
        :type: dict
        """
        cls.block("DICTIONARY CONTENTS:")
        print_dict(input_dict)
