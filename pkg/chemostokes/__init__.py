# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Spectral-Galerkin simulator and verification harness for the stochastic
    chemotaxis-Stokes system with porous-medium diffusion.

:description:
    The package splits the coupled system into a linearized operator acting on a frozen
    density input, solves it with an exponential Euler-Maruyama scheme on the periodic
    torus, iterates it to a pathwise fixed point, glues cut-off local solutions at their
    stopping times and checks energy bounds, noise thresholds and integral identities.

:applications:
    chemostokes command line tool (see cli/main.py)

:license:
    see LICENSE.md
"""

package_info = {
    "name": "chemostokes",
    "version": (1, 0, 0),
    "description": "Stochastic chemotaxis-Stokes porous-medium simulator",
    "entry_point": "chemostokes.cli.main:main",
}

__version__ = ".".join(str(x) for x in package_info["version"])
