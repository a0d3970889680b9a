# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Installation of the chemostokes package and its console script

:license:
    see LICENSE.md
"""

# ---------------------------------------------------------------------------------------#
# ---------------------------------------------------------------------------- IMPORTS --#
import os

from setuptools import find_packages, setup

# ---------------------------------------------------------------------------------------#
# -------------------------------------------------------------------------- FUNCTIONS --#


def read_requirements():
    path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "requirements.txt")
    with open(path) as handle:
        return [line.strip() for line in handle if line.strip() and not line.startswith("#")]


setup(
    name="chemostokes",
    version="1.0.0",
    description="Stochastic chemotaxis-Stokes porous-medium simulator",
    packages=find_packages(include=["chemostokes", "chemostokes.*"]),
    install_requires=read_requirements(),
    python_requires=">=3.8",
    entry_points={"console_scripts": ["chemostokes=chemostokes.cli.main:main"]},
    test_suite="test",
)
