"""Exponential Euler-Maruyama steps of the split system and the linearized solve."""
from .model import (ModelParams, Model, SystemState, ScalarTrajectory, Trajectory,
                    initial_state, exponential_factors)
from .stepper import step_u, step_c, step_n, stability_dt, porous_flux
from .solver import (solve_linearized, solve_coupled, linearized_estimates, trapezoid,
                     check_stability)
