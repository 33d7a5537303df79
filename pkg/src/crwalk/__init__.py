"""Numerical toolkit for the two-speed (correlated random walk) transport
system on (-1/2, 1/2): the full eigenvalue spectrum from its transcendental
characteristic equations, closed-form eigenfunctions with oscillation counts,
an independent shooting/winding verifier, and an exact-transport time-domain
solver, all wired to a data-emitting CLI.
"""

__version__ = "0.1.0"

from .errors import (BoundaryTooClose, CFLViolation, ConvergenceFailure,
                     DegenerateWindow, GridTooCoarse, NoConvergence, ZeroState)
from .params import ModelParams
from .spectrum import (DOUBLE_ROOT_AT_S_ONE, CriticalS, DoubleRootAtSOne,
                       EigenPair, NuRoot, Parity, asymptotic_lambda,
                       asymptotic_nu, char_residual, critical_s, dominant,
                       lambda_from_nu, nu_root, nu_zero, parity_of,
                       spectrum_slice)
from .eigenfunctions import (EigenfunctionGrid, Normalization,
                             RotationSummary, dominant_positivity, evaluate,
                             indexed_eigenfunction, l2_norm, rotation_number,
                             simplicity_integral)
from .oracle import (ShootingResult, count_in_rectangle, default_steps,
                     refine_eigenvalue, shoot)
from .simulator import (DecayFit, SimulationResult, State, WashoutReport,
                        dominant_profile, fit_decay, initial_state,
                        profile_distance, simulate, state_norm, step,
                        telegraph_residual, washout_regularity)

__all__ = [
    "__version__",
    "ModelParams",
    "Parity", "parity_of", "NuRoot", "DoubleRootAtSOne",
    "DOUBLE_ROOT_AT_S_ONE", "EigenPair", "CriticalS", "char_residual",
    "critical_s", "nu_zero", "nu_root", "lambda_from_nu", "dominant",
    "spectrum_slice", "asymptotic_nu", "asymptotic_lambda",
    "Normalization", "EigenfunctionGrid", "RotationSummary", "l2_norm",
    "evaluate", "rotation_number", "dominant_positivity",
    "simplicity_integral", "indexed_eigenfunction",
    "ShootingResult", "default_steps", "shoot", "refine_eigenvalue",
    "count_in_rectangle",
    "State", "DecayFit", "SimulationResult", "WashoutReport", "state_norm",
    "step", "simulate", "fit_decay", "dominant_profile", "profile_distance",
    "telegraph_residual", "washout_regularity", "initial_state",
    "ConvergenceFailure", "NoConvergence", "BoundaryTooClose",
    "GridTooCoarse", "CFLViolation", "DegenerateWindow", "ZeroState",
]
