"""Positivity-preserving discontinuous Galerkin solver for 2D ideal MHD."""

from ._core import (
    Error,
    PositivityError,
    Simulation,
    conserved_from_primitive,
    convergence_rates,
    is_admissible,
    pp_viscosity_alpha,
    pressure_probe,
    primitive_from_conserved,
    problem_ids,
    run,
    schlieren,
    theory_check,
)

__all__ = [
    "Error",
    "PositivityError",
    "Simulation",
    "conserved_from_primitive",
    "convergence_rates",
    "is_admissible",
    "pp_viscosity_alpha",
    "pressure_probe",
    "primitive_from_conserved",
    "problem_ids",
    "run",
    "schlieren",
    "theory_check",
]
