"""Explicit limit cycles of ``x' = P_n + x R_m, y' = Q_n + y R_m``.

The package computes the unique limit cycle of such systems through the
closed-form solution of the associated linear orbit equation, checks it
against direct integration, and decides with exact algebra which
invariant algebraic curves the system can have.
"""

from .cycle import CycleResult, Existence, compute_cycle, log_multiplier, psi
from .darboux import (
    InvariantCurve,
    check_top_cofactor,
    cofactor_of,
    divergence_identity,
    origin_lines_curve,
    rotation_family_curves,
    symmetry_partner,
)
from .detector import (
    LineSolution,
    build_template,
    conclude,
    detect,
    extract_constraints,
    integrate_rational,
    line_family_constraints,
    line_reduce,
)
from .ode import ode_crosscheck
from .quadrature import QuadratureConfig
from .systems import algebraic_quintic, filiptsov_curve, filiptsov_field, nonalgebraic_quintic
from .trig import SystemSpec, VectorField, g_nonvanishing, to_polar

__version__ = "0.1.0"

__all__ = [
    "CycleResult",
    "Existence",
    "InvariantCurve",
    "LineSolution",
    "QuadratureConfig",
    "SystemSpec",
    "VectorField",
    "algebraic_quintic",
    "build_template",
    "check_top_cofactor",
    "cofactor_of",
    "compute_cycle",
    "conclude",
    "detect",
    "divergence_identity",
    "extract_constraints",
    "filiptsov_curve",
    "filiptsov_field",
    "g_nonvanishing",
    "integrate_rational",
    "line_family_constraints",
    "line_reduce",
    "log_multiplier",
    "nonalgebraic_quintic",
    "ode_crosscheck",
    "origin_lines_curve",
    "psi",
    "rotation_family_curves",
    "symmetry_partner",
    "to_polar",
]
