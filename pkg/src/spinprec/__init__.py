"""Spin precession of a neutral Dirac particle in a uniform magnetic field.

Quantum engine (stationary spin states, superposition dynamics, spin
invariant) plus an independent classical BMT comparator and reporting
tools that measure their agreement.
"""

from .kinematics import (
    FieldCoupling,
    Kinematics,
    SRScales,
    StrongCouplingWarning,
    energy_level,
    make_coupling,
    make_kinematics,
    motion_axis,
    precession_frequency,
    sr_scales,
)
from .spinors import (
    MatrixElements,
    closed_form_matrix_elements,
    matrix_element,
    pi_component_matrix,
    spin_axis,
    spin_coefficients,
)
from .superposition import (
    DegenerateOrientationError,
    PolarizationHistory,
    SpinSuperposition,
    doublet_matrix,
    evolve_expectations,
    evolve_expectations_spinor,
    initial_amplitudes_closed,
    initial_amplitudes_general,
    longitudinal_polarization,
    spin_invariant,
)
from .bmt import (
    PrecessionTrajectory,
    PrecessionVector,
    integrate,
    map_pi_to_rest,
    map_rest_to_pi,
    omega_vector,
    rotate_exact,
    trajectory_exact,
)
from .compare import (
    ComparisonReport,
    Tolerances,
    compare,
    extract_frequency,
    format_report,
    period_grid,
    run_comparison,
)

__version__ = "0.1.0"

__all__ = [
    "ComparisonReport",
    "DegenerateOrientationError",
    "FieldCoupling",
    "Kinematics",
    "MatrixElements",
    "PolarizationHistory",
    "PrecessionTrajectory",
    "PrecessionVector",
    "SRScales",
    "SpinSuperposition",
    "StrongCouplingWarning",
    "Tolerances",
    "closed_form_matrix_elements",
    "compare",
    "doublet_matrix",
    "energy_level",
    "evolve_expectations",
    "evolve_expectations_spinor",
    "extract_frequency",
    "format_report",
    "initial_amplitudes_closed",
    "initial_amplitudes_general",
    "integrate",
    "longitudinal_polarization",
    "make_coupling",
    "make_kinematics",
    "map_pi_to_rest",
    "map_rest_to_pi",
    "matrix_element",
    "motion_axis",
    "omega_vector",
    "period_grid",
    "pi_component_matrix",
    "precession_frequency",
    "rotate_exact",
    "run_comparison",
    "spin_axis",
    "spin_coefficients",
    "spin_invariant",
    "sr_scales",
    "trajectory_exact",
]
