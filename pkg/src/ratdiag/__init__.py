"""Certified diagonal asymptotics of multivariate rational generating functions.

Pipeline: parse G/H, solve the critical-point equations by certified homotopy
continuation, prove minimality of critical points, and evaluate the leading
asymptotic term of the r-diagonal coefficient sequence.  An exact power-series
oracle independently validates every asymptotic claim.
"""

from .asymptotics import (
    AsymptoticExpansion,
    AsymptoticsFailure,
    AsymptoticTerm,
    PhaseHessian,
    expansion,
    format_asymptotics,
    leading_term,
    phase_hessian,
)
from .certify import (
    CertificationFailure,
    CertifiedSolution,
    PrecisionCapError,
    certify_adaptive,
    krawczyk_certify,
    refine,
)
from .intervals import ComplexBox, IntervalError, RealInterval
from .minimal import (
    MinimalityResult,
    PointVerdict,
    approx_crit_heuristic,
    build_comb_extended,
    build_critical_system,
    build_general_systems,
    comb_extended_base,
    group_by_modulus,
    min_crits_comb,
    min_crits_general,
)
from .oracle import check_asymptotics, diagonal, series_coeffs
from .poly import (
    Direction,
    PolyError,
    RationalGF,
    SparsePoly,
    VarRoster,
    infer_roster,
    parse_poly,
    square_free_part,
)
from .polytope import (
    MixedVolumeError,
    mixed_volume,
    newton_polytope,
    system_mixed_volume,
)
from .solver import SolveOptions, SolveReport, solve_system, total_degree_start
from .systems import PolySystem

__version__ = "0.1.0"

__all__ = [
    "AsymptoticExpansion",
    "AsymptoticsFailure",
    "AsymptoticTerm",
    "CertificationFailure",
    "CertifiedSolution",
    "ComplexBox",
    "Direction",
    "IntervalError",
    "MinimalityResult",
    "MixedVolumeError",
    "PhaseHessian",
    "PointVerdict",
    "PolyError",
    "PolySystem",
    "PrecisionCapError",
    "RationalGF",
    "RealInterval",
    "SolveOptions",
    "SolveReport",
    "SparsePoly",
    "VarRoster",
    "approx_crit_heuristic",
    "build_comb_extended",
    "build_critical_system",
    "build_general_systems",
    "certify_adaptive",
    "check_asymptotics",
    "comb_extended_base",
    "diagonal",
    "expansion",
    "format_asymptotics",
    "group_by_modulus",
    "infer_roster",
    "krawczyk_certify",
    "leading_term",
    "min_crits_comb",
    "min_crits_general",
    "mixed_volume",
    "newton_polytope",
    "parse_poly",
    "phase_hessian",
    "refine",
    "series_coeffs",
    "solve_system",
    "square_free_part",
    "system_mixed_volume",
    "total_degree_start",
]
