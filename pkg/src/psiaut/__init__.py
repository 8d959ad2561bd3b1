"""Automorphisms of psi * H-infinity: decisions, group enumeration and numeric oracles."""

from .decision import check_conjugation_transfer, decide, decide_derivative_algebra
from .groups import FamilyDescriptor, GroupDescriptor, enumerate_group, group_closure_check, sample_family
from .moebius import (DiscAutomorphism, MoebiusClass, classify, compose, derivative, evaluate, identity,
                      inverse, parabolic, pseudo_hyperbolic, rotation, solve_boundary_triple,
                      solve_interior_boundary, solve_interior_pair, tau)
from .numerics import (ContourSpec, RatioReport, count_zeros, count_zeros_composed, find_parameter_roots,
                       ratio_bounds)
from .psi_model import (BoundaryRoot, InteriorZero, PsiSpec, SingularAtom, Verdict, conjugate_spec, eval_psi,
                        log_derivative, make_spec, validate)

__all__ = [
    "BoundaryRoot", "ContourSpec", "DiscAutomorphism", "FamilyDescriptor", "GroupDescriptor", "InteriorZero",
    "MoebiusClass", "PsiSpec", "RatioReport", "SingularAtom", "Verdict", "check_conjugation_transfer", "classify",
    "compose", "conjugate_spec", "count_zeros", "count_zeros_composed", "decide", "decide_derivative_algebra",
    "derivative", "enumerate_group", "eval_psi", "evaluate", "find_parameter_roots", "group_closure_check",
    "identity", "inverse", "log_derivative", "make_spec", "parabolic", "pseudo_hyperbolic", "ratio_bounds",
    "rotation", "sample_family", "solve_boundary_triple", "solve_interior_boundary", "solve_interior_pair", "tau",
    "validate",
]

__version__ = "0.1.0"
