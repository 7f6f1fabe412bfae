"""Exact invariants of moment-angle manifolds built from simplicial fans and polytopes.

Typical use::

    from momentangle import Fan, run_hodge
    fan = Fan.from_data(1, [[0], [1], [-1]], [[1], [2]])
    run_hodge(fan).hodge.nonzero()
"""

from .complex_structure import (chern_matrix, cox_group_structure, default_psi, kernel_basis,
                                relation_matrix, validate_partial_quotient, validate_psi)
from .dolbeault import (BettiTable, DolbeaultModel, HodgeTable, build_dolbeault_model,
                        check_hodge_bounds, de_rham_betti, frolicher_euler_check, hodge_numbers)
from .errors import MomentAngleError
from .fan import Fan, SimplicialComplex, f_h_vectors, minimal_non_faces, validate_fan
from .linalg import Gaussian
from .pipeline import run_hodge
from .polytope import (PolytopePresentation, gamma_matrix, genericity_check, normal_fan,
                       normalize_to_link, transversality_check)
from .ring import GradedRing, face_ring_quotient

__all__ = [
    "BettiTable", "DolbeaultModel", "Fan", "Gaussian", "GradedRing", "HodgeTable",
    "MomentAngleError", "PolytopePresentation", "SimplicialComplex", "build_dolbeault_model",
    "check_hodge_bounds", "chern_matrix", "cox_group_structure", "de_rham_betti", "default_psi",
    "f_h_vectors", "face_ring_quotient", "frolicher_euler_check", "gamma_matrix",
    "genericity_check", "hodge_numbers", "kernel_basis", "minimal_non_faces", "normal_fan",
    "normalize_to_link", "relation_matrix", "run_hodge", "transversality_check",
    "validate_fan", "validate_partial_quotient", "validate_psi",
]
