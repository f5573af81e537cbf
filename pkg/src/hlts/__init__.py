"""Exact verification of Hom-Lie triple systems, weighted O-operators, their
cohomology and deformations, and the bridge to Hom-Lie algebras."""

from .bridge import (HomLieAlgebra, HomPostLieAlgebra, LieAction, adjacent_hom_lie, check_hom_lie,
                     check_lie_action, check_lie_o_operator, check_post_lie, diagram_check,
                     lts_from_hom_lie, lts_operator_from_lie, post_lie_from_o,
                     post_lts_from_post_lie, theta_from_rho)
from .cohomology import (Cochain, ZeroCochain, coboundary, cochain_space_basis, cohomology_dims,
                         im_map, theta_A, transport_cochain)
from .deformation import (TruncatedDeformation, check_linear_deformation, check_linear_equivalence,
                          check_n_order, extend, obstruction)
from .exact import Matrix, Tensor, TruncPoly
from .lts import HomLts, check_hom_lts, check_lts_morphism, semidirect_product
from .ooperator import (WeightedOOperator, check_o_homomorphism, check_o_operator, descent_lts,
                        graph_is_subalgebra, n_from_o, nijenhuis_check, semidirect)
from .postlts import (HomPostLts, adjacent_lts, check_post_lts, identity_is_o_operator,
                      post_lts_from_o, r_action)
from .rep import Action, Representation, adjoint_action, check_action, check_representation
from .report import DimensionCapExceeded, InvalidInput, RegularityRequired, ViolationReport

__version__ = "0.1.0"

__all__ = [
    "Action",
    "Cochain",
    "DimensionCapExceeded",
    "HomLieAlgebra",
    "HomLts",
    "HomPostLieAlgebra",
    "HomPostLts",
    "InvalidInput",
    "LieAction",
    "Matrix",
    "RegularityRequired",
    "Representation",
    "Tensor",
    "TruncPoly",
    "TruncatedDeformation",
    "ViolationReport",
    "WeightedOOperator",
    "ZeroCochain",
    "adjacent_hom_lie",
    "adjacent_lts",
    "adjoint_action",
    "check_action",
    "check_hom_lie",
    "check_hom_lts",
    "check_lie_action",
    "check_lie_o_operator",
    "check_linear_deformation",
    "check_linear_equivalence",
    "check_lts_morphism",
    "check_n_order",
    "check_o_homomorphism",
    "check_o_operator",
    "check_post_lie",
    "check_post_lts",
    "check_representation",
    "coboundary",
    "cochain_space_basis",
    "cohomology_dims",
    "descent_lts",
    "diagram_check",
    "extend",
    "graph_is_subalgebra",
    "identity_is_o_operator",
    "im_map",
    "lts_from_hom_lie",
    "lts_operator_from_lie",
    "n_from_o",
    "nijenhuis_check",
    "obstruction",
    "post_lie_from_o",
    "post_lts_from_o",
    "post_lts_from_post_lie",
    "r_action",
    "semidirect",
    "semidirect_product",
    "theta_A",
    "theta_from_rho",
    "transport_cochain",
]
