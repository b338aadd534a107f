"""Exact construction and verification of mock-Lie algebras, bialgebras and
solutions of the mock-Lie Yang-Baxter equation over the rationals."""

from .algebra import (MockLieAlgebra, adjoint_rep, from_anti_associative, multiply,
                      random_central_extension, validate_mock_lie)
from .bialgebra import (Cobracket, ManinTripleData, MatchedPairData, bicrossed_product,
                        check_cocycle_compatibility, check_manin_triple, check_matched_pair,
                        double, dual_product_from_cobracket, validate_bialgebra)
from .bundle import Bundle, dumps_bundle, load_bundle, make_bundle, parse_bundle
from .checks import AxiomReport, Violation
from .errors import MockLieError
from .linalg import apply_factorwise, invert_matrix, permute_tensor, qarray
from .prelie import (MockPreLieAlgebra, OOperator, check_O_operator,
                     compatible_prelie_from_invertible_O, prelie_from_O_operator,
                     prelie_from_symplectic, sub_adjacent, validate_mock_pre_lie)
from .representation import (BilinearForm, Representation, check_invariant_form,
                             check_symplectic_form, dual_representation,
                             equivalence_from_form, semidirect_product,
                             validate_representation)
from .report import Report
from .ybe import (RTensor, canonical_solution_from_prelie, check_coboundary_conditions,
                  check_ybe_operator_form, coboundary_cobracket, e_delta, lift_O_operator,
                  q_action, r_as_map, rota_baxter_correspondence, yb_bracket)

__all__ = [
    "adjoint_rep",
    "apply_factorwise",
    "AxiomReport",
    "bicrossed_product",
    "BilinearForm",
    "Bundle",
    "canonical_solution_from_prelie",
    "check_coboundary_conditions",
    "check_cocycle_compatibility",
    "check_invariant_form",
    "check_manin_triple",
    "check_matched_pair",
    "check_O_operator",
    "check_symplectic_form",
    "check_ybe_operator_form",
    "coboundary_cobracket",
    "Cobracket",
    "compatible_prelie_from_invertible_O",
    "double",
    "dual_product_from_cobracket",
    "dual_representation",
    "dumps_bundle",
    "e_delta",
    "equivalence_from_form",
    "from_anti_associative",
    "invert_matrix",
    "lift_O_operator",
    "load_bundle",
    "make_bundle",
    "ManinTripleData",
    "MatchedPairData",
    "MockLieAlgebra",
    "MockLieError",
    "MockPreLieAlgebra",
    "multiply",
    "OOperator",
    "parse_bundle",
    "permute_tensor",
    "prelie_from_O_operator",
    "prelie_from_symplectic",
    "q_action",
    "qarray",
    "r_as_map",
    "random_central_extension",
    "Report",
    "Representation",
    "rota_baxter_correspondence",
    "RTensor",
    "semidirect_product",
    "sub_adjacent",
    "validate_bialgebra",
    "validate_mock_lie",
    "validate_mock_pre_lie",
    "validate_representation",
    "Violation",
    "yb_bracket",
]

__version__ = "0.1.0"
