"""语义层统一入口：Kripke 模型、过滤、有限代数、JSON 与 DOT"""

from .kripke import (
    DEFAULT_FRAME_BUDGET, FrameReport, KripkeFrame, KripkeModel, check_frame, close_frame, close_r,
    extension, extension_mask, failing_world, gc_rule_holds, monotonicity_holds, necessitation_holds,
    satisfies, valid_in_frame, valid_in_model, world_names,
)
from .filtration import (
    Filtration, FiltrationReport, build_filtration, is_isomorphic_quotient, rf_pair_basis,
    rf_pair_basis_alt, signature, verify_filtration,
)
from .algebra import (
    DEFAULT_ALGEBRA_BUDGET, AlgebraReport, FiniteDistLattice, GCAlgebra, check_gc_operators,
    complex_algebra, eval_formula, failing_assignment, lattice_from_order, valid_in_algebra,
)
from .io import (
    AlgebraDocument, ModelDocument, load_algebra, load_model, model_from_document, model_to_dict,
    parse_algebra_document, parse_model_document,
)
from .dot import to_dot
