"""Skeletal Ann-categories over finite rings: structures, cocycles and H^3."""
from .algebra import (Bimodule, FiniteRing, ValidationReport, Violation, cyclic_quotient_bimodule, make_bimodule,
                      make_cyclic_ring, make_product_ring, regular_bimodule, trivial_bimodule, validate_bimodule,
                      validate_ring)
from .cochains import (ARITY, AnnStructure, Cochain, CochainPair, Layout, MacLaneQuadruple, cochain_add,
                       cochain_neg, forced_zero_mask, free_support, layout_for, load_cochain, make_cochain,
                       random_cochain, search_space_size)
from .cohomology import (GroupPresentation, H3Data, Hom, class_of, classify, compute_h3, enumerate_structures,
                         find_witness, find_witness_bruteforce, kernel_image, quadruple_of, random_pair,
                         random_structure, sigma_of, solve_preimage, structure_kernel)
from .errors import (AmbientMismatchError, AnnCatError, BudgetExceededError, DomainError, FormatError,
                     InternalInconsistencyError, InvalidOrderError, InvalidStructureError, NormalizationError,
                     SizeRefusalError)
from .intlinalg import smith_normal_form
from .relations import (QUADRUPLE_CONDITIONS, STRUCTURE_RELATIONS, TYPOS, apply_structure_coboundary,
                        apply_structure_coboundary_printed, check_cocycle, check_structure, d2, sigma_printed,
                        structure_coboundary)
from .skeleton import (SkeletalMorphism, Skeleton, check_ann_functor, constraint_of, interchange_v, mor_compose,
                       mor_inverse, mor_prod, mor_sum, verify_axioms)

__version__ = "0.1.0"
