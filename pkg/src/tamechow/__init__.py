"""Exact relative zero-cycle class groups, tame symbols and reciprocity
checks over Q, quadratic fields and F_q(t).

The public surface re-exported here covers the supported fields, places
and moduli, the relative zero-cycle class group with its reciprocity
map, the tame-symbol calculus, the integer-lattice backend, and the
seeded acceptance battery.  Everything computes in exact arithmetic;
every randomized check is deterministic under an explicit seed.
"""

from .chow import (MooreReport, Modulus, RayClassGroup, check_relation_vanishes,
                   chrelfinite_check, cycle_class, make_modulus,
                   relation_member, relative_chow, sk1_moore_check,
                   support_integer)
from .errors import (DuplicatePlace, InfiniteCokernel, NarrowUnsupported,
                     NotAUnit, OutOfSupportedRange, PlaceInModulus,
                     RelationViolated, SupportMeetsModulus, TameChowError,
                     ZeroElement)
from .gfields import (FunctionField, QuadElt, QuadraticField, RatFunc,
                      RationalField, function_field, parse_quad,
                      parse_ratfunc, quadratic_field, rational_field)
from .lattice import (FinAbGroup, IntMatrix, cokernel_invariants,
                      cokernel_presentation, smith_normal_form)
from .places import (FinitePlace, InfinitePlace, QuadraticPlace, RationalPlace,
                     FunctionPlace, RealEmbedding, enumerate_places,
                     parse_place, places_over, principal_unit_level,
                     real_embeddings, residue, residue_field, residue_norm,
                     uniformizer, valuation, weak_approx)
from .quadratic import class_invariants, fundamental_unit, unit_generators
from .reciprocity import (FrobeniusElement, frobenius_class,
                          frobenius_order_check, rec, verify_rec_isomorphism)
from .selftest import CheckResult, run_all, run_criterion
from .symbols import (SteinbergSymbol, ZeroCycle, boundary_div, boundary_k2,
                      hilbert_product_check, hilbert_symbol_2, k2q_components,
                      symbol_support, tame_symbol, u_filtration_k2_class,
                      weil_product)

__version__ = "0.1.0"

__all__ = [
    "CheckResult", "DuplicatePlace", "FinAbGroup", "FinitePlace",
    "FrobeniusElement", "FunctionField", "FunctionPlace", "InfiniteCokernel",
    "InfinitePlace", "IntMatrix", "Modulus", "MooreReport",
    "NarrowUnsupported", "NotAUnit", "OutOfSupportedRange", "PlaceInModulus",
    "QuadElt", "QuadraticField", "QuadraticPlace", "RatFunc", "RationalField",
    "RationalPlace", "RayClassGroup", "RealEmbedding", "RelationViolated",
    "SteinbergSymbol", "SupportMeetsModulus", "TameChowError", "ZeroCycle",
    "ZeroElement", "boundary_div", "boundary_k2", "check_relation_vanishes",
    "chrelfinite_check", "class_invariants", "cokernel_invariants",
    "cokernel_presentation", "cycle_class", "enumerate_places",
    "frobenius_class", "frobenius_order_check", "function_field",
    "fundamental_unit", "hilbert_product_check", "hilbert_symbol_2",
    "k2q_components", "make_modulus", "parse_place", "parse_quad",
    "parse_ratfunc", "places_over", "principal_unit_level", "quadratic_field",
    "rational_field",
    "real_embeddings", "rec", "relation_member", "relative_chow", "residue",
    "residue_field", "residue_norm", "run_all", "run_criterion",
    "sk1_moore_check", "smith_normal_form", "support_integer",
    "symbol_support", "tame_symbol", "u_filtration_k2_class",
    "unit_generators", "uniformizer", "valuation", "verify_rec_isomorphism",
    "weak_approx", "weil_product",
]
