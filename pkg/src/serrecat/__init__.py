"""Exact homological algebra for finite modules, Serre quotients and bounded dimension checks."""

from .errors import (BaseMismatch, BudgetExceeded, DimMismatch, FieldMismatch, InputNotExactInQuotient,
                     InvalidFactors, LiftingPropertyUnverified, NoWitness, NotAnAction, NotEllPrimary,
                     NotWellDefined, ParseError, SearchExhausted, SerrecatError, Unsolvable, ValidationError)
from .linalg import (Lattice, QuotientGroup, SmithDecomposition, cokernel_invariants, kernel_mod,
                     smith_normal_form, solve_integer, solve_modular)
from .fields import FiniteField, FiniteFieldMatrix, finite_field, parse_field
from .groups import FiniteGroup, cyclic_group, direct_product, group_from_name, symmetric_group, trivial_group
from .rings import BaseRing, a2_over, a2_path_algebra, field_ring, group_ring, integers
from .modules import (HomGroup, Module, Morphism, canonicalize, cokernel, direct_sum, hom_group, identity_morphism,
                      image, is_isomorphic, kernel, make_finab, make_gamma_module, make_module, make_quiver_rep,
                      morphism, projective_rep_p1, quotient, simple_rep, submodule, subquotient,
                      trivial_gamma_module, vertex_space, zero_module)
from .resolution import ExtGroup, FreeResolution, ext_group, free_resolution
from .serre import (LiftedComplex, LiftingWitness, LocalizedGroup, QHomGroup, QMorphism, SerrePredicate,
                    TorsionPairResult, check_lifting_property, custom, etale_like, largest_subobject,
                    lift_exact_complex, localized_ext, localized_hom, parse_predicate, q_equal, q_hom,
                    q_is_epi, q_is_iso, q_is_mono, q_is_zero, quotient_ext_order, s_torsion, span,
                    torsion_pair)
from .gammacoh import (CohomologyGroup, cd_ell_probe, coinduced, ell_dual, group_cohomology,
                       hd_gamma_mod_probe, regular_module)
from .dieudonne import (TwistedPoly, VModule, coker_F, coker_F_minus_id, ext_D_against_Ga,
                        injectivity_probe_F_pushforward, section_phi, twisted_mul)
from .hdlab import HdReport, hd_bounded, verify_hdmax_inequality, verify_quiver_example, verify_thm_hd

__version__ = "0.1.0"

__all__ = [
    "BaseMismatch",
    "BaseRing",
    "BudgetExceeded",
    "CohomologyGroup",
    "DimMismatch",
    "ExtGroup",
    "FieldMismatch",
    "FiniteField",
    "FiniteFieldMatrix",
    "FiniteGroup",
    "FreeResolution",
    "HdReport",
    "HomGroup",
    "InputNotExactInQuotient",
    "InvalidFactors",
    "Lattice",
    "LiftedComplex",
    "LiftingPropertyUnverified",
    "LiftingWitness",
    "LocalizedGroup",
    "Module",
    "Morphism",
    "NoWitness",
    "NotAnAction",
    "NotEllPrimary",
    "NotWellDefined",
    "ParseError",
    "QHomGroup",
    "QMorphism",
    "QuotientGroup",
    "SearchExhausted",
    "SerrePredicate",
    "SerrecatError",
    "SmithDecomposition",
    "TorsionPairResult",
    "TwistedPoly",
    "Unsolvable",
    "VModule",
    "ValidationError",
    "a2_over",
    "a2_path_algebra",
    "canonicalize",
    "cd_ell_probe",
    "check_lifting_property",
    "coinduced",
    "coker_F",
    "coker_F_minus_id",
    "cokernel",
    "cokernel_invariants",
    "custom",
    "cyclic_group",
    "direct_product",
    "direct_sum",
    "ell_dual",
    "etale_like",
    "ext_D_against_Ga",
    "ext_group",
    "field_ring",
    "finite_field",
    "free_resolution",
    "group_cohomology",
    "group_from_name",
    "group_ring",
    "hd_bounded",
    "hd_gamma_mod_probe",
    "hom_group",
    "identity_morphism",
    "image",
    "injectivity_probe_F_pushforward",
    "integers",
    "is_isomorphic",
    "kernel",
    "kernel_mod",
    "largest_subobject",
    "lift_exact_complex",
    "localized_ext",
    "localized_hom",
    "make_finab",
    "make_gamma_module",
    "make_module",
    "make_quiver_rep",
    "morphism",
    "parse_field",
    "parse_predicate",
    "projective_rep_p1",
    "q_equal",
    "q_hom",
    "q_is_epi",
    "q_is_iso",
    "q_is_mono",
    "q_is_zero",
    "quotient",
    "quotient_ext_order",
    "regular_module",
    "s_torsion",
    "section_phi",
    "simple_rep",
    "smith_normal_form",
    "solve_integer",
    "solve_modular",
    "span",
    "submodule",
    "subquotient",
    "symmetric_group",
    "torsion_pair",
    "trivial_gamma_module",
    "trivial_group",
    "twisted_mul",
    "verify_hdmax_inequality",
    "verify_quiver_example",
    "verify_thm_hd",
    "vertex_space",
    "zero_module",
]
