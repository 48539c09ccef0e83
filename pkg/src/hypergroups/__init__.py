"""Finite hypergroups with identity: axioms, constructions, morphisms, categorical checks, enumeration."""
from .core import (AxiomError, CheckReport, Hypergroup, HypergroupError, RelationalHypergroup, SIPVerdict,
                   StructureError, Unsupported, check_basic_identities, check_relational, from_relational,
                   is_commutative, mul, mul_sets, opposite, relabel, replay_axiom, sip_check,
                   to_relational, verify_axioms)
from .morph import (Morphism, MorphismError, are_isomorphic, cokernel, compose, enumerate_hom, first_iso,
                    identity, image, is_full, is_isomorphism, is_morphism, kernel, zero)
from .construct import (DirectedDiagram, SubCarrier, chain_hypergroup, coset_space, cyclic_group,
                        direct_sum, directed_colimit, filtered_limit, from_group, generated,
                        is_full_subcarrier, product, quotient, symmetric_group, trivial)
from .cat import (ExactSequence, HomStructure, bilinearity_check, biproduct_check, check_image_full,
                  colimit_universal_check, exactness_check, hom_structure, limit_universal_check,
                  universal_cokernel_check, universal_kernel_check, zero_object_check)
from .enumeration import (CanonicalForm, SearchResult, SearchWitness, canonical_form,
                          enumerate_hypergroups, replay, search_equalizer_kernel_gap,
                          search_hom_nonassociative, search_nonfull_image)
from .textio import HgDocument, HgSemanticError, HgSyntaxError, parse, parse_all, serialize

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
