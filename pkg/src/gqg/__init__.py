"""Exact symbolic machinery for diagonal braidings: Cartan data, reflection
groupoids, longest words and root systems, and the finite-dimensionality
classification of irreducible highest-weight modules."""

from .bihom import (BiHom, DynkinDiagram, FamilySpec, bihom_from_json,
                    cartan_type_data, dynkin_diagram, equiv, eta,
                    family_spec_from_json, is_irreducible, make_family,
                    parity, permute)
from .cartan import (CartanUndefinedError, cartan_entry, cartan_matrix,
                     height_bound, reflect_bihom, reflection_matrix)
from .classify import (MembershipReport, VerificationReport, classify,
                       classification_constants, in_S_prime, sample_weights,
                       verify_theorem)
from .groupoid import (NotFiniteTypeError, ReducedWord, RootSystem,
                       builtin_word, enumerate_objects, expected_root_count,
                       greedy_longest_word, is_finite_type, root_system,
                       verify_word)
from .highestweight import (InfiniteReflectionError, WeightChain, chain,
                            h_value, is_finite_dimensional, reflect_weight)
from .scalar import (Monomial, TorsionMismatchError, monomial_from_json,
                     neg_one, one, pair_vanishing_index, pairnum_is_zero,
                     parse_monomial, primitive_root, q_power, qfact_is_zero,
                     qnum_is_zero, r_power, solve_power)

__version__ = "0.1.0"
