"""Exact c-free probability on truncated Fock spaces.

Modules
-------
series       truncated power series and the R/T/S/cR/cT/cS transforms
fock         full Fock space, creation/annihilation, Haagerup operators
twolevel     the two-level space E(H, K), its operators and two states
axioms       mixed moments of a c-free pair from the independence axioms
convolution  c-free convolution by transforms, axioms and operators
verify       seeded verification suites (also exposed on the CLI)
"""
from ._expr import Ranks, TruncationOverflow, operator_from_json
from .axioms import InsufficientData, convolve_axiomatic, expectation_of_word
from .convolution import cfree_convolve, cross_check, operator_convolve, realize_law
from .fock import annihilate, apply_fock, create, haagerup_operator, vacuum_moments
from .series import (
    CompositionUndefined,
    DomainError,
    NotInvertible,
    Poly,
    TruncatedSeries,
    TwoStateLaw,
    moments_from_transform,
    series_compose,
    series_reciprocal,
    series_reversion,
    transform_from_moments,
)
from .twolevel import (
    OMEGA,
    PSI_VACUUM,
    Af,
    An,
    AStar,
    EBasis,
    Pi,
    apply_e,
    construct_model,
    state_pair_moments,
    verify_cfree_structure,
)

__version__ = "0.1.0"

__all__ = [
    "Ranks", "TruncationOverflow", "operator_from_json",
    "InsufficientData", "convolve_axiomatic", "expectation_of_word",
    "cfree_convolve", "cross_check", "operator_convolve", "realize_law",
    "annihilate", "apply_fock", "create", "haagerup_operator", "vacuum_moments",
    "CompositionUndefined", "DomainError", "NotInvertible", "Poly", "TruncatedSeries",
    "TwoStateLaw", "moments_from_transform", "series_compose", "series_reciprocal",
    "series_reversion", "transform_from_moments",
    "OMEGA", "PSI_VACUUM", "Af", "An", "AStar", "EBasis", "Pi", "apply_e",
    "construct_model", "state_pair_moments", "verify_cfree_structure",
]
