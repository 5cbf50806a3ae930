"""Lie ring of bounded-multiplicity integer partitions and its idealizer chain."""

from .chain import (
    ChainReport,
    ChainStep,
    N8_EXCEPTIONS,
    idealizer_chain,
    initial_sets,
    nth_step_predicted_set,
    one_step_excludant_condition,
    predicted_new_elements,
    unrefinable_first_excludant_set,
    verify_growth,
    verify_nth_step,
    verify_unrefinable_step,
)
from .liering import (
    BasisElement,
    HomogeneousSet,
    LieElement,
    Monomial,
    ZERO,
    ZERO_MONOMIAL,
    bracket,
    bracket_basis,
    enumerate_basis,
    homogeneous_membership,
    idealizer,
    monomial_mul,
    partial_derivative,
)
from .partitions import (
    EMPTY,
    ExcludantProfile,
    MultiplicityBound,
    Partition,
    ShapeFlags,
    count_p,
    count_q,
    enumerate_partitions,
    excludant_condition,
    excludant_profile,
    is_unrefinable,
    refinability_steps,
    refinements,
    shape_predicates,
    weight,
)
from .rigid import (
    RigidCommutator,
    TRIVIAL,
    check_bracket_preservation,
    enumerate_rigid,
    from_rigid,
    rigid_bracket,
    rigid_set_normalizer,
    to_rigid,
    verify_chain_correspondence,
)
from .verification import (
    VerificationResult,
    check_antisymmetry_and_grading,
    check_homogeneity,
    check_injectivity,
    check_jacobi,
    check_leibniz,
    check_weight_lemma,
    scaled_idealizer_exceptions,
)

__all__ = [
    "BasisElement",
    "ChainReport",
    "ChainStep",
    "EMPTY",
    "ExcludantProfile",
    "HomogeneousSet",
    "LieElement",
    "Monomial",
    "MultiplicityBound",
    "N8_EXCEPTIONS",
    "Partition",
    "RigidCommutator",
    "ShapeFlags",
    "TRIVIAL",
    "VerificationResult",
    "ZERO",
    "ZERO_MONOMIAL",
    "bracket",
    "bracket_basis",
    "check_antisymmetry_and_grading",
    "check_bracket_preservation",
    "check_homogeneity",
    "check_injectivity",
    "check_jacobi",
    "check_leibniz",
    "check_weight_lemma",
    "count_p",
    "count_q",
    "enumerate_basis",
    "enumerate_partitions",
    "enumerate_rigid",
    "excludant_condition",
    "excludant_profile",
    "from_rigid",
    "homogeneous_membership",
    "idealizer",
    "idealizer_chain",
    "initial_sets",
    "is_unrefinable",
    "monomial_mul",
    "nth_step_predicted_set",
    "one_step_excludant_condition",
    "partial_derivative",
    "predicted_new_elements",
    "refinability_steps",
    "refinements",
    "rigid_bracket",
    "rigid_set_normalizer",
    "scaled_idealizer_exceptions",
    "shape_predicates",
    "to_rigid",
    "unrefinable_first_excludant_set",
    "verify_chain_correspondence",
    "verify_growth",
    "verify_nth_step",
    "verify_unrefinable_step",
    "weight",
]

__version__ = "0.1.0"
