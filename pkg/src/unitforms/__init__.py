"""Exact strong Gram classification of unit forms of Dynkin type A."""

from .classify import (
    ClassificationVerdict,
    RealizationResult,
    classify,
    realize_as_quiver,
    strong_congruence_positive,
    strong_congruence_principal,
)
from .coxeter import (
    CoxeterData,
    check_coxeter_bounds,
    coxeter_from_form,
    coxeter_from_quiver,
    inverse_quiver,
    inverse_via_gram,
    inverse_via_recursion,
    one_star_coxeter_polynomial,
    triangular_inverse_identity,
)
from .forms import (
    Bigraph,
    CongruenceCertificate,
    CongruenceKind,
    UnitForm,
    decompose_disconnected,
    rank_corank,
    verify_congruence,
)
from .quivers import Arrow, Quiver, Walk, incidence_bigraph, incidence_matrix, unit_form_of
from .stars import (
    canonical_one_star,
    canonical_star,
    one_star_quiver,
    one_tree_to_one_star,
    star_quiver,
    tree_to_star,
)
from .transforms import FST, Flation, IteratedTransform, PointInversion, Swap

__all__ = [
    "Arrow",
    "Bigraph",
    "ClassificationVerdict",
    "CongruenceCertificate",
    "CongruenceKind",
    "CoxeterData",
    "FST",
    "Flation",
    "IteratedTransform",
    "PointInversion",
    "Quiver",
    "RealizationResult",
    "Swap",
    "UnitForm",
    "Walk",
    "canonical_one_star",
    "canonical_star",
    "check_coxeter_bounds",
    "classify",
    "coxeter_from_form",
    "coxeter_from_quiver",
    "decompose_disconnected",
    "incidence_bigraph",
    "incidence_matrix",
    "inverse_quiver",
    "inverse_via_gram",
    "inverse_via_recursion",
    "one_star_coxeter_polynomial",
    "one_star_quiver",
    "one_tree_to_one_star",
    "rank_corank",
    "realize_as_quiver",
    "star_quiver",
    "strong_congruence_positive",
    "strong_congruence_principal",
    "tree_to_star",
    "triangular_inverse_identity",
    "unit_form_of",
    "verify_congruence",
]
