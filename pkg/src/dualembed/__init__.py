"""Exact finite-algebra toolkit: transformation monoids, order-reversing
embedding search with certificates, free acts over a monoid, prime-field
linear algebra, and closure-operator independence checks."""

from ._kernels import BACKEND
from .embeddings import (
    DEFAULT_SEARCH_BUDGET,
    EmbeddingWitness,
    ExhaustionCertificate,
    FullMonoidHandle,
    MuCertificate,
    SearchOutcome,
    canonical_powerset_witness,
    mu_certificate,
    random_pair_corpus,
    restrict_witness_to_rank_le2,
    search_embedding,
    selfmap_dual_threshold,
    verify_embedding,
)
from .errors import BudgetError
from .freeacts import (
    ActEndoPair,
    EndoMonoid,
    FiniteMonoid,
    FreeMAct,
    classify_free_act,
    classify_sweep,
    e_product,
    endo_to_pair,
    eta_embedding,
    eta_sweep,
    is_left_uniserial,
    left_divisibility,
    max_antichain,
    mop_embedding_witness,
    pair_to_endo,
)
from .indep import (
    FreeActHandle,
    VectorSpaceHandle,
    extract_c_independent,
    fin_lattice_embedding_from_s_independent,
    independence_report,
    matroid_check,
    max_c_independent_size,
    sc_rank_report,
)
from .linal import (
    Functional,
    LinearMap,
    PrimeField,
    Subspace,
    all_subspaces,
    all_vectors,
    compose_linear,
    dual_dimension_check,
    extract_independent_vectors,
    orthogonal,
    phi_from_functionals,
    projection_pair,
    span_embedding,
    subspace_lattice,
    sum_and_intersection,
)
from .maps import (
    BinRel,
    Endomap,
    EquivRelation,
    PartialMap,
    all_endomaps,
    all_partial_maps,
    all_permutations,
    all_relations,
    compose_maps,
    compose_partial,
    compose_rel,
    endomaps_rank_le,
    kernel_and_range,
    separating_idempotents,
    transpose,
)
from .semigroups import (
    NAMED_KINDS,
    FiniteSemigroup,
    close_under_product,
    monoids_up_to_iso,
    named_monoid,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BinRel",
    "BudgetError",
    "ActEndoPair",
    "DEFAULT_SEARCH_BUDGET",
    "EmbeddingWitness",
    "EndoMonoid",
    "ExhaustionCertificate",
    "Endomap",
    "EquivRelation",
    "FiniteMonoid",
    "FiniteSemigroup",
    "FreeActHandle",
    "FreeMAct",
    "FullMonoidHandle",
    "Functional",
    "LinearMap",
    "MuCertificate",
    "NAMED_KINDS",
    "PartialMap",
    "PrimeField",
    "SearchOutcome",
    "Subspace",
    "VectorSpaceHandle",
    "all_endomaps",
    "all_partial_maps",
    "all_permutations",
    "all_relations",
    "all_subspaces",
    "all_vectors",
    "canonical_powerset_witness",
    "classify_free_act",
    "classify_sweep",
    "close_under_product",
    "compose_linear",
    "compose_maps",
    "compose_partial",
    "compose_rel",
    "dual_dimension_check",
    "e_product",
    "endo_to_pair",
    "endomaps_rank_le",
    "eta_embedding",
    "eta_sweep",
    "extract_c_independent",
    "extract_independent_vectors",
    "fin_lattice_embedding_from_s_independent",
    "independence_report",
    "is_left_uniserial",
    "kernel_and_range",
    "left_divisibility",
    "matroid_check",
    "max_antichain",
    "max_c_independent_size",
    "monoids_up_to_iso",
    "mop_embedding_witness",
    "mu_certificate",
    "named_monoid",
    "orthogonal",
    "pair_to_endo",
    "phi_from_functionals",
    "projection_pair",
    "random_pair_corpus",
    "restrict_witness_to_rank_le2",
    "sc_rank_report",
    "search_embedding",
    "selfmap_dual_threshold",
    "separating_idempotents",
    "span_embedding",
    "subspace_lattice",
    "sum_and_intersection",
    "transpose",
    "verify_embedding",
]
