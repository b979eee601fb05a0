"""satcomp: two-level index combinatorics for Satake compactifications.

Model a semisimple group's rational/real structure as a decorated Dynkin
diagram, compute restricted roots and boundary-component posets, and decide
geometric rationality of the associated compactifications.
"""

from .diagram import (
    ComponentType,
    DynkinDiagram,
    Edge,
    NodeMap,
    NotADynkinDiagram,
    UnknownNodeId,
    cartan_matrix,
    classify_all,
    classify_component,
    components,
    disjoint_union,
    opposition_involution,
    standard_diagram,
    theta_plus,
)
from .index import (
    ClosureCapExceeded,
    Diagnostic,
    GaloisClosure,
    InvalidIndexError,
    KRoot,
    Level,
    TwoLevelIndex,
    epsilon,
    galois_closure,
    k_adjacency,
    k_rank,
    restriction_fibers,
    rrank_of_component,
    validate,
)
from .satake import (
    BoundaryComponent,
    BoundaryPoset,
    DifferenceNotInRootLattice,
    DominantWeight,
    RootContext,
    boundary_components,
    condition_R,
    delta_from_weight,
    diagram_context,
    is_delta_connected,
    is_projectively_rational,
    is_strongly_rational,
    k_context,
    k_delta,
    kappa,
    omega,
    original_construction_delta,
    spherical_necessary,
    zeta,
)
from .families import (
    Family,
    HasseDiagram,
    family_b,
    family_bstar,
    family_f,
    family_fcirc,
    family_fstar,
    family_ftilde,
    hasse,
)
from .rationality import (
    CrossCheckFailure,
    Report,
    Verdict,
    Witness,
    casselman,
    casselman_evaluation,
    classify,
    delta_galois_invariant,
    exceptional_factors,
    is_equal_rank_group,
    is_real_equal_rank,
    main_theorem_verdict,
    special_cases_verdict,
)
from .dsl import IndexDocument, ParseError, parse, serialize
from .corpus import corpus
from .report import emit_dot, emit_report, render_satake, report_to_dict

__version__ = "0.1.0"
