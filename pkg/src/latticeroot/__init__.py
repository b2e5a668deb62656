"""Lattice cohomology of negative definite plumbed 3-manifolds.

The package computes, with exact integer arithmetic throughout:

* sublevel-set cohomology of the weight function on the plumbing lattice,
  packaged as a graded root and as a graded module over a degree ``-2``
  polynomial action,
* the conjugation symmetry of that cohomology and the rank profiles derived
  from it,
* the three-tower equivariant module refining the cohomology, together with
  its correction terms (``alpha``, ``beta``, ``gamma``, ``delta``, ``rho``
  and the Wu invariant ``mubar``).

Entry points
------------

``load_graph_file`` / ``from_seifert`` / ``graph_from_json``
    build a plumbing graph, ``validate`` checks it.
``enumerate_orbits`` / ``wu_vector``
    enumerate characteristic-vector orbits and locate the Wu class.
``WeightedLattice`` / ``build_region`` / ``graded_root`` / ``hm_module``
    run the sublevel-set scan and package its output.
``tau_profile``
    the certified single-variable fast path to the same graded root.
``symmetry_summary`` / ``derived_total`` / ``pin_invariants``
    the conjugation analysis and the equivariant package.

The ``latticeroot`` console script exposes the same pipeline; see
``latticeroot --help``.
"""

from .errors import (
    AmbiguousForcing,
    AmbiguousWu,
    CapacityExceeded,
    ConjectureRequired,
    InconsistentRanks,
    InternalMismatch,
    InvalidSeifertData,
    LatticeRootError,
    MalformedGraph,
    MoreThanTwoBadVertices,
    NoWuRepresentative,
    NotCharacteristic,
    NotDefinite,
    NotSelfConjugate,
    ParityMismatch,
    ParseError,
    StabilizationNotReached,
    TooManyBadVertices,
)
from .plumbing import (
    IntersectionForm,
    PlumbingGraph,
    ValidationReport,
    build_intersection_form,
    from_seifert,
    graph_from_json,
    graph_to_json,
    load_graph_file,
    negative_continued_fraction,
    seifert_from_json,
    validate,
)
from .spinc import (
    CharVector,
    SpinCOrbit,
    WuData,
    canonical_representative,
    check_characteristic,
    enumerate_orbits,
    is_same_orbit,
    k_square,
    kappa_vector,
    sigma_shift,
    wu_vector,
)
from .modules import GradedModule, RankProfile, format_grading
from .lattice import (
    GradedRoot,
    LevelSummary,
    Region,
    SublevelSlice,
    WeightedLattice,
    bad_vertices_of_form,
    build_region,
    build_slice,
    default_budget,
    enumerate_points,
    graded_root,
    hm_module,
)
from .tau import TauProfile, select_profile_vertex, tau_profile
from .symmetry import (
    DerivedProfiles,
    LevelSymmetry,
    SymmetrySummary,
    derived_cohomology,
    derived_total,
    invariant_cube,
    involution,
    symmetry_summary,
)
from .pin2 import (
    CorrectionTerms,
    GysinDecomposition,
    PinModule,
    PinResult,
    correction_terms,
    force_second_derived,
    gysin_decompose,
    hs_profile_one_bad,
    module_int_profile,
    pin_invariants,
    pin_invariants_profile,
    tower_bottoms,
)
from .render import format_module, format_pin_module, render_ascii, render_dot

__version__ = "0.1.0"

__all__ = [
    # errors
    "LatticeRootError",
    "ParseError",
    "MalformedGraph",
    "InvalidSeifertData",
    "NotDefinite",
    "NotCharacteristic",
    "NotSelfConjugate",
    "NoWuRepresentative",
    "AmbiguousWu",
    "CapacityExceeded",
    "StabilizationNotReached",
    "TooManyBadVertices",
    "MoreThanTwoBadVertices",
    "InternalMismatch",
    "InconsistentRanks",
    "ParityMismatch",
    "ConjectureRequired",
    "AmbiguousForcing",
    # plumbing graphs
    "PlumbingGraph",
    "IntersectionForm",
    "ValidationReport",
    "build_intersection_form",
    "validate",
    "negative_continued_fraction",
    "from_seifert",
    "graph_from_json",
    "graph_to_json",
    "seifert_from_json",
    "load_graph_file",
    # characteristic vectors
    "CharVector",
    "SpinCOrbit",
    "WuData",
    "check_characteristic",
    "kappa_vector",
    "k_square",
    "sigma_shift",
    "is_same_orbit",
    "canonical_representative",
    "enumerate_orbits",
    "wu_vector",
    # graded modules
    "GradedModule",
    "RankProfile",
    "format_grading",
    # lattice scan
    "WeightedLattice",
    "SublevelSlice",
    "LevelSummary",
    "Region",
    "GradedRoot",
    "default_budget",
    "bad_vertices_of_form",
    "enumerate_points",
    "build_slice",
    "build_region",
    "graded_root",
    "hm_module",
    # single-variable fast path
    "TauProfile",
    "select_profile_vertex",
    "tau_profile",
    # conjugation symmetry
    "LevelSymmetry",
    "SymmetrySummary",
    "DerivedProfiles",
    "involution",
    "invariant_cube",
    "symmetry_summary",
    "derived_cohomology",
    "derived_total",
    # equivariant package
    "CorrectionTerms",
    "GysinDecomposition",
    "PinModule",
    "PinResult",
    "tower_bottoms",
    "correction_terms",
    "module_int_profile",
    "hs_profile_one_bad",
    "gysin_decompose",
    "force_second_derived",
    "pin_invariants",
    "pin_invariants_profile",
    # rendering
    "render_dot",
    "render_ascii",
    "format_module",
    "format_pin_module",
    "__version__",
]
