"""Coalition formation games: domination dynamics, absorbing sets, rings
and stable decompositions.

Agents are numbered from 1; coalitions are integer bitmasks (``coalition``
and ``members`` convert); structures are canonically sorted tuples of
coalition masks.
"""

from .errors import (
    AgentIdOutOfRange,
    AgentNotMember,
    DisjointParty,
    EmptyCollection,
    InconsistentRanking,
    LimitExceeded,
    MalformedInput,
    MalformedParty,
    MalformedSpec,
    NodeNotInGraph,
    NotACycle,
    NotARingComponent,
    NotBlocking,
    PartyIsSingletonPool,
    StabledecError,
    StartNotInCycle,
    TrivialAbsorbingSet,
    VerificationFailed,
)
from .core import (
    Game,
    coalition,
    compact_coalition,
    contains,
    game_from_dict,
    intersects,
    is_singleton,
    lowest_agent,
    members,
    parse_game_dsl,
    parse_game_json,
    prefers,
    render_coalition,
    singleton,
    transitively_prefers,
    unanimously_prefers,
)
from .structures import (
    DEFAULT_LIMIT,
    blocks,
    breaks,
    breaks_maximal_set,
    coalition_of,
    enumerate_structures,
    is_stable,
    maximal_sets,
    render_structure,
    singleton_structure,
    structure_from_parts,
    structure_key,
)
from .dynamics import (
    DominationEdge,
    DominationGraph,
    dominate_via,
    grow_graph,
    successors,
    to_dot,
    transitively_dominates,
)
from .absorbing import (
    AbsorbingSet,
    absorbing_sets,
    full_domination_graph,
    reaches_absorbing,
    sink_components,
)
from .rings import (
    RingComponent,
    canonical_rotation,
    classify_simple,
    compact_collection,
    component,
    cyclically_equal,
    extract_ring,
    has_proper_ring,
    is_proper_ring,
    is_ring,
    is_ring_component,
    ring_components_of,
)
from .decomposition import (
    POOL,
    RING,
    SINGLE,
    DStructure,
    Party,
    StableDecomposition,
    Violation,
    all_stable_decompositions,
    check_stable_decomposition,
    d_structures,
    decomposition,
    decomposition_from_collections,
    from_absorbing_set,
    generated_set,
    is_protected,
    is_stable_decomposition,
    make_party,
    prevents,
    protection_certificates,
    unprevented_breakers,
)
from .applications import (
    MarriageSpec,
    RoommateSpec,
    converges_to_stability,
    marriage_to_game,
    random_game,
    random_marriage_spec,
    random_roommate_spec,
    roommate_to_game,
)
from ._kernels import available_backends, current_backend, use_backend

__version__ = "0.1.0"

__all__ = [
    "absorbing_sets",
    "AbsorbingSet",
    "AgentIdOutOfRange",
    "AgentNotMember",
    "all_stable_decompositions",
    "available_backends",
    "blocks",
    "breaks",
    "breaks_maximal_set",
    "canonical_rotation",
    "check_stable_decomposition",
    "classify_simple",
    "coalition",
    "coalition_of",
    "compact_coalition",
    "compact_collection",
    "component",
    "contains",
    "converges_to_stability",
    "current_backend",
    "cyclically_equal",
    "d_structures",
    "decomposition",
    "decomposition_from_collections",
    "DEFAULT_LIMIT",
    "DisjointParty",
    "dominate_via",
    "DominationEdge",
    "DominationGraph",
    "DStructure",
    "EmptyCollection",
    "enumerate_structures",
    "extract_ring",
    "from_absorbing_set",
    "full_domination_graph",
    "Game",
    "game_from_dict",
    "generated_set",
    "grow_graph",
    "has_proper_ring",
    "InconsistentRanking",
    "intersects",
    "is_proper_ring",
    "is_protected",
    "is_ring",
    "is_ring_component",
    "is_singleton",
    "is_stable",
    "is_stable_decomposition",
    "LimitExceeded",
    "lowest_agent",
    "make_party",
    "MalformedInput",
    "MalformedParty",
    "MalformedSpec",
    "marriage_to_game",
    "MarriageSpec",
    "maximal_sets",
    "members",
    "NodeNotInGraph",
    "NotACycle",
    "NotARingComponent",
    "NotBlocking",
    "parse_game_dsl",
    "parse_game_json",
    "Party",
    "PartyIsSingletonPool",
    "POOL",
    "prefers",
    "prevents",
    "protection_certificates",
    "random_game",
    "random_marriage_spec",
    "random_roommate_spec",
    "reaches_absorbing",
    "render_coalition",
    "render_structure",
    "RING",
    "ring_components_of",
    "RingComponent",
    "roommate_to_game",
    "RoommateSpec",
    "SINGLE",
    "singleton",
    "singleton_structure",
    "sink_components",
    "StabledecError",
    "StableDecomposition",
    "StartNotInCycle",
    "structure_from_parts",
    "structure_key",
    "successors",
    "to_dot",
    "transitively_dominates",
    "transitively_prefers",
    "TrivialAbsorbingSet",
    "unanimously_prefers",
    "unprevented_breakers",
    "use_backend",
    "VerificationFailed",
    "Violation",
]
