"""Exact isolation numbers and certified isolating sets for small graphs.

An F-isolating set of a graph G is a vertex set D such that G - N[D] contains
no member of the family F; the F-isolation number iota(G, F) is the smallest
size of such a set.  This package computes iota exactly for the families that
matter in the connected-graph bounds (connected graphs with >= k edges,
cycles, k-cliques), runs the constructive induction that certifies the known
sharp upper bounds for k = 2 and k = 3, builds the extremal families that
attain them, and exhaustively verifies everything over all small connected
graphs.
"""

from .graphs import (
    Graph,
    Graph6Error,
    bits,
    closed_neighborhood,
    complete_graph,
    component_masks,
    components,
    cycle_graph,
    delete_closed_neighborhood,
    graph6_decode,
    graph6_encode,
    induced_subgraph,
    is_connected,
    is_isomorphic_small,
    leaf_count,
    leaves,
    mask_of,
    named_graph,
    path_graph,
    star_graph,
)
from .families import (
    CYCLES,
    FamilySpec,
    IsolationResult,
    clique_family,
    contains_family_graph,
    edge_family,
    exact_iota,
    iota_monotonicity_check,
    is_isolating,
)
from .bounds import (
    Beta14,
    VerificationRecord,
    beta,
    beta_relative,
    bound_cycles,
    bound_k1,
    bound_k2,
    bound_k3,
    check_bound,
    classify_exception,
)
from .constructions import (
    build_B,
    build_B_prime_P3,
    build_B_prime_7r_C6,
    pattern_isolating_set,
)
from .prover import (
    Certificate,
    InductionContext,
    InternalConsistencyError,
    TraceEntry,
    classify_bad_component_k2,
    classify_bad_component_k3,
    isolate_k2,
    isolate_k3,
    residual_set_for_bad,
    serialize_trace,
)
from .enumeration import connected_graphs, count_connected, read_graph6_stream

__all__ = [name for name in dir() if not name.startswith("_")]
