"""Exact, certifiable graph regularity: regular partitions, triangle removal, and
the 3-AP tripartite construction, all over exact rationals."""

from .errors import BoundTooLarge, CapExceeded, DomainError, GraphError, HypothesisFailed, PartitionError
from .graph import (
    UGraph,
    all_edges_between,
    edge_count,
    edge_density,
    generate,
    make_graph,
    neighbors_ss,
    parse_edge_list,
    to_dot,
    to_edge_list,
)
from .partition import (
    VertexPartition,
    common_refinement,
    energy_graph_partitions,
    energy_graph_subsets,
    is_partition,
    mean_square_density,
    p2,
    refines,
)
from .regular import (
    RegularityOutcome,
    SrlResult,
    Witness,
    check_regular_pair,
    irregular_set,
    is_regular_partition,
    le_tower_check,
    refine_step,
    szemeredi_partition,
    tower_bound,
)
from .roth import (
    RothInstance,
    build_roth_graph,
    classify_triangle,
    diamond_free_inequality,
    find_progression3,
    progression3_set,
    roth_aux_verify,
    unique_triangles_check,
)
from .triangles import (
    clean_graph,
    counting_lemma_bound,
    triangle_in_graph,
    triangle_removal,
    triangle_set,
    triangle_triples,
)

__version__ = "0.1.0"
