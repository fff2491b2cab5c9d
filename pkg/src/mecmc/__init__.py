"""Sampling and counting machinery for graphical Markov models.

Submodules: ``graphs`` (chordal graphs, DAGs, PDAGs, clique trees), ``amo``
(acyclic v-configuration-free orientations and their flip graph),
``flipchain`` (the edge-flip walk, its spectrum, and decomposition bounds),
``essential`` (essential graphs and Markov equivalence classes), ``posets``
(labeled-poset counting of DAGs and equivalence classes), ``hjy`` (the
reversible move chain on essential graphs), ``cli`` (command-line surface).
"""

from .amo import (
    Amo,
    OrientationSpace,
    build_orientation_space,
    count_amos,
    enumerate_amos,
    is_amo,
    peo_orientation,
)
from .essential import (
    class_size,
    enumerate_essential_graphs,
    essential_graph_of_dag,
    is_essential_graph,
    markov_equivalent,
    mec_of_dag,
)
from .flipchain import (
    bottleneck_ratio,
    clique_cut_bottlenecks,
    decomposition_stats,
    exact_tmix,
    madras_randall_bound,
    projection_chain,
    sample,
    sample_many,
    spectral_gap,
    transition_matrix,
)
from .graphs import (
    CapExceededError,
    CliqueTree,
    Dag,
    NotChordalError,
    Pdag,
    UndirectedGraph,
    clique_tree,
    complete_graph,
    format_dag,
    format_pdag,
    format_undirected,
    glued_clique_chain,
    is_chordal,
    maximal_cliques,
    parse_dag,
    parse_pdag,
    parse_undirected,
    path_graph,
    perfect_elimination_ordering,
    star_graph,
)
from .hjy import (
    Move,
    apply_move,
    consistent_extension,
    counterexample_family,
    emptying_sequence,
    hamming_distance,
    two_step_path,
)
from .posets import (
    count_dags_via_posets,
    count_essential_dags_via_posets,
    enumerate_labeled_posets,
    ratio_table,
    robinson_counts,
    steinsky_counts,
)

__all__ = [
    "Amo",
    "CapExceededError",
    "CliqueTree",
    "Dag",
    "Move",
    "NotChordalError",
    "OrientationSpace",
    "Pdag",
    "UndirectedGraph",
    "apply_move",
    "bottleneck_ratio",
    "build_orientation_space",
    "class_size",
    "clique_cut_bottlenecks",
    "clique_tree",
    "complete_graph",
    "consistent_extension",
    "count_amos",
    "count_dags_via_posets",
    "count_essential_dags_via_posets",
    "counterexample_family",
    "decomposition_stats",
    "emptying_sequence",
    "enumerate_amos",
    "enumerate_essential_graphs",
    "enumerate_labeled_posets",
    "essential_graph_of_dag",
    "exact_tmix",
    "format_dag",
    "format_pdag",
    "format_undirected",
    "glued_clique_chain",
    "hamming_distance",
    "is_amo",
    "is_chordal",
    "is_essential_graph",
    "madras_randall_bound",
    "markov_equivalent",
    "maximal_cliques",
    "mec_of_dag",
    "parse_dag",
    "parse_pdag",
    "parse_undirected",
    "path_graph",
    "peo_orientation",
    "perfect_elimination_ordering",
    "projection_chain",
    "ratio_table",
    "robinson_counts",
    "sample",
    "sample_many",
    "spectral_gap",
    "star_graph",
    "steinsky_counts",
    "transition_matrix",
    "two_step_path",
]
