"""Minimum-leaf out-branchings: exact DAG solver, crown kernel, FPT pipeline."""

from .branching import (
    OutTree,
    VertexCover,
    extract_cover,
    is_minimal,
    minimalize,
    one_change,
)
from .dag_matching import build_minleaf_model, max_bipartite_matching, minleaf_dag
from .digraph import (
    Digraph,
    build_digraph,
    dfs_out_branching,
    generate,
    hat,
    pn_gadget,
    psbgv_gadget,
    random_dag,
    random_digraph,
    restrict_reachable,
    root_candidates,
    star,
)
from .exact import (
    PbgvAnswer,
    exact_internal_number,
    oracle_minleaf,
    solve_pbgv,
    star_tree_decomposition,
)
from .kernelization import build_crown_model, find_crown, kernelize
from .reductions import (
    PathCover,
    max_internal_out_tree,
    min_path_cover,
    path_cover_from_branching,
)

__all__ = [
    "Digraph", "OutTree", "VertexCover", "PathCover", "PbgvAnswer",
    "build_digraph", "root_candidates", "dfs_out_branching", "restrict_reachable",
    "generate", "star", "pn_gadget", "psbgv_gadget", "hat", "random_digraph", "random_dag",
    "one_change", "is_minimal", "minimalize", "extract_cover",
    "build_minleaf_model", "max_bipartite_matching", "minleaf_dag",
    "build_crown_model", "find_crown", "kernelize",
    "oracle_minleaf", "star_tree_decomposition", "exact_internal_number", "solve_pbgv",
    "path_cover_from_branching", "min_path_cover", "max_internal_out_tree",
]
