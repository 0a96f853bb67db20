"""Exact list 3-colouring of graphs without triangles or induced 7-vertex
paths, with promise verification, witnesses, generators and a CLI."""

from .engine import (BranchDescriptor, ListState, Outcome, Palette, SolveStats,
                     apply_branch, colour_blownup_c7, eliminate_safe,
                     enumerate_branches, enumerate_c5_colourings,
                     palette_analysis, propagate, residual_to_2sat, solve,
                     verify_colouring)
from .graph import (Bipartition, Graph, VertexSet, adjacency_query,
                    bipartite_check, build_graph, connected_components)
from .recognition import (PromiseViolation, TwinDecomposition, check_promise,
                          false_twin_classes, find_induced_p7, find_triangle,
                          recognize_blownup_c7, shortest_odd_cycle)
from .sat2 import TwoSatInstance, add_clause, solve_2sat
from .skeleton import (Chain, ComponentInfo, Skeleton, build_chain,
                       build_skeleton, wd_components)
from .testkit import GenSpec, enumerate_colourings, generate, oracle_solve

__all__ = [
    "BranchDescriptor", "ListState", "Outcome", "Palette", "SolveStats",
    "apply_branch", "colour_blownup_c7", "eliminate_safe",
    "enumerate_branches", "enumerate_c5_colourings", "palette_analysis",
    "propagate", "residual_to_2sat", "solve", "verify_colouring",
    "Bipartition", "Graph", "VertexSet", "adjacency_query", "bipartite_check",
    "build_graph", "connected_components",
    "PromiseViolation", "TwinDecomposition", "check_promise",
    "false_twin_classes", "find_induced_p7", "find_triangle",
    "recognize_blownup_c7", "shortest_odd_cycle",
    "TwoSatInstance", "add_clause", "solve_2sat",
    "Chain", "ComponentInfo", "Skeleton", "build_chain", "build_skeleton",
    "wd_components",
    "GenSpec", "enumerate_colourings", "generate", "oracle_solve",
]
