"""Proper chordal graphs: recognition, FPQ-hierarchies and isomorphism."""

from .fpq import FPQTree, NestedCollection, convex_pq, frontier_set, nested_convex_fpq
from .graph import Graph, generate, parse_edge_list
from .hierarchy import FPQHierarchy, canonical_hierarchy, enumerate_realizations, realize
from .isomorphism import IsoCode, code_of, isomorphic
from .recognition import is_proper_chordal, recognize
from .treelayout import TreeLayout, is_indifference

__all__ = [
    "FPQHierarchy",
    "FPQTree",
    "Graph",
    "IsoCode",
    "NestedCollection",
    "TreeLayout",
    "canonical_hierarchy",
    "code_of",
    "convex_pq",
    "enumerate_realizations",
    "frontier_set",
    "generate",
    "is_indifference",
    "is_proper_chordal",
    "isomorphic",
    "nested_convex_fpq",
    "parse_edge_list",
    "realize",
    "recognize",
]
