"""Conventional reachability indexes over a condensed DAG."""

from .base import IndexGuardError, SchemeCapabilities
from .dag import Dag, condense, condense_adjacency, strongly_connected_components
from .dual import DualLabelingIndex, Interval, Link, build_dual, dual_query
from .grail import GrailIndex, build_grail, grail_query
from .tc import TcIndex, build_tc, tc_query

SCHEMES = {"tc": TcIndex, "dual": DualLabelingIndex, "grail": GrailIndex}


def build_index(scheme: str, dag: Dag, *, seed: int = 0, k_labels: int = 5,
                max_components: int | None = None, max_non_tree: int | None = None):
    if scheme == "tc":
        if max_components is None:
            return TcIndex.build(dag)
        return TcIndex.build(dag, max_components)
    if scheme == "dual":
        if max_non_tree is None:
            return DualLabelingIndex.build(dag)
        return DualLabelingIndex.build(dag, max_non_tree)
    if scheme == "grail":
        return GrailIndex.build(dag, k_labels, seed)
    raise ValueError(f"unknown scheme {scheme!r} (choose from {', '.join(SCHEMES)})")


__all__ = [
    "Dag", "condense", "condense_adjacency", "strongly_connected_components",
    "TcIndex", "build_tc", "tc_query",
    "DualLabelingIndex", "Interval", "Link", "build_dual", "dual_query",
    "GrailIndex", "build_grail", "grail_query",
    "IndexGuardError", "SchemeCapabilities", "SCHEMES", "build_index",
]
