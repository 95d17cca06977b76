"""Dual labeling: spanning-tree intervals plus a transitive link table.

Each node gets a post-order interval ``[low, high]`` over a DFS spanning
forest, so tree reachability is interval containment.  Every non-tree edge
``x -> y`` becomes a link ``I(x) -> I(y)``; links are closed under
composition (``a -> b`` and ``c -> d`` with ``I(c) ⊆ I(b)`` give ``a -> d``).
Then ``u`` reaches ``v`` iff ``I(v) ⊆ I(u)`` or some link ``x -> y`` has
``I(x) ⊆ I(u)`` and ``I(v) ⊆ I(y)``.

Lookups scan the links whose source starts inside ``I(u)``; there is no
constant-time range-aggregation structure.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import NamedTuple

from .base import IndexGuardError, SchemeCapabilities
from .dag import Dag

DEFAULT_MAX_NON_TREE = 20_000


class Interval(NamedTuple):
    low: int
    high: int

    def contains(self, other: "Interval") -> bool:
        return self.low <= other.low and other.high <= self.high

    def __str__(self) -> str:
        return f"[{self.low}, {self.high}]"


class Link(NamedTuple):
    src: Interval
    dst: Interval


def spanning_intervals(dag: Dag) -> tuple[list[Interval], list[int], list[tuple[int, int]]]:
    """DFS spanning forest from a virtual root over ``dag.roots()`` (ascending).

    Returns (interval per node, tree parent per node or -1, non-tree edges).
    Ranks start at 1.
    """
    n = dag.n
    low = [0] * n
    high = [0] * n
    parent = [-1] * n
    visited = [False] * n
    non_tree: list[tuple[int, int]] = []
    rank = 0
    for root in dag.roots():
        visited[root] = True
        low[root] = rank + 1
        stack = [(root, 0)]
        while stack:
            u, pos = stack[-1]
            out = dag.succ[u]
            if pos < len(out):
                stack[-1] = (u, pos + 1)
                c = out[pos]
                if visited[c]:
                    non_tree.append((u, c))
                else:
                    visited[c] = True
                    parent[c] = u
                    low[c] = rank + 1
                    stack.append((c, 0))
                continue
            stack.pop()
            rank += 1
            high[u] = rank
    return [Interval(lo, hi) for lo, hi in zip(low, high)], parent, non_tree


class DualLabelingIndex:
    scheme = "dual"
    capabilities = SchemeCapabilities("dual", returns_paths=False)

    def __init__(self, intervals: list[Interval], non_tree: list[tuple[int, int]],
                 links: list[Link]):
        self.intervals = intervals
        self.non_tree = non_tree
        self.links = sorted(links)
        self._starts = [link.src.low for link in self.links]

    @classmethod
    def build(cls, dag: Dag, max_non_tree: int = DEFAULT_MAX_NON_TREE) -> "DualLabelingIndex":
        intervals, _, non_tree = spanning_intervals(dag)
        if len(non_tree) > max_non_tree:
            raise IndexGuardError(
                f"dual labeling found {len(non_tree)} non-tree edges (limit {max_non_tree}); "
                f"the link table grows quadratically, use --scheme grail")
        return cls(intervals, non_tree, close_links(intervals, non_tree))

    @property
    def link_table(self) -> set[Link]:
        return set(self.links)

    def reach(self, u: int, v: int) -> bool:
        iu = self.intervals[u]
        iv = self.intervals[v]
        if iu.low <= iv.low and iv.high <= iu.high:
            return True
        lo = bisect_left(self._starts, iu.low)
        hi = bisect_right(self._starts, iu.high)
        links = self.links
        for k in range(lo, hi):
            src, dst = links[k]
            if src.high <= iu.high and dst.low <= iv.low and iv.high <= dst.high:
                return True
        return False

    def may_reach(self, u: int, v: int) -> bool:
        return self.reach(u, v)

    def to_payload(self) -> dict:
        return {
            "intervals": [list(i) for i in self.intervals],
            "non_tree": [list(e) for e in self.non_tree],
            "links": [[*link.src, *link.dst] for link in self.links],
        }

    @classmethod
    def from_payload(cls, payload: dict, dag: Dag) -> "DualLabelingIndex":
        links = [Link(Interval(a, b), Interval(c, d)) for a, b, c, d in payload["links"]]
        return cls([Interval(*i) for i in payload["intervals"]],
                   [tuple(e) for e in payload["non_tree"]], links)


def close_links(intervals: list[Interval], non_tree: list[tuple[int, int]]) -> list[Link]:
    base = sorted(Link(intervals[x], intervals[y]) for x, y in non_tree)
    starts = [link.src.low for link in base]
    # link a feeds link b when b's source lies inside a's target subtree
    feeds = []
    for la in base:
        lo = bisect_left(starts, la.dst.low)
        hi = bisect_right(starts, la.dst.high)
        feeds.append([b for b in range(lo, hi) if base[b].src.high <= la.dst.high])
    table = set()
    for a, la in enumerate(base):
        seen = {a}
        stack = [a]
        while stack:
            b = stack.pop()
            table.add(Link(la.src, base[b].dst))
            for c in feeds[b]:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
    return sorted(table)


def build_dual(dag: Dag, max_non_tree: int = DEFAULT_MAX_NON_TREE) -> DualLabelingIndex:
    return DualLabelingIndex.build(dag, max_non_tree)


def dual_query(idx: DualLabelingIndex, u: int, v: int) -> bool:
    return idx.reach(u, v)
