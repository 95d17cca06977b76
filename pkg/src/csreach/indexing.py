"""Two-copy indexing graph, kept logical.

Every program vertex ``v`` appears twice: ``(v, ONE)`` on the return side,
which keeps eps, return and summary edges, and ``(v, TWO)`` on the call side,
which keeps eps, call and summary edges.  A bridge ``(v, ONE) -> (v, TWO)``
joins the copies.  ``v`` is CS-reachable from ``u`` iff ``(v, TWO)`` is
reachable from ``(u, ONE)``.

Nothing is copied: index vertices are encoded as the integer ``2*v + side``
(``side`` 0 or 1), so ascending ids enumerate ``(v, ONE), (v, TWO)`` for each
``v`` in turn, and the adjacency is stored once as flat lists.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Iterator, NamedTuple

from .graph import LabelKind, ProgramValidGraph
from .summary import SummaryEdgeSet, summary_ref

BRIDGE = None


class Side(IntEnum):
    ONE = 1
    TWO = 2


class IndexVertex(NamedTuple):
    vertex: int
    side: Side

    @property
    def id(self) -> int:
        return 2 * self.vertex + self.side - 1

    def __str__(self) -> str:
        return f"{self.vertex}:{int(self.side)}"


def src_id(v: int) -> int:
    return 2 * v


def dst_id(v: int) -> int:
    return 2 * v + 1


def from_id(i: int) -> IndexVertex:
    return IndexVertex(i >> 1, Side((i & 1) + 1))


class IndexingGraphView:
    """Adjacency of the indexing graph over ``(g, summaries)``.

    ``succ[i]`` lists successor ids of index vertex ``i``; ``succ_ref[i]`` the
    matching edge refs (graph edge index, summary ref from
    :func:`summary_ref`, or ``BRIDGE``).
    """

    def __init__(self, g: ProgramValidGraph, summaries: SummaryEdgeSet):
        self.graph = g
        self.summaries = summaries
        n = g.n
        succ: list[list[int]] = [[] for _ in range(2 * n)]
        refs: list[list[int | None]] = [[] for _ in range(2 * n)]
        for v in range(n):
            succ[2 * v].append(2 * v + 1)
            refs[2 * v].append(BRIDGE)
        for i, e in enumerate(g.edges):
            kind = e.label.kind
            if kind != LabelKind.OPEN:
                succ[2 * e.src].append(2 * e.dst)
                refs[2 * e.src].append(i)
            if kind != LabelKind.CLOSE:
                succ[2 * e.src + 1].append(2 * e.dst + 1)
                refs[2 * e.src + 1].append(i)
        for si, se in enumerate(summaries.discovery):
            for side in (0, 1):
                succ[2 * se.source + side].append(2 * se.target + side)
                refs[2 * se.source + side].append(summary_ref(si))
        self.succ = succ
        self.succ_ref = refs
        self._pred: list[list[int]] | None = None

    @property
    def size(self) -> int:
        return len(self.succ)

    @property
    def pred(self) -> list[list[int]]:
        if self._pred is None:
            pred: list[list[int]] = [[] for _ in range(len(self.succ))]
            for x, out in enumerate(self.succ):
                for y in out:
                    pred[y].append(x)
            self._pred = pred
        return self._pred

    def iter_vertices(self) -> Iterator[IndexVertex]:
        for v in range(self.graph.n):
            yield IndexVertex(v, Side.ONE)
            yield IndexVertex(v, Side.TWO)

    def iter_successors(self, iv: IndexVertex) -> Iterator[IndexVertex]:
        for y in self.succ[iv.id]:
            yield from_id(y)

    def iter_predecessors(self, iv: IndexVertex) -> Iterator[IndexVertex]:
        for x in self.pred[iv.id]:
            yield from_id(x)

    def stats(self) -> tuple[int, int]:
        return len(self.succ), sum(len(out) for out in self.succ)

    def reaches(self, x: int, y: int) -> bool:
        """Plain DFS on index ids; used as an oracle by tests and tooling."""
        if x == y:
            return True
        seen = {x}
        stack = [x]
        succ = self.succ
        while stack:
            for z in succ[stack.pop()]:
                if z == y:
                    return True
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        return False

    def to_dot(self) -> str:
        lines = ["digraph indexing {"]
        for x in range(len(self.succ)):
            lines.append(f'  "{from_id(x)}";')
        for x, out in enumerate(self.succ):
            for y, ref in zip(out, self.succ_ref[x]):
                if ref is BRIDGE:
                    attr = ' [style=dashed, label="bridge"]'
                elif ref < 0:
                    attr = ' [color=blue, label="summary"]'
                else:
                    attr = f' [label="{self.graph.edges[ref].label}"]'
                lines.append(f'  "{from_id(x)}" -> "{from_id(y)}"{attr};')
        lines.append("}")
        return "\n".join(lines) + "\n"


def expected_edge_count(g: ProgramValidGraph, summaries: SummaryEdgeSet) -> int:
    counts = [0, 0, 0]
    for e in g.edges:
        counts[e.label.kind] += 1
    eps, opens, closes = counts
    return 2 * eps + opens + closes + 2 * len(summaries.discovery) + g.n
