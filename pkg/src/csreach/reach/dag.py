"""Condensation of a directed graph into a DAG of strongly connected components."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence


class Dag:
    """Adjacency over nodes ``0..n-1``.

    ``comp_of`` maps the vertices of the graph the DAG was condensed from to
    node ids (identity for DAGs built directly).
    """

    def __init__(self, succ: Sequence[Sequence[int]], comp_of: Sequence[int] | None = None):
        self.succ = [list(out) for out in succ]
        self.n = len(self.succ)
        self.comp_of = list(comp_of) if comp_of is not None else list(range(self.n))
        self._pred = None
        self._topo = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Dag":
        """Build from an edge list; per-node successor order follows the input."""
        succ: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if (u, v) not in seen:
                seen.add((u, v))
                succ[u].append(v)
        dag = cls(succ)
        dag.topological_order()  # raises on cycles
        return dag

    @property
    def pred(self) -> list[list[int]]:
        if self._pred is None:
            pred: list[list[int]] = [[] for _ in range(self.n)]
            for u, out in enumerate(self.succ):
                for v in out:
                    pred[v].append(u)
            self._pred = pred
        return self._pred

    def roots(self) -> list[int]:
        return [v for v in range(self.n) if not self.pred[v]]

    def edge_count(self) -> int:
        return sum(len(out) for out in self.succ)

    def topological_order(self) -> list[int]:
        if self._topo is None:
            indeg = [len(p) for p in self.pred]
            queue = deque(v for v in range(self.n) if indeg[v] == 0)
            order = []
            while queue:
                u = queue.popleft()
                order.append(u)
                for v in self.succ[u]:
                    indeg[v] -= 1
                    if indeg[v] == 0:
                        queue.append(v)
            if len(order) != self.n:
                raise ValueError("graph has a cycle")
            self._topo = order
        return self._topo

    def reaches(self, u: int, v: int) -> bool:
        if u == v:
            return True
        seen = {u}
        stack = [u]
        while stack:
            for w in self.succ[stack.pop()]:
                if w == v:
                    return True
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False


def strongly_connected_components(succ: Sequence[Sequence[int]]) -> list[int]:
    """Iterative Tarjan.  Returns ``comp[v]``; components are numbered in the
    order Tarjan completes them, which is a reverse topological order."""
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            out = succ[v]
            if pos < len(out):
                work[-1] = (v, pos + 1)
                w = out[pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def condense_adjacency(succ: Sequence[Sequence[int]]) -> Dag:
    comp = strongly_connected_components(succ)
    ncomp = max(comp, default=-1) + 1
    dag_succ: list[set[int]] = [set() for _ in range(ncomp)]
    for v, out in enumerate(succ):
        cv = comp[v]
        for w in out:
            cw = comp[w]
            if cw != cv:
                dag_succ[cv].add(cw)
    dag = Dag([sorted(s) for s in dag_succ], comp)
    # Tarjan numbering: every DAG edge goes from a higher id to a lower one.
    dag._topo = list(range(ncomp - 1, -1, -1))
    return dag


def condense(view) -> Dag:
    """Condense an :class:`~csreach.indexing.IndexingGraphView` (or anything
    with a ``succ`` adjacency list)."""
    return condense_adjacency(view.succ)
