"""Context-sensitive reachability queries over an indexed indexing graph."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import reach
from .graph import Edge, Label, ProgramValidGraph
from .indexing import BRIDGE, IndexingGraphView, dst_id, src_id
from .reach import container
from .summary import SummaryEdge, SummaryEdgeSet, compute_summaries


class SchemeLacksPaths(RuntimeError):
    pass


@dataclass
class WitnessPath:
    vertices: list[int]
    labels: list[Label] = field(default_factory=list)

    def edges(self) -> list[Edge]:
        return [Edge(a, b, lab) for a, b, lab in zip(self.vertices, self.vertices[1:], self.labels)]

    def label_string(self) -> str:
        return "".join(lab.pretty() for lab in self.labels)

    def check(self, g: ProgramValidGraph) -> bool:
        """Every step is an edge of ``g`` with the recorded label."""
        if len(self.labels) != len(self.vertices) - 1:
            return False
        index = g.edge_index
        return all(e in index for e in self.edges())


class QuerySession:
    """Graph, summaries, indexing view, condensed DAG and one reachability index."""

    def __init__(self, graph: ProgramValidGraph, summaries: SummaryEdgeSet,
                 view: IndexingGraphView, dag: reach.Dag, index):
        self.graph = graph
        self.summaries = summaries
        self.view = view
        self.dag = dag
        self.index = index
        self.capabilities = index.capabilities
        self._comp = dag.comp_of

    @classmethod
    def build(cls, graph: ProgramValidGraph, scheme: str = "grail", *, seed: int = 0,
              k_labels: int = 5, summaries: SummaryEdgeSet | None = None,
              max_components: int | None = None,
              max_non_tree: int | None = None) -> "QuerySession":
        if summaries is None:
            summaries = compute_summaries(graph)
        view = IndexingGraphView(graph, summaries)
        dag = reach.condense(view)
        index = reach.build_index(scheme, dag, seed=seed, k_labels=k_labels,
                                  max_components=max_components, max_non_tree=max_non_tree)
        return cls(graph, summaries, view, dag, index)

    @classmethod
    def load(cls, graph: ProgramValidGraph, data: bytes) -> "QuerySession":
        scheme, _seed, payload = container.unpack(data, graph.fingerprint)
        summaries = compute_summaries(graph)
        view = IndexingGraphView(graph, summaries)
        dag = reach.condense(view)
        index = reach.SCHEMES[scheme].from_payload(payload, dag)
        return cls(graph, summaries, view, dag, index)

    def serialize(self) -> bytes:
        seed = getattr(self.index, "seed", 0)
        return container.pack(self.index.scheme, seed, self.graph.fingerprint,
                              self.index.to_payload())

    @property
    def scheme(self) -> str:
        return self.index.scheme

    def query(self, u: int, v: int) -> bool:
        cu = self._comp[2 * u]
        cv = self._comp[2 * v + 1]
        return cu == cv or self.index.reach(cu, cv)

    def query_path(self, u: int, v: int) -> WitnessPath | None:
        if not self.capabilities.returns_paths:
            raise SchemeLacksPaths(
                f"scheme {self.scheme!r} answers yes/no only; build with grail to get paths")
        refs = self._index_path(src_id(u), dst_id(v))
        if refs is None:
            return None
        return self._expand(u, refs)

    def _index_path(self, start: int, goal: int) -> list | None:
        """Edge refs along a DFS path ``start -> goal`` pruned by the index."""
        comp = self._comp
        cgoal = comp[goal]
        may_reach = self.index.may_reach
        if comp[start] != cgoal and not may_reach(comp[start], cgoal):
            return None
        succ = self.view.succ
        succ_ref = self.view.succ_ref
        parent = {start: None}
        stack = [start]
        while stack and goal not in parent:
            x = stack.pop()
            for y, ref in zip(succ[x], succ_ref[x]):
                if y in parent:
                    continue
                cy = comp[y]
                if cy != cgoal and not may_reach(cy, cgoal):
                    continue
                parent[y] = (x, ref)
                if y == goal:
                    break
                stack.append(y)
        if goal not in parent:
            return None
        refs = []
        y = goal
        while parent[y] is not None:
            x, ref = parent[y]
            refs.append(ref)
            y = x
        refs.reverse()
        return refs

    def _expand(self, start: int, refs: list) -> WitnessPath:
        g = self.graph
        discovery = self.summaries.discovery
        depth_cap = 4 * max(g.n, 1)
        path = WitnessPath([start])
        work = [(ref, 0) for ref in reversed(refs) if ref is not BRIDGE]
        while work:
            ref, depth = work.pop()
            if ref >= 0:
                e = g.edges[ref]
                if e.src != path.vertices[-1]:
                    raise RuntimeError(f"witness edge {e} does not continue path at "
                                       f"{path.vertices[-1]}")
                path.vertices.append(e.dst)
                path.labels.append(e.label)
                continue
            if depth >= depth_cap:
                raise RuntimeError("summary expansion exceeded depth cap")
            inner = self._summary_refs(discovery[-ref - 1])
            work.extend((r, depth + 1) for r in reversed(inner))
        return path

    def _summary_refs(self, se: SummaryEdge) -> list[int]:
        index = self.graph.edge_index
        try:
            open_ref = index[Edge(se.source, se.entry, Label.open(se.site))]
            close_ref = index[Edge(se.exit, se.target, Label.close(se.site))]
            chain = self.summaries.same_level_chain(se.entry, se.exit)
        except (KeyError, LookupError) as exc:
            raise RuntimeError(f"missing witness for summary {se}") from exc
        return [open_ref, *chain, close_ref]

    def expand_summary(self, se: SummaryEdge) -> WitnessPath:
        return self._expand(se.source, self._summary_refs(se))


def cs_query(session: QuerySession, u: int, v: int) -> bool:
    return session.query(u, v)


def cs_query_path(session: QuerySession, u: int, v: int) -> WitnessPath | None:
    return session.query_path(u, v)


def expand_summary(session: QuerySession, se: SummaryEdge) -> WitnessPath:
    return session.expand_summary(se)
