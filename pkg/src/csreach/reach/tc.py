"""Full transitive closure as one bit row per DAG node."""

from __future__ import annotations

from .base import IndexGuardError, SchemeCapabilities
from .dag import Dag

DEFAULT_MAX_COMPONENTS = 100_000


class TcIndex:
    scheme = "tc"
    capabilities = SchemeCapabilities("tc", returns_paths=False)

    def __init__(self, rows: list[int]):
        self.rows = rows

    @classmethod
    def build(cls, dag: Dag, max_components: int = DEFAULT_MAX_COMPONENTS) -> "TcIndex":
        if dag.n > max_components:
            raise IndexGuardError(
                f"transitive closure over {dag.n} components needs ~{dag.n * dag.n // 8} bytes "
                f"(limit {max_components} components); use --scheme grail or dual")
        rows = [0] * dag.n
        for u in reversed(dag.topological_order()):
            bits = 1 << u
            for v in dag.succ[u]:
                bits |= rows[v]
            rows[u] = bits
        return cls(rows)

    def reach(self, u: int, v: int) -> bool:
        return (self.rows[u] >> v) & 1 == 1

    def may_reach(self, u: int, v: int) -> bool:
        return self.reach(u, v)

    def to_payload(self) -> dict:
        return {"rows": [format(r, "x") for r in self.rows]}

    @classmethod
    def from_payload(cls, payload: dict, dag: Dag) -> "TcIndex":
        return cls([int(r, 16) for r in payload["rows"]])


def build_tc(dag: Dag, max_components: int = DEFAULT_MAX_COMPONENTS) -> TcIndex:
    return TcIndex.build(dag, max_components)


def tc_query(idx: TcIndex, u: int, v: int) -> bool:
    return idx.reach(u, v)
