"""Grail: k randomized post-order interval labelings with pruned DFS fallback.

Labeling *j* comes from a post-order DFS over the DAG whose root order and
child orders are shuffled.  A node's interval is ``[low, rank]`` where
``low`` is the minimum of its own rank and its children's lows, so for every
edge ``u -> v`` and every labeling ``I_j(v) ⊆ I_j(u)``.  Non-containment in
any labeling therefore proves non-reachability; otherwise a DFS that skips
children failing the same test decides exactly.

Each labeling also records the spanning-tree interval ``[tree_low, rank]``
of its DFS; ``v`` inside ``u``'s tree interval is a tree descendant, which
confirms reachability without searching further.
"""

from __future__ import annotations

import random
from typing import Sequence

from .base import SchemeCapabilities
from .dag import Dag

DEFAULT_K = 5


def post_order_labels(dag: Dag, root_order: Sequence[int],
                      child_order: Sequence[Sequence[int]]):
    """One labeling as ``(low, high, tree_low)`` lists.

    ``child_order[u]`` must be a permutation of ``dag.succ[u]``.
    """
    n = dag.n
    low = [0] * n
    high = [0] * n
    tree_low = [0] * n
    visited = [False] * n
    rank = 0
    for root in root_order:
        if visited[root]:
            continue
        visited[root] = True
        tree_low[root] = rank + 1
        stack = [(root, 0)]
        while stack:
            u, pos = stack[-1]
            out = child_order[u]
            if pos < len(out):
                stack[-1] = (u, pos + 1)
                c = out[pos]
                if not visited[c]:
                    visited[c] = True
                    tree_low[c] = rank + 1
                    stack.append((c, 0))
                continue
            stack.pop()
            rank += 1
            lo = rank
            for c in out:
                if low[c] < lo:
                    lo = low[c]
            low[u] = lo
            high[u] = rank
    return low, high, tree_low


class GrailIndex:
    scheme = "grail"
    capabilities = SchemeCapabilities("grail", returns_paths=True)

    def __init__(self, dag: Dag, labelings, seed: int = 0):
        self.dag = dag
        self.seed = seed
        self.k_labels = len(labelings)
        self.lows = [lab[0] for lab in labelings]
        self.highs = [lab[1] for lab in labelings]
        self.tree_lows = [lab[2] for lab in labelings]
        k = self.k_labels
        # flattened (low_0, high_0, low_1, high_1, ...) per node
        self.labels = [
            tuple(x for j in range(k) for x in (self.lows[j][u], self.highs[j][u]))
            for u in range(dag.n)
        ]
        self.tree_labels = [
            tuple(x for j in range(k) for x in (self.tree_lows[j][u], self.highs[j][u]))
            for u in range(dag.n)
        ]

    @classmethod
    def build(cls, dag: Dag, k_labels: int = DEFAULT_K, seed: int = 0) -> "GrailIndex":
        if k_labels < 1:
            raise ValueError("k_labels must be >= 1")
        rng = random.Random(seed)
        roots = dag.roots()
        labelings = []
        for _ in range(k_labels):
            root_order = list(roots)
            rng.shuffle(root_order)
            child_order = []
            for out in dag.succ:
                out = list(out)
                rng.shuffle(out)
                child_order.append(out)
            labelings.append(post_order_labels(dag, root_order, child_order))
        return cls(dag, labelings, seed)

    @classmethod
    def from_orders(cls, dag: Dag, orders) -> "GrailIndex":
        """Labelings from explicit ``(root_order, child_order)`` pairs."""
        return cls(dag, [post_order_labels(dag, r, c) for r, c in orders])

    def interval(self, u: int, j: int) -> tuple[int, int]:
        return self.lows[j][u], self.highs[j][u]

    def may_reach(self, u: int, v: int) -> bool:
        """Containment in every labeling (necessary for reachability)."""
        a = self.labels[u]
        b = self.labels[v]
        for i in range(0, len(a), 2):
            if b[i] < a[i] or b[i + 1] > a[i + 1]:
                return False
        return True

    def reach(self, u: int, v: int) -> bool:
        return self.search(u, v)[0]

    def search(self, u: int, v: int) -> tuple[bool, int]:
        """Exact query; also returns the number of nodes the DFS expanded."""
        if u == v:
            return True, 0
        labels = self.labels
        lv = labels[v]
        width = len(lv)

        def contains(a):
            for i in range(0, width, 2):
                if lv[i] < a[i] or lv[i + 1] > a[i + 1]:
                    return False
            return True

        def tree_contains(t):
            for i in range(1, width, 2):
                if t[i - 1] <= lv[i] <= t[i]:
                    return True
            return False

        if not contains(labels[u]):
            return False, 0
        tree_labels = self.tree_labels
        if tree_contains(tree_labels[u]):
            return True, 0
        succ = self.dag.succ
        seen = {u}
        stack = [u]
        expanded = 0
        while stack:
            x = stack.pop()
            expanded += 1
            for c in succ[x]:
                if c == v:
                    return True, expanded
                if c not in seen:
                    seen.add(c)
                    if contains(labels[c]):
                        if tree_contains(tree_labels[c]):
                            return True, expanded
                        stack.append(c)
        return False, expanded

    def to_payload(self) -> dict:
        return {"k": self.k_labels, "seed": self.seed, "lows": self.lows,
                "highs": self.highs, "tree_lows": self.tree_lows}

    @classmethod
    def from_payload(cls, payload: dict, dag: Dag) -> "GrailIndex":
        labelings = list(zip(payload["lows"], payload["highs"], payload["tree_lows"]))
        return cls(dag, labelings, payload["seed"])


def build_grail(dag: Dag, k_labels: int = DEFAULT_K, seed: int = 0) -> GrailIndex:
    return GrailIndex.build(dag, k_labels, seed)


def grail_query(idx: GrailIndex, dag: Dag, u: int, v: int) -> bool:
    if dag is not idx.dag:
        raise ValueError("index was built for a different DAG")
    return idx.reach(u, v)
