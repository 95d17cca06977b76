"""Summary edges over call sites.

A summary edge ``(c, r)`` at site *i* records that the caller-side vertex
``c`` reaches the caller-side vertex ``r`` through a call: ``c --open i-->
entry``, a same-level path ``entry ~> exit`` whose labels are balanced, and
``exit --close i--> r``.

The same-level relation is computed with a worklist over ``(entry, y)`` pairs,
in the spirit of the Reps/Horwitz/Sagiv path-edge tabulation.  Every pair
keeps the first predecessor step that produced it so that any summary can be
expanded back into a concrete path.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import NamedTuple

from .graph import LabelKind, ProgramValidGraph


class SummaryEdge(NamedTuple):
    source: int
    target: int
    site: int
    entry: int
    exit: int


class Step(NamedTuple):
    """How a same-level pair ``(entry, y)`` was first reached.

    ``ref >= 0`` is the index of an eps edge in the graph; ``ref < 0`` denotes
    summary edge ``-ref - 1``.
    """

    prev: int
    ref: int


def summary_ref(index: int) -> int:
    return -index - 1


@dataclass
class SummaryEdgeSet:
    edges: list[SummaryEdge]
    # entry -> {y: first step reaching y, or None for y == entry}
    same_level: dict[int, dict[int, Step | None]]
    # position of each edge in discovery order; refs in `same_level` use these ids
    discovery: list[SummaryEdge]

    def __len__(self) -> int:
        return len(self.edges)

    def pairs(self) -> list[tuple[int, int]]:
        return [(s.source, s.target) for s in self.edges]

    def dump(self) -> str:
        return "".join(f"{s.source} {s.target} {s.site}\n" for s in self.edges)

    def same_level_chain(self, entry: int, exit: int) -> list[int]:
        """Edge refs of the stored same-level path from ``entry`` to ``exit``."""
        table = self.same_level.get(entry)
        if table is None or exit not in table:
            raise LookupError(f"no same-level witness {entry} ~> {exit}")
        refs = []
        y = exit
        while True:
            step = table[y]
            if step is None:
                break
            refs.append(step.ref)
            y = step.prev
            if len(refs) > len(table):
                raise RuntimeError(f"cyclic witness links under entry {entry}")
        refs.reverse()
        return refs


def compute_summaries(g: ProgramValidGraph) -> SummaryEdgeSet:
    eps_succ: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    # head of an open edge -> site -> callers
    opens_into: dict[int, dict[int, list[int]]] = defaultdict(lambda: defaultdict(list))
    # tail of a close edge -> site -> return points
    closes_from: dict[int, dict[int, list[int]]] = defaultdict(lambda: defaultdict(list))
    for i, e in enumerate(g.edges):
        kind = e.label.kind
        if kind == LabelKind.EPS:
            eps_succ[e.src].append((e.dst, i))
        elif kind == LabelKind.OPEN:
            opens_into[e.dst][e.label.site].append(e.src)
        else:
            closes_from[e.src][e.label.site].append(e.dst)

    summ_succ: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    found: list[SummaryEdge] = []
    seen_pairs: set[tuple[int, int]] = set()

    same_level: dict[int, dict[int, Step | None]] = {}
    reached_from: list[list[int]] = [[] for _ in range(g.n)]  # y -> entries x with SL(x, y)
    work: deque[tuple[int, int]] = deque()

    def add(x, y, step):
        table = same_level[x]
        if y not in table:
            table[y] = step
            reached_from[y].append(x)
            work.append((x, y))

    for entry in sorted(opens_into):
        same_level[entry] = {}
        add(entry, entry, None)

    while work:
        x, y = work.popleft()
        for z, ei in eps_succ[y]:
            add(x, z, Step(y, ei))
        for z, si in summ_succ[y]:
            add(x, z, Step(y, summary_ref(si)))

        returns = closes_from.get(y)
        if not returns:
            continue
        calls = opens_into[x]
        for site, rets in returns.items():
            callers = calls.get(site)
            if not callers:
                continue
            for c in callers:
                for r in rets:
                    if (c, r) in seen_pairs:
                        continue
                    seen_pairs.add((c, r))
                    idx = len(found)
                    found.append(SummaryEdge(c, r, site, x, y))
                    summ_succ[c].append((r, idx))
                    for x2 in list(reached_from[c]):
                        add(x2, r, Step(c, summary_ref(idx)))

    return SummaryEdgeSet(sorted(found), same_level, found)
