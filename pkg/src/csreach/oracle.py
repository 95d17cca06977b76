"""Ground truth for context-sensitive reachability.

Three independent routes live here:

* :func:`cfl_closure` saturates the binarized extended-Dyck grammar over the
  graph (cubic; small graphs only).
* :func:`derives` / :func:`cyk_derives` decide membership of a single label
  string.
* :class:`Tabulator` is the classic summary-edge traversal that answers one
  query at a time without any index.

Grammar (``O_i``/``C_i`` stand for the call/return terminals of site *i*)::

    S -> P N
    P -> M P | C_i P | eps
    N -> M N | O_i N | eps
    M -> O_i T_i | M M | eps
    T_i -> M C_i
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .graph import Label, LabelKind, ProgramValidGraph
from .summary import SummaryEdgeSet

S, P, N, M = "S", "P", "N", "M"
NULLABLE = (S, P, N, M)
DEFAULT_MAX_VERTICES = 300


class OracleTooLarge(RuntimeError):
    pass


def _open(i):
    return ("O", i)


def _close(i):
    return ("C", i)


def _inner(i):
    return ("T", i)


def binarized_productions(k: int) -> list[tuple[Hashable, Hashable, Hashable]]:
    """Binary productions ``A -> B C`` as ``(A, B, C)`` for sites ``1..k``."""
    prods = [(S, P, N), (P, M, P), (N, M, N), (M, M, M)]
    for i in range(1, k + 1):
        prods += [
            (P, _close(i), P),
            (N, _open(i), N),
            (M, _open(i), _inner(i)),
            (_inner(i), M, _close(i)),
        ]
    return prods


def _terminal(label: Label):
    if label.kind == LabelKind.OPEN:
        return _open(label.site)
    return _close(label.site)


@dataclass
class ReachRelation:
    """Saturated relations per nonterminal; only S is meant for callers."""

    relations: dict[Hashable, set[tuple[int, int]]]

    @property
    def s(self) -> set[tuple[int, int]]:
        return self.relations[S]

    def reachable(self, u: int, v: int) -> bool:
        return (u, v) in self.relations[S]

    def __getitem__(self, nt) -> set[tuple[int, int]]:
        return self.relations.get(nt, set())

    def dump(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in sorted(self.relations[S]))


def cfl_closure(g: ProgramValidGraph, max_vertices: int = DEFAULT_MAX_VERTICES) -> ReachRelation:
    if g.n > max_vertices:
        raise OracleTooLarge(
            f"oracle limited to {max_vertices} vertices, graph has {g.n}")

    sites = max(g.declared_k, max((e.label.site for e in g.edges), default=0))
    prods = binarized_productions(sites)
    by_left = defaultdict(list)   # B -> [(A, C)]
    by_right = defaultdict(list)  # C -> [(A, B)]
    for a, b, c in prods:
        by_left[b].append((a, c))
        by_right[c].append((a, b))

    fwd: dict[Hashable, dict[int, set[int]]] = defaultdict(lambda: defaultdict(set))
    bwd: dict[Hashable, dict[int, set[int]]] = defaultdict(lambda: defaultdict(set))
    work: deque = deque()

    def add(nt, u, v):
        row = fwd[nt][u]
        if v not in row:
            row.add(v)
            bwd[nt][v].add(u)
            work.append((nt, u, v))

    for v in range(g.n):
        for nt in NULLABLE:
            add(nt, v, v)
    for e in g.edges:
        if e.label.kind == LabelKind.EPS:
            for nt in NULLABLE:
                add(nt, e.src, e.dst)
        else:
            add(_terminal(e.label), e.src, e.dst)

    while work:
        nt, u, v = work.popleft()
        for a, c in by_left.get(nt, ()):
            for w in list(fwd[c].get(v, ())):
                add(a, u, w)
        for a, b in by_right.get(nt, ()):
            for w in list(bwd[b].get(u, ())):
                add(a, w, v)

    relations = {
        nt: {(u, v) for u, row in table.items() for v in row}
        for nt, table in fwd.items()
    }
    for nt in NULLABLE:
        relations.setdefault(nt, set())
    return ReachRelation(relations)


# -- string membership --------------------------------------------------------

def derives(labels: Iterable[Label], start: str = S) -> bool:
    """Is the label string (eps deleted) in L(start)?

    Linear-time pushdown recognizer.  Unmatched returns may only appear while
    no call is pending; unmatched calls may only remain at the end.  ``P``
    forbids pending calls, ``N`` forbids unmatched returns, ``M`` forbids both.
    """
    if start not in NULLABLE:
        raise ValueError(f"unknown start symbol {start!r}")
    allow_unmatched_close = start in (S, P)
    allow_pending_open = start in (S, N)
    stack: list[int] = []
    for lab in labels:
        if lab.kind == LabelKind.OPEN:
            stack.append(lab.site)
        elif lab.kind == LabelKind.CLOSE:
            if stack:
                if stack.pop() != lab.site:
                    return False
            elif not allow_unmatched_close:
                return False
    return allow_pending_open or not stack


def cyk_derives(labels: Sequence[Label], start: str = S, max_length: int = 200) -> bool:
    """CYK membership over the binarized grammar; cubic, for cross-checking."""
    word = [lab for lab in labels if lab.kind != LabelKind.EPS]
    n = len(word)
    if n > max_length:
        raise OracleTooLarge(f"CYK limited to {max_length} symbols, got {n}")
    if n == 0:
        return start in NULLABLE
    sites = max(lab.site for lab in word)
    prods = binarized_productions(sites)

    # spans of length 0 derive every nullable symbol; fold them in so that the
    # binary productions only combine non-empty spans.
    def unit_closure(syms: set) -> set:
        # A -> B C with C nullable gives A =>* B; likewise for B nullable.
        changed = True
        while changed:
            changed = False
            for a, b, c in prods:
                if a in syms:
                    continue
                if (b in syms and c in NULLABLE) or (c in syms and b in NULLABLE):
                    syms.add(a)
                    changed = True
        return syms

    table = [[set() for _ in range(n + 1)] for _ in range(n)]
    for i, lab in enumerate(word):
        table[i][i + 1] = unit_closure({_terminal(lab)})
    for length in range(2, n + 1):
        for i in range(0, n - length + 1):
            j = i + length
            cell = set()
            for split in range(i + 1, j):
                left, right = table[i][split], table[split][j]
                if not left or not right:
                    continue
                for a, b, c in prods:
                    if b in left and c in right:
                        cell.add(a)
            table[i][j] = unit_closure(cell)
    return start in table[0][n]


# -- tabulation baseline -------------------------------------------------------

class Tabulator:
    """Per-query summary-edge traversal with no precomputed reachability.

    ``query(s, t)`` runs two visited-set searches: the return phase follows
    eps, return and summary edges and switches to the call phase on a call
    edge; the call phase follows everything except return edges.
    """

    def __init__(self, g: ProgramValidGraph, summaries: SummaryEdgeSet):
        self.n = g.n
        # (targets in the return phase, targets that switch to the call phase)
        ret_phase: list[list[int]] = [[] for _ in range(g.n)]
        to_call: list[list[int]] = [[] for _ in range(g.n)]
        call_phase: list[list[int]] = [[] for _ in range(g.n)]
        for e in g.edges:
            kind = e.label.kind
            if kind == LabelKind.OPEN:
                to_call[e.src].append(e.dst)
                call_phase[e.src].append(e.dst)
            elif kind == LabelKind.CLOSE:
                ret_phase[e.src].append(e.dst)
            else:
                ret_phase[e.src].append(e.dst)
                call_phase[e.src].append(e.dst)
        for se in summaries.edges:
            ret_phase[se.source].append(se.target)
            call_phase[se.source].append(se.target)
        self._ret = ret_phase
        self._to_call = to_call
        self._call = call_phase

    def query(self, s: int, t: int) -> bool:
        if s == t:
            return True
        seen_ret = {s}
        seen_call = set()
        ret_stack = [s]
        call_stack = []
        ret, to_call, call = self._ret, self._to_call, self._call
        while ret_stack or call_stack:
            if call_stack:
                x = call_stack.pop()
                for y in call[x]:
                    if y not in seen_call:
                        if y == t:
                            return True
                        seen_call.add(y)
                        call_stack.append(y)
                continue
            x = ret_stack.pop()
            for y in ret[x]:
                if y not in seen_ret:
                    if y == t:
                        return True
                    seen_ret.add(y)
                    ret_stack.append(y)
            for y in to_call[x]:
                if y not in seen_call:
                    if y == t:
                        return True
                    seen_call.add(y)
                    call_stack.append(y)
        return False


def tabulation_query(g: ProgramValidGraph, summaries: SummaryEdgeSet, s: int, t: int) -> bool:
    return Tabulator(g, summaries).query(s, t)
