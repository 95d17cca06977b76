"""Program-valid graphs: labels, the in-memory graph, validation and the text format.

A program-valid graph is a directed multigraph whose edges carry one of three
labels: ``eps`` (intra-procedural flow), ``open i`` (call at site *i*) or
``close i`` (return at site *i*).  Vertices are dense integers ``0..n-1`` and
every vertex belongs to exactly one function.

Text format (one directive per line, ``#`` starts a comment)::

    pvg 1
    vertices 3
    k 1
    alpha 1
    func 0 0
    func 1 1
    func 2 0
    edge 0 1 open 1
    edge 1 2 close 1
"""

from __future__ import annotations

import hashlib
from collections import defaultdict
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

FORMAT_VERSION = 1


class StructuralError(ValueError):
    """The graph references vertices or sites outside its declared ranges."""


class ParseError(ValueError):
    def __init__(self, lineno: int, reason: str):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno
        self.reason = reason


class LabelKind(IntEnum):
    EPS = 0
    OPEN = 1
    CLOSE = 2


class Label(NamedTuple):
    kind: LabelKind
    site: int = 0

    @classmethod
    def open(cls, site: int) -> "Label":
        return cls(LabelKind.OPEN, site)

    @classmethod
    def close(cls, site: int) -> "Label":
        return cls(LabelKind.CLOSE, site)

    def __str__(self) -> str:
        if self.kind == LabelKind.EPS:
            return "eps"
        if self.kind == LabelKind.OPEN:
            return f"open {self.site}"
        return f"close {self.site}"

    def pretty(self) -> str:
        if self.kind == LabelKind.EPS:
            return "ε"
        bracket = "⟦" if self.kind == LabelKind.OPEN else "⟧"
        return f"{bracket}{self.site}"


EPS = Label(LabelKind.EPS, 0)


class Edge(NamedTuple):
    src: int
    dst: int
    label: Label


@dataclass(frozen=True)
class ProgramValidGraph:
    vertex_count: int
    func_of: tuple[int, ...]
    edges: tuple[Edge, ...]
    declared_alpha: int = 0
    declared_k: int = 0

    def __post_init__(self):
        check_structure(self)

    @classmethod
    def build(cls, vertex_count: int, func_of: Sequence[int],
              edges: Iterable[tuple[int, int, Label]],
              alpha: int | None = None, k: int | None = None) -> "ProgramValidGraph":
        """Convenience constructor; ``alpha``/``k`` default to the measured values."""
        es = tuple(Edge(s, d, lab) for s, d, lab in edges)
        if k is None:
            k = max((e.label.site for e in es), default=0)
        if alpha is None:
            alpha = boundary_alpha(vertex_count, func_of, es)
        return cls(vertex_count, tuple(func_of), es, alpha, k)

    @property
    def n(self) -> int:
        return self.vertex_count

    @cached_property
    def out_edges(self) -> list[list[int]]:
        """Edge indices leaving each vertex, in edge-list order."""
        out: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, e in enumerate(self.edges):
            out[e.src].append(i)
        return out

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in reversed(list(enumerate(self.edges)))}

    @cached_property
    def fingerprint(self) -> str:
        """sha256 of the canonical text form."""
        return hashlib.sha256(write_graph(self).encode()).hexdigest()

    def function_count(self) -> int:
        return max(self.func_of, default=-1) + 1


def check_structure(g: ProgramValidGraph) -> None:
    n = g.vertex_count
    if n < 0:
        raise StructuralError("negative vertex count")
    if len(g.func_of) != n:
        raise StructuralError(f"func_of has {len(g.func_of)} entries for {n} vertices")
    for v, f in enumerate(g.func_of):
        if f < 0:
            raise StructuralError(f"vertex {v} has negative function id {f}")
    if g.declared_alpha < 0 or g.declared_k < 0:
        raise StructuralError("alpha and k must be non-negative")
    for e in g.edges:
        if not (0 <= e.src < n and 0 <= e.dst < n):
            raise StructuralError(f"edge {e.src}->{e.dst} references a vertex outside 0..{n - 1}")
        if e.label.kind == LabelKind.EPS:
            if e.label.site != 0:
                raise StructuralError(f"eps edge {e.src}->{e.dst} carries a site")
        elif not 1 <= e.label.site <= g.declared_k:
            raise StructuralError(
                f"edge {e.src}->{e.dst} uses site {e.label.site} outside 1..{g.declared_k}")


def boundary_vertices(vertex_count: int, edges: Iterable[Edge]) -> set[int]:
    """Vertices with an incoming call edge or an outgoing return edge."""
    out = set()
    for e in edges:
        if e.label.kind == LabelKind.OPEN:
            out.add(e.dst)
        elif e.label.kind == LabelKind.CLOSE:
            out.add(e.src)
    return out


def boundary_alpha(vertex_count, func_of, edges) -> int:
    per_func: dict[int, int] = defaultdict(int)
    for v in boundary_vertices(vertex_count, edges):
        per_func[func_of[v]] += 1
    return max(per_func.values(), default=0)


@dataclass
class Violation:
    rule: str
    message: str
    where: object = None


@dataclass
class ValidationReport:
    ok: bool
    violations: list[Violation] = field(default_factory=list)
    measured_alpha: int = 0

    def __str__(self) -> str:
        lines = [f"ok {str(self.ok).lower()}", f"measured_alpha {self.measured_alpha}"]
        lines += [f"violation {v.rule} {v.message}" for v in self.violations]
        return "\n".join(lines)


def validate(g: ProgramValidGraph) -> ValidationReport:
    check_structure(g)
    violations = []
    seen: dict[tuple[int, int], set[Label]] = defaultdict(set)
    for e in g.edges:
        if e.label.kind == LabelKind.EPS and g.func_of[e.src] != g.func_of[e.dst]:
            violations.append(Violation(
                "eps-intra", f"eps edge {e.src}->{e.dst} crosses functions "
                f"{g.func_of[e.src]} and {g.func_of[e.dst]}", e))
        if e.src == e.dst and e.label.kind != LabelKind.EPS:
            violations.append(Violation(
                "self-loop", f"self-loop on {e.src} labeled {e.label}", e))
        labels = seen[e.src, e.dst]
        if e.label in labels:
            violations.append(Violation(
                "parallel", f"duplicate edge {e.src}->{e.dst} {e.label}", e))
        labels.add(e.label)

    measured = boundary_alpha(g.vertex_count, g.func_of, g.edges)
    if measured > g.declared_alpha:
        per_func: dict[int, int] = defaultdict(int)
        for v in boundary_vertices(g.vertex_count, g.edges):
            per_func[g.func_of[v]] += 1
        for f in sorted(per_func):
            if per_func[f] > g.declared_alpha:
                violations.append(Violation(
                    "alpha", f"function {f} has {per_func[f]} boundary vertices "
                    f"(declared alpha {g.declared_alpha})", f))
    return ValidationReport(not violations, violations, measured)


def edge_sets(g: ProgramValidGraph) -> tuple[list[Edge], list[Edge], list[Edge]]:
    """Split edges into (eps, open, close), preserving edge-list order."""
    parts: tuple[list[Edge], list[Edge], list[Edge]] = ([], [], [])
    for e in g.edges:
        parts[e.label.kind].append(e)
    return parts


# -- text format -------------------------------------------------------------

def write_graph(g: ProgramValidGraph) -> str:
    lines = [f"pvg {FORMAT_VERSION}", f"vertices {g.vertex_count}",
             f"k {g.declared_k}", f"alpha {g.declared_alpha}"]
    lines += [f"func {v} {f}" for v, f in enumerate(g.func_of)]
    lines += [f"edge {e.src} {e.dst} {e.label}" for e in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def canonicalize(g: ProgramValidGraph) -> ProgramValidGraph:
    return ProgramValidGraph(g.vertex_count, g.func_of, tuple(sorted(g.edges)),
                             g.declared_alpha, g.declared_k)


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"expected integer {what}, got {tok!r}") from None


def parse_graph(text: str) -> ProgramValidGraph:
    header: dict[str, int] = {}
    funcs: dict[int, int] = {}
    edges: list[Edge] = []
    seen_magic = False

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        word = toks[0]
        if not seen_magic:
            if word != "pvg" or len(toks) != 2:
                raise ParseError(lineno, "expected 'pvg <version>' header")
            if _int(toks[1], lineno, "version") != FORMAT_VERSION:
                raise ParseError(lineno, f"unsupported format version {toks[1]}")
            seen_magic = True
            continue
        if word in ("vertices", "k", "alpha"):
            if len(toks) != 2:
                raise ParseError(lineno, f"'{word}' takes one argument")
            if word in header:
                raise ParseError(lineno, f"duplicate '{word}'")
            val = _int(toks[1], lineno, word)
            if val < 0:
                raise ParseError(lineno, f"'{word}' must be non-negative")
            header[word] = val
        elif word == "func":
            if "vertices" not in header:
                raise ParseError(lineno, "'func' before 'vertices'")
            if len(toks) != 3:
                raise ParseError(lineno, "'func' takes <vid> <fid>")
            v, f = _int(toks[1], lineno, "vid"), _int(toks[2], lineno, "fid")
            if not 0 <= v < header["vertices"]:
                raise ParseError(lineno, f"vertex {v} out of range")
            if f < 0:
                raise ParseError(lineno, f"negative function id {f}")
            if v in funcs:
                raise ParseError(lineno, f"duplicate func for vertex {v}")
            funcs[v] = f
        elif word == "edge":
            if "vertices" not in header or "k" not in header:
                raise ParseError(lineno, "'edge' before 'vertices'/'k'")
            if len(toks) not in (4, 5):
                raise ParseError(lineno, "'edge' takes <src> <dst> eps|open <site>|close <site>")
            n = header["vertices"]
            s, d = _int(toks[1], lineno, "src"), _int(toks[2], lineno, "dst")
            for v in (s, d):
                if not 0 <= v < n:
                    raise ParseError(lineno, f"vertex {v} out of range 0..{n - 1}")
            kind = toks[3]
            if kind == "eps":
                if len(toks) != 4:
                    raise ParseError(lineno, "eps edge takes no site")
                label = EPS
            elif kind in ("open", "close"):
                if len(toks) != 5:
                    raise ParseError(lineno, f"{kind} edge needs a site")
                site = _int(toks[4], lineno, "site")
                if not 1 <= site <= header["k"]:
                    raise ParseError(lineno, f"site {site} outside 1..{header['k']}")
                label = Label.open(site) if kind == "open" else Label.close(site)
            else:
                raise ParseError(lineno, f"unknown edge label {kind!r}")
            edges.append(Edge(s, d, label))
        else:
            raise ParseError(lineno, f"unknown directive {word!r}")

    if not seen_magic:
        raise ParseError(0, "empty input (missing 'pvg' header)")
    for word in ("vertices", "k", "alpha"):
        if word not in header:
            raise ParseError(0, f"missing '{word}'")
    n = header["vertices"]
    missing = [v for v in range(n) if v not in funcs]
    if missing:
        raise ParseError(0, f"no 'func' line for vertex {missing[0]}")
    return ProgramValidGraph(n, tuple(funcs[v] for v in range(n)), tuple(edges),
                             header["alpha"], header["k"])
