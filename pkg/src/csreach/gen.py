"""Seeded random program-valid graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import EPS, Edge, Label, ProgramValidGraph


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class GenParams:
    functions: int = 6
    vertices_per_function: tuple[int, int] = (4, 8)
    eps_edge_density: float = 1.2
    call_sites: int = 10
    alpha: int = 2
    seed: int = 0
    allow_recursion: bool = False

    def check(self) -> None:
        vmin, vmax = self.vertices_per_function
        if min(self.functions, vmin, vmax, self.call_sites, self.alpha) < 0 \
                or self.eps_edge_density < 0:
            raise ParameterError("counts and density must be non-negative")
        if vmin > vmax:
            raise ParameterError(f"vertices_per_function min {vmin} > max {vmax}")
        if self.call_sites == 0:
            return
        if self.alpha < 1:
            raise ParameterError("alpha must be >= 1 when there are call sites")
        if vmin < 1:
            raise ParameterError("functions need at least one vertex when there are call sites")
        if self.functions < 2 and not self.allow_recursion:
            raise ParameterError("call sites need two functions unless recursion is allowed")
        if self.call_sites > self.functions * vmin:
            raise ParameterError(
                f"{self.call_sites} call sites exceed the guaranteed vertex count "
                f"{self.functions * vmin}")


def generate(p: GenParams) -> ProgramValidGraph:
    p.check()
    rng = random.Random(p.seed)
    vmin, vmax = p.vertices_per_function

    members: list[list[int]] = []
    func_of: list[int] = []
    for f in range(p.functions):
        size = rng.randint(vmin, vmax)
        members.append(list(range(len(func_of), len(func_of) + size)))
        func_of.extend([f] * size)

    edges: set[Edge] = set()
    for verts in members:
        for _ in range(round(p.eps_edge_density * len(verts))):
            edges.add(Edge(rng.choice(verts), rng.choice(verts), EPS))

    # formal-in / formal-out vertices, drawn from at most `alpha` boundary vertices
    entries: list[list[int]] = []
    exits: list[list[int]] = []
    for verts in members:
        if not verts or p.alpha == 0:
            entries.append([])
            exits.append([])
            continue
        boundary = rng.sample(verts, min(p.alpha, len(verts)))
        entries.append(rng.sample(boundary, rng.randint(1, len(boundary))))
        exits.append(rng.sample(boundary, rng.randint(1, len(boundary))))

    for site in range(1, p.call_sites + 1):
        caller, callee = _pick_call(rng, p)
        callers = members[caller]
        for entry in rng.sample(entries[callee], rng.randint(1, len(entries[callee]))):
            src = _pick_other(rng, callers, entry)
            if src is not None:
                edges.add(Edge(src, entry, Label.open(site)))
        for exit in rng.sample(exits[callee], rng.randint(1, len(exits[callee]))):
            dst = _pick_other(rng, callers, exit)
            if dst is not None:
                edges.add(Edge(exit, dst, Label.close(site)))

    return ProgramValidGraph(len(func_of), tuple(func_of), tuple(sorted(edges)),
                             p.alpha, p.call_sites)


def _pick_call(rng: random.Random, p: GenParams) -> tuple[int, int]:
    nf = p.functions
    if nf == 1:
        return 0, 0
    if p.allow_recursion and rng.random() < 0.1:
        caller = rng.randrange(nf)
        return caller, rng.randint(0, caller)
    caller = rng.randrange(nf - 1)
    return caller, rng.randint(caller + 1, nf - 1)


def _pick_other(rng: random.Random, verts: list[int], avoid: int) -> int | None:
    v = rng.choice(verts)
    if v != avoid:
        return v
    others = [w for w in verts if w != avoid]
    return rng.choice(others) if others else None


def corpus_params(seed: int) -> GenParams:
    """The differential-testing family: 20-56 vertices, alpha cycling 1..3,
    recursion on even seeds."""
    functions = 5 + seed % 4
    return GenParams(
        functions=functions,
        vertices_per_function=(4, 7),
        eps_edge_density=1.2,
        call_sites=2 * functions,
        alpha=1 + seed % 3,
        seed=seed,
        allow_recursion=seed % 2 == 0,
    )


def large_params(seed: int = 0, functions: int = 10_500) -> GenParams:
    """Roughly 10 vertices and 21 edges per function."""
    return GenParams(
        functions=functions,
        vertices_per_function=(6, 14),
        eps_edge_density=1.5,
        call_sites=3 * functions,
        alpha=3,
        seed=seed,
        allow_recursion=True,
    )
