"""Index build cost and batched query timing against the tabulation baseline."""

from __future__ import annotations

import csv
import io
import logging
import random
import statistics
import time
from dataclasses import dataclass, field

from .graph import ProgramValidGraph
from .indexing import IndexingGraphView
from .oracle import Tabulator
from .query import QuerySession
from .reach import IndexGuardError
from .summary import compute_summaries

log = logging.getLogger(__name__)

CSV_HEADER = ["graph", "vertices", "edges", "summaries", "scheme", "build_ms", "index_bytes",
              "batch", "class", "n", "total_ms", "speedup_vs_tabulation"]
TIMING_COLUMNS = {"build_ms", "total_ms", "speedup_vs_tabulation"}


@dataclass
class QuerySample:
    reachable: list[tuple[int, int]]
    unreachable: list[tuple[int, int]]
    attempts: int
    complete: bool


def sample_query_pairs(session: QuerySession, n_reach: int, n_unreach: int, seed: int,
                       budget: int | None = None) -> QuerySample:
    """Uniform rejection sampling of vertex pairs, split by the session's answer."""
    n = session.graph.n
    if budget is None:
        budget = 200 * (n_reach + n_unreach) + 1000
    rng = random.Random(seed)
    reach_pairs: list[tuple[int, int]] = []
    unreach_pairs: list[tuple[int, int]] = []
    attempts = 0
    while (len(reach_pairs) < n_reach or len(unreach_pairs) < n_unreach) \
            and attempts < budget and n > 0:
        attempts += 1
        u = rng.randrange(n)
        v = rng.randrange(n)
        if session.query(u, v):
            if len(reach_pairs) < n_reach:
                reach_pairs.append((u, v))
        elif len(unreach_pairs) < n_unreach:
            unreach_pairs.append((u, v))
    complete = len(reach_pairs) == n_reach and len(unreach_pairs) == n_unreach
    if not complete:
        log.warning("pair sampling stopped after %d attempts: %d/%d reachable, %d/%d unreachable",
                    attempts, len(reach_pairs), n_reach, len(unreach_pairs), n_unreach)
    return QuerySample(reach_pairs, unreach_pairs, attempts, complete)


def time_batch(fn, pairs, repeats: int, expected: bool | None = None,
               label: str = "") -> float:
    """Median wall-clock milliseconds for answering the whole batch.

    With ``expected`` set, every answer of every run is checked after its
    clock stops.
    """
    runs = []
    for _ in range(max(repeats, 1)):
        start = time.perf_counter()
        answers = [fn(u, v) for u, v in pairs]
        runs.append((time.perf_counter() - start) * 1000.0)
        if expected is not None:
            for (u, v), got in zip(pairs, answers):
                if bool(got) != expected:
                    raise AssertionError(f"{label} disagrees with sampled label on {(u, v)}")
    return statistics.median(runs)


@dataclass
class SchemeResult:
    scheme: str
    build_ms: float = 0.0
    index_bytes: int = 0
    error: str | None = None
    unreachable_pruned: float | None = None


@dataclass
class BenchReport:
    graph: str
    vertices: int
    edges: int
    summaries: int
    summary_ms: float
    index_vertices: int
    index_edges: int
    schemes: list[SchemeResult] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)
    sample: QuerySample | None = None

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.DictWriter(out, CSV_HEADER, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(row)
        return out.getvalue()

    def speedup(self, scheme: str, cls: str, batch: str = "bool") -> float | None:
        for row in self.rows:
            if (row["scheme"], row["class"], row["batch"]) == (scheme, cls, batch):
                return row["speedup_vs_tabulation"]
        return None

    def total_ms(self, scheme: str, cls: str, batch: str = "bool") -> float | None:
        for row in self.rows:
            if (row["scheme"], row["class"], row["batch"]) == (scheme, cls, batch):
                return row["total_ms"]
        return None

    def summary(self) -> str:
        lines = [
            f"graph {self.graph}: {self.vertices} vertices, {self.edges} edges",
            f"summary edges {self.summaries} in {self.summary_ms:.1f} ms",
            f"indexing graph {self.index_vertices} vertices, {self.index_edges} edges",
        ]
        if self.sample is not None:
            lines.append(f"sampled {len(self.sample.reachable)} reachable / "
                         f"{len(self.sample.unreachable)} unreachable pairs "
                         f"in {self.sample.attempts} attempts")
        for res in self.schemes:
            if res.error:
                lines.append(f"{res.scheme}: not built ({res.error})")
                continue
            line = f"{res.scheme}: build {res.build_ms:.1f} ms, index {res.index_bytes} bytes"
            if res.unreachable_pruned is not None:
                line += f", {100 * res.unreachable_pruned:.1f}% of unreachable answered by labels alone"
            lines.append(line)
        for row in self.rows:
            sp = row["speedup_vs_tabulation"]
            lines.append(f"  {row['scheme']:<10} {row['batch']:<4} {row['class']:<4} "
                         f"n={row['n']:<6} {row['total_ms']:10.2f} ms  speedup {sp:.1f}x")
        return "\n".join(lines)


def run_bench(graph: ProgramValidGraph, schemes, n_reach: int = 1000, n_unreach: int = 1000,
              repeats: int = 3, seed: int = 0, name: str = "graph", k_labels: int = 5,
              max_components: int | None = None, max_non_tree: int | None = None,
              paths: bool = True) -> BenchReport:
    start = time.perf_counter()
    summaries = compute_summaries(graph)
    summary_ms = (time.perf_counter() - start) * 1000.0
    view = IndexingGraphView(graph, summaries)
    iv, ie = view.stats()
    report = BenchReport(name, graph.n, len(graph.edges), len(summaries), summary_ms, iv, ie)

    sessions: dict[str, QuerySession] = {}
    for scheme in schemes:
        res = SchemeResult(scheme)
        start = time.perf_counter()
        try:
            session = QuerySession.build(graph, scheme, seed=seed, k_labels=k_labels,
                                         summaries=summaries, max_components=max_components,
                                         max_non_tree=max_non_tree)
        except IndexGuardError as exc:
            res.error = str(exc)
            report.schemes.append(res)
            continue
        res.build_ms = (time.perf_counter() - start) * 1000.0
        res.index_bytes = len(session.serialize())
        sessions[scheme] = session
        report.schemes.append(res)

    if not sessions:
        return report

    sample = sample_query_pairs(next(iter(sessions.values())), n_reach, n_unreach, seed)
    report.sample = sample
    classes = {"R": sample.reachable, "notR": sample.unreachable}
    expected = {"R": True, "notR": False}

    tab = Tabulator(graph, summaries)
    base = {}
    for cls, pairs in classes.items():
        base[cls] = time_batch(tab.query, pairs, repeats, expected[cls], "tabulation")
        report.rows.append(_row(report, "tabulation", summary_ms, 0, "bool", cls,
                                len(pairs), base[cls], 1.0))

    for res in report.schemes:
        session = sessions.get(res.scheme)
        if session is None:
            continue
        for cls, pairs in classes.items():
            total = time_batch(session.query, pairs, repeats, expected[cls], res.scheme)
            report.rows.append(_row(report, res.scheme, res.build_ms, res.index_bytes, "bool",
                                    cls, len(pairs), total, _ratio(base[cls], total)))
        if res.scheme == "grail":
            index = session.index
            comp = session.dag.comp_of
            pruned = sum(1 for u, v in sample.unreachable
                         if index.search(comp[2 * u], comp[2 * v + 1])[1] == 0)
            res.unreachable_pruned = pruned / len(sample.unreachable) if sample.unreachable else None
        if paths and session.capabilities.returns_paths:
            for cls, pairs in classes.items():
                # query_path returns None exactly when unreachable
                total = time_batch(session.query_path, pairs, repeats, expected[cls],
                                   f"{res.scheme} paths")
                report.rows.append(_row(report, res.scheme, res.build_ms, res.index_bytes,
                                        "path", cls, len(pairs), total,
                                        _ratio(base[cls], total)))
    return report


def _ratio(base: float, total: float) -> float:
    return base / total if total > 0 else float("inf")


def _row(report, scheme, build_ms, index_bytes, batch, cls, n, total_ms, speedup) -> dict:
    return {
        "graph": report.graph, "vertices": report.vertices, "edges": report.edges,
        "summaries": report.summaries, "scheme": scheme, "build_ms": round(build_ms, 3),
        "index_bytes": index_bytes, "batch": batch, "class": cls, "n": n,
        "total_ms": round(total_ms, 3), "speedup_vs_tabulation": round(speedup, 3),
    }
