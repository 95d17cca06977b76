"""Acceptance checks.  Each test prints one PASS/FAIL line and asserts."""

import random
import time

import pytest

from csreach.bench import run_bench, sample_query_pairs
from csreach.gen import GenParams, corpus_params, generate, large_params
from csreach.graph import validate, write_graph
from csreach.indexing import IndexingGraphView, expected_edge_count
from csreach.oracle import Tabulator, cfl_closure, derives
from csreach.query import QuerySession, cs_query, cs_query_path
from csreach.reach import DualLabelingIndex, GrailIndex, Interval, Link, TcIndex
from csreach.reach.dual import dual_query
from csreach.reach.grail import grail_query
from csreach.reach.tc import tc_query
from csreach.summary import compute_summaries

from worked import (MIXED_CHAIN_NAMES, TWO_CALLS_NAMES, dual_example, grail_example, ids, load,
                    mixed_chain, two_calls)
from test_reach import random_dag

CORPUS_SEEDS = range(1, 1001)
SCHEMES = ("tc", "dual", "grail")


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def large_graph():
    return generate(large_params(0))


def test_differential_correctness(report):
    mismatches = []
    pairs = 0
    for seed in CORPUS_SEEDS:
        g = generate(corpus_params(seed))
        summaries = compute_summaries(g)
        truth = cfl_closure(g).s
        tab = Tabulator(g, summaries)
        sessions = [QuerySession.build(g, s, seed=seed, summaries=summaries) for s in SCHEMES]
        for u in range(g.n):
            for v in range(g.n):
                pairs += 1
                want = (u, v) in truth
                got = [tab.query(u, v)] + [cs_query(s, u, v) for s in sessions]
                if any(x != want for x in got):
                    mismatches.append((seed, u, v, want, got))
    report(1, not mismatches,
           f"{len(CORPUS_SEEDS)} graphs, {pairs} pairs, {len(mismatches)} mismatches "
           f"across closure/tabulation/{'/'.join(SCHEMES)}"
           + (f"; first {mismatches[0]}" if mismatches else ""))


def test_worked_examples(report):
    failures = []
    n1 = ids(TWO_CALLS_NAMES)
    n5 = ids(MIXED_CHAIN_NAMES)
    g1, g5 = two_calls(), mixed_chain()
    for scheme in SCHEMES:
        s1 = QuerySession.build(g1, scheme)
        s5 = QuerySession.build(g5, scheme)
        if not cs_query(s1, n1["b"], n1["i"]):
            failures.append(f"{scheme}: Q(b,i) false")
        if cs_query(s1, n1["f"], n1["i"]):
            failures.append(f"{scheme}: Q(f,i) true")
        if not cs_query(s5, n5["a"], n5["f"]):
            failures.append(f"{scheme}: Q(a,f) false")
        if not cs_query(s5, n5["g"], n5["c"]):
            failures.append(f"{scheme}: Q(g,c) false")
        for name, v in n5.items():
            # g reaches itself by the empty path
            if name not in "cg" and cs_query(s5, n5["g"], v):
                failures.append(f"{scheme}: Q(g,{name}) true")
    summaries = compute_summaries(g5).pairs()
    if summaries != [(n5["b"], n5["d"])]:
        failures.append(f"summaries {summaries}")
    path = cs_query_path(QuerySession.build(g5, "grail"), n5["a"], n5["f"])
    if path is None or path.label_string() != "⟧1⟦2⟧2⟧3⟦4" or not derives(path.labels):
        failures.append(f"witness {path}")
    report(2, not failures, "; ".join(failures) or
           "Q(b,i), not Q(f,i), Q(a,f), Q(g,c), g reaches only c, summaries {(b,d)}, "
           "witness ⟧1⟦2⟧2⟧3⟦4 derives S")


def test_dual_labeling_example(report):
    dag, idx = dual_example()
    dual = DualLabelingIndex.build(dag)
    tc = TcIndex.build(dag)
    composed = Link(Interval(7, 9), Interval(1, 1))
    has_entry = composed in dual.link_table
    disagree = [(u, v) for u in range(dag.n) for v in range(dag.n)
                if dual_query(dual, u, v) != tc_query(tc, u, v)]
    report(3, has_entry and not disagree,
           f"link [7,9]->[1,1] {'present' if has_entry else 'missing'}; "
           f"{len(disagree)} disagreements with tc over {dag.n * dag.n} pairs")


def test_grail_example(report):
    dag, idx, orders = grail_example()
    grail = GrailIndex.from_orders(dag, orders)
    h, j = idx["h"], idx["j"]
    refuted = not grail.may_reach(h, j)
    answer, expanded = grail.search(h, j)
    fixture_ok = refuted and not answer and expanded == 0 and not grail_query(grail, dag, h, j)

    rng = random.Random(2024)
    bad = []
    for trial in range(200):
        rdag = random_dag(rng, rng.randint(1, 200), rng.choice([0.7, 1.5, 3.0]))
        g_idx = GrailIndex.build(rdag, 5, seed=trial)
        tc = TcIndex.build(rdag)
        for u in range(rdag.n):
            for v in range(rdag.n):
                if grail_query(g_idx, rdag, u, v) != tc_query(tc, u, v):
                    bad.append((trial, u, v))
    report(4, fixture_ok and not bad,
           f"fixture: containment fails={refuted}, answer={answer}, expansions={expanded}; "
           f"200 random dags: {len(bad)} disagreements with tc")


def test_linear_size(report):
    graphs = [two_calls(), mixed_chain(), load("nested.pvg")]
    graphs += [generate(corpus_params(seed)) for seed in CORPUS_SEEDS]
    wrong = 0
    for g in graphs:
        s = compute_summaries(g)
        if IndexingGraphView(g, s).stats() != (2 * g.n, expected_edge_count(g, s)):
            wrong += 1

    sizes = []
    for functions in (50, 150, 450, 1350, 4050):
        g = generate(large_params(1, functions))
        start = time.perf_counter()
        session = QuerySession.build(g, "grail")
        elapsed = time.perf_counter() - start
        nv, ne = session.view.stats()
        if (nv, ne) != (2 * g.n, expected_edge_count(g, session.summaries)):
            wrong += 1
        sizes.append((g.n, ne, elapsed))
    monotone = all(a[0] < b[0] and a[1] < b[1] and a[2] < b[2] for a, b in zip(sizes, sizes[1:]))
    growth = ", ".join(f"{n}v/{e}e {t * 1000:.0f}ms" for n, e, t in sizes)
    report(5, wrong == 0 and monotone,
           f"{len(graphs) + len(sizes)} graphs, {wrong} formula mismatches; "
           f"build growth {'monotone' if monotone else 'NOT monotone'}: {growth}")


def test_summary_bound(report, large_graph):
    graphs = [generate(corpus_params(seed)) for seed in CORPUS_SEEDS]
    graphs += [generate(GenParams(functions=f, call_sites=f * 4, alpha=a, seed=s,
                                  allow_recursion=True))
               for f in (2, 6, 12) for a in (1, 2, 3, 4) for s in range(5)]
    graphs.append(large_graph)
    worst = 0.0
    over = 0
    for g in graphs:
        count = len(compute_summaries(g))
        bound = g.declared_alpha ** 2 * g.n
        if count > bound:
            over += 1
        worst = max(worst, count / bound if bound else 0.0)
    report(6, over == 0,
           f"{len(graphs)} graphs, {over} exceed alpha^2*|V|; max ratio {worst:.3f}")


def test_desk_scale_speedup(report, large_graph):
    g = large_graph
    big_enough = g.n >= 100_000 and len(g.edges) >= 200_000
    start = time.perf_counter()
    bench = run_bench(g, ["grail"], n_reach=1000, n_unreach=1000, repeats=3, seed=0,
                      name="large", paths=False)
    elapsed = time.perf_counter() - start
    base = bench.total_ms("tabulation", "R") + bench.total_ms("tabulation", "notR")
    grail = bench.total_ms("grail", "R") + bench.total_ms("grail", "notR")
    combined = base / grail
    unreach = bench.speedup("grail", "notR")
    full = bench.sample.complete
    report(7, big_enough and full and combined >= 10 and unreach >= 50,
           f"{g.n} vertices, {len(g.edges)} edges; combined speedup {combined:.1f}x (>= 10), "
           f"notR speedup {unreach:.1f}x (>= 50), R speedup {bench.speedup('grail', 'R'):.1f}x; "
           f"sample complete={full}; {elapsed:.0f}s total")


def test_witness_validity(report):
    failures = []
    checked = 0
    per_graph = 10
    for seed in CORPUS_SEEDS:
        g = generate(corpus_params(seed))
        session = QuerySession.build(g, "grail", seed=seed)
        sample = sample_query_pairs(session, per_graph, 0, seed=seed)
        for u, v in sample.reachable:
            path = cs_query_path(session, u, v)
            checked += 1
            ok = (path is not None and path.vertices[0] == u and path.vertices[-1] == v
                  and path.check(g) and derives(path.labels))
            if not ok:
                failures.append((seed, u, v))
    report(8, checked == 10_000 and not failures,
           f"{checked} reachable witnesses checked, {len(failures)} failures")


def test_determinism(report):
    def artifacts():
        out = []
        for p in (corpus_params(7), corpus_params(8), large_params(3, functions=300)):
            g = generate(p)
            text = write_graph(g)
            dump = compute_summaries(g).dump()
            indexes = [QuerySession.build(g, s, seed=5).serialize() for s in SCHEMES]
            out.append((text, dump, indexes))
        return out

    first, second = artifacts(), artifacts()
    same = first == second
    report(9, same, "graph text, summary dumps and tc/dual/grail index bytes "
                    + ("identical" if same else "DIFFER") + " across two runs")


def test_valid_corpus_sanity():
    # the differential corpus stays inside the advertised family
    for seed in (1, 500, 1000):
        g = generate(corpus_params(seed))
        assert validate(g).ok and 20 <= g.n <= 60
