from csreach.gen import GenParams, corpus_params, generate
from csreach.graph import EPS, Edge, Label, ProgramValidGraph, edge_sets
from csreach.oracle import M, cfl_closure, derives
from csreach.summary import compute_summaries

from worked import TWO_CALLS_NAMES, MIXED_CHAIN_NAMES, two_calls, mixed_chain, ids, load


def summaries_from_closure(g):
    """Summary pairs derived from the grammar M relation."""
    m = cfl_closure(g)[M]
    _, opens, closes = edge_sets(g)
    out = set()
    for o in opens:
        for c in closes:
            if o.label.site == c.label.site and (o.dst, c.src) in m:
                out.add((o.src, c.dst))
    return out


def test_mixed_chain_has_single_summary():
    n = ids(MIXED_CHAIN_NAMES)
    s = compute_summaries(mixed_chain())
    assert s.pairs() == [(n["b"], n["d"])]
    assert s.edges[0].site == 2


def test_two_calls_summaries():
    n = ids(TWO_CALLS_NAMES)
    pairs = set(compute_summaries(two_calls()).pairs())
    assert (n["d"], n["e"]) in pairs
    assert pairs == {(n["d"], n["e"]), (n["f"], n["g"]), (n["h"], n["i"])}


def test_no_parentheses_means_no_summaries():
    g = ProgramValidGraph.build(3, [0, 0, 0], [(0, 1, EPS), (1, 2, EPS)])
    s = compute_summaries(g)
    assert len(s) == 0 and s.dump() == ""


def test_nested_calls_summarize_inside_out():
    s = compute_summaries(load("nested.pvg"))
    assert s.dump() == "0 1 1\n3 4 2\n"
    # the outer summary was discovered after, and relies on, the inner one
    assert [(e.source, e.target) for e in s.discovery] == [(3, 4), (0, 1)]


def expand_labels(g, s, entry, exit):
    out = []
    for ref in s.same_level_chain(entry, exit):
        if ref >= 0:
            out.append(g.edges[ref].label)
        else:
            inner = s.discovery[-ref - 1]
            out.append(Label.open(inner.site))
            out += expand_labels(g, s, inner.entry, inner.exit)
            out.append(Label.close(inner.site))
    return out


def test_same_level_chains_expand_to_matched_strings():
    for seed in range(1, 30):
        g = generate(corpus_params(seed))
        s = compute_summaries(g)
        for se in s.edges:
            assert derives(expand_labels(g, s, se.entry, se.exit), M)


def test_matches_grammar_oracle():
    for seed in range(1, 80):
        g = generate(corpus_params(seed))
        assert set(compute_summaries(g).pairs()) == summaries_from_closure(g), seed


def test_summary_count_is_bounded():
    for seed in range(40):
        g = generate(corpus_params(seed))
        alpha = max(1, g.declared_alpha)
        assert len(compute_summaries(g)) <= alpha * alpha * g.n


def test_recomputation_is_identical():
    g = generate(GenParams(functions=8, call_sites=20, alpha=3, seed=5, allow_recursion=True))
    a, b = compute_summaries(g), compute_summaries(g)
    assert a.dump() == b.dump()
    assert a.discovery == b.discovery


def test_sites_agree_with_the_edges_they_span():
    for seed in range(1, 20):
        g = generate(corpus_params(seed))
        edges = set(g.edges)
        for se in compute_summaries(g).edges:
            assert Edge(se.source, se.entry, Label.open(se.site)) in edges
            assert Edge(se.exit, se.target, Label.close(se.site)) in edges
