from csreach.gen import corpus_params, generate
from csreach.graph import ProgramValidGraph
from csreach.indexing import (IndexVertex, IndexingGraphView, Side, dst_id, expected_edge_count,
                              from_id, src_id)
from csreach.oracle import cfl_closure
from csreach.summary import compute_summaries

from worked import MIXED_CHAIN_NAMES, two_calls, mixed_chain, ids


def view_of(g):
    return IndexingGraphView(g, compute_summaries(g))


def test_mixed_chain_vertex_count_and_successors():
    n = ids(MIXED_CHAIN_NAMES)
    view = view_of(mixed_chain())
    assert view.stats()[0] == 14
    b1 = IndexVertex(n["b"], Side.ONE)
    assert set(view.iter_successors(b1)) == {IndexVertex(n["b"], Side.TWO),
                                             IndexVertex(n["d"], Side.ONE)}
    e2 = IndexVertex(n["e"], Side.TWO)
    assert list(view.iter_successors(e2)) == [IndexVertex(n["f"], Side.TWO)]


def test_isolated_vertex_has_only_its_bridge():
    view = view_of(ProgramValidGraph.build(1, [0], []))
    assert view.stats() == (2, 1)
    assert view.succ == [[1], []]
    assert view.reaches(src_id(0), dst_id(0))


def test_id_encoding_round_trips():
    for i in range(20):
        assert from_id(i).id == i
    assert IndexVertex(3, Side.ONE).id == src_id(3) == 6
    assert IndexVertex(3, Side.TWO).id == dst_id(3) == 7
    assert str(from_id(7)) == "3:2"


def test_predecessors_are_the_transpose():
    view = view_of(two_calls())
    fwd = {(x, y) for x in view.iter_vertices() for y in view.iter_successors(x)}
    back = {(x, y) for y in view.iter_vertices() for x in view.iter_predecessors(y)}
    assert fwd == back


def test_edge_count_formula():
    for g in [two_calls(), mixed_chain()] + [generate(corpus_params(s)) for s in range(25)]:
        s = compute_summaries(g)
        assert view_of(g).stats() == (2 * g.n, expected_edge_count(g, s))


def test_no_edge_returns_from_side_two():
    for seed in range(10):
        view = view_of(generate(corpus_params(seed)))
        for x in view.iter_vertices():
            if x.side == Side.TWO:
                assert all(y.side == Side.TWO for y in view.iter_successors(x))


def test_reachability_matches_grammar_oracle():
    for seed in range(1, 60):
        g = generate(corpus_params(seed))
        view = view_of(g)
        got = {(u, v) for u in range(g.n) for v in range(g.n)
               if view.reaches(src_id(u), dst_id(v))}
        assert got == cfl_closure(g).s, seed


def test_dot_export_mentions_every_vertex():
    view = view_of(mixed_chain())
    dot = view.to_dot()
    assert dot.startswith("digraph")
    for x in view.iter_vertices():
        assert f'"{x}"' in dot
    assert dot.count("->") == view.stats()[1]
    assert dot.count('label="summary"') == 2
