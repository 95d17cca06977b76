import pytest
from hypothesis import given, settings, strategies as st

from csreach.gen import GenParams, ParameterError, corpus_params, generate, large_params
from csreach.graph import LabelKind, validate, write_graph
from csreach.oracle import cfl_closure


def plain_closure(g):
    succ = [[] for _ in range(g.n)]
    for e in g.edges:
        succ[e.src].append(e.dst)
    out = set()
    for u in range(g.n):
        seen = {u}
        stack = [u]
        while stack:
            for w in succ[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out |= {(u, w) for w in seen}
    return out


def test_without_call_sites_reachability_is_plain():
    for seed in range(10):
        g = generate(GenParams(functions=3, call_sites=0, seed=seed))
        assert all(e.label.kind == LabelKind.EPS for e in g.edges)
        assert cfl_closure(g).s == plain_closure(g)


def test_same_seed_same_graph():
    p = GenParams(functions=9, call_sites=20, alpha=3, seed=42, allow_recursion=True)
    assert write_graph(generate(p)) == write_graph(generate(p))
    assert write_graph(generate(p)) != write_graph(generate(GenParams(
        functions=9, call_sites=20, alpha=3, seed=43, allow_recursion=True)))


@pytest.mark.parametrize("kwargs", [
    dict(functions=-1),
    dict(vertices_per_function=(5, 3)),
    dict(alpha=0),
    dict(vertices_per_function=(0, 3)),
    dict(functions=1, call_sites=1),
    dict(functions=2, vertices_per_function=(1, 4), call_sites=3),
    dict(eps_edge_density=-0.5),
])
def test_bad_parameters(kwargs):
    with pytest.raises(ParameterError):
        generate(GenParams(**kwargs))


def test_single_function_recursion_is_allowed():
    g = generate(GenParams(functions=1, call_sites=2, allow_recursion=True, seed=1))
    assert validate(g).ok


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8), st.integers(1, 6), st.integers(1, 4), st.integers(0, 2**32),
       st.booleans())
def test_generated_graphs_are_valid(functions, vmin, alpha, seed, recursion):
    sites = functions * vmin
    g = generate(GenParams(functions=functions, vertices_per_function=(vmin, vmin + 3),
                           call_sites=sites, alpha=alpha, seed=seed,
                           allow_recursion=recursion or functions == 1))
    report = validate(g)
    assert report.ok, str(report)
    assert report.measured_alpha <= alpha


def test_corpus_family_sizes():
    for seed in range(50):
        g = generate(corpus_params(seed))
        assert 20 <= g.n <= 56
        assert validate(g).ok


def test_large_family_scales_with_function_count():
    g = generate(large_params(0, functions=200))
    assert 1200 <= g.n <= 2800
    assert validate(g).ok
