from collections import deque
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rdivision.graph import (
    VertexWeighting, generate_complete, generate_cycle, generate_grid, generate_path,
    generate_random_connected, generate_star, make_undirected, undirected_support,
)
from rdivision.separator import (
    Separation, SeparatorContract, SeparatorError, bfs_layer_separator, brute_force_separator,
    separate, validate_separation,
)
from tests.oracles import enumerate_separations

TWO_THIRDS = Fraction(2, 3)


def unit(g):
    return VertexWeighting.unit(g.n)


def disconnects(g, sep):
    """Traversal check: in g - S no vertex of A\\B reaches B\\A."""
    adj = g.adjacency()
    seen = set(sep.a_only)
    todo = deque(seen)
    while todo:
        u = todo.popleft()
        for v in adj[u]:
            if v not in seen and v not in sep.S:
                seen.add(v)
                todo.append(v)
    return not (seen & sep.b_only)


def test_p5():
    g = generate_path(5)
    sep = brute_force_separator(g, unit(g))
    assert sep.S == {2}
    assert sorted([len(sep.a_only), len(sep.b_only)]) == [2, 2]
    assert validate_separation(g, unit(g), sep).passed


def test_c4_needs_two():
    g = generate_cycle(4)
    assert len(brute_force_separator(g, unit(g)).S) == 2
    assert enumerate_separations(4, [(u, v) for u, v, _ in g.edges], [1] * 4)[0] == 2


def test_k4_needs_two():
    g = generate_complete(4)
    sep = brute_force_separator(g, unit(g))
    assert len(sep.S) == 2
    assert not sep.a_only or not sep.b_only


def test_single_vertex():
    g = make_undirected(1, [])
    sep = brute_force_separator(g, unit(g))
    assert sep.A == sep.B == sep.S == {0}


def test_two_isolated_vertices():
    g = make_undirected(2, [])
    sep = brute_force_separator(g, unit(g))
    assert sep.S == frozenset()
    assert (sep.A, sep.B) == ({0}, {1})


def test_3x3_grid_minimum():
    # two corner-adjacent vertices cut off a corner: sides 1 and 6 <= (2/3)*9
    g = undirected_support(generate_grid(3, 3))
    sep = brute_force_separator(g, unit(g))
    best = enumerate_separations(9, [(u, v) for u, v, _ in g.edges], [1] * 9)
    assert len(sep.S) == best[0] == 2
    assert validate_separation(g, unit(g), sep).passed


def test_brute_refuses_large():
    g = generate_path(20)
    with pytest.raises(SeparatorError):
        brute_force_separator(g, unit(g))


def test_star_center():
    g = generate_star(6)
    assert bfs_layer_separator(g, unit(g)).S == {0}


def test_p9_median_layer():
    g = generate_path(9)
    sep = bfs_layer_separator(g, unit(g))
    assert sep.S == {4}
    assert sep.alpha_achieved == Fraction(4, 9)


def test_grid_16x16_bfs():
    g = undirected_support(generate_grid(16, 16))
    sep = bfs_layer_separator(g, unit(g))
    assert len(sep.S) <= 16
    assert validate_separation(g, unit(g), sep).passed
    assert disconnects(g, sep)


def test_validate_crossing_edge():
    g = generate_path(4)
    bad = Separation(frozenset({0, 1}), frozenset({2, 3}), Fraction(1, 2))
    rep = validate_separation(g, unit(g), bad)
    assert not rep.passed and rep.failures[0].startswith("edge")


def test_validate_budget():
    g = generate_cycle(4)
    sep = brute_force_separator(g, unit(g))
    contract = SeparatorContract(c_sep=0.5)
    assert contract.size_bound(4) == 1
    rep = validate_separation(g, unit(g), sep, contract)
    assert [f.split(":")[0] for f in rep.failures] == ["budget"]


def test_separate_flags_over_budget():
    g = generate_cycle(4)
    sep = separate(g, unit(g), SeparatorContract(c_sep=0.5), backend="brute")
    assert sep.within_budget is False
    assert validate_separation(g, unit(g), sep).passed


def test_json_round_trip():
    g = generate_path(7)
    sep = brute_force_separator(g, unit(g))
    back = Separation.from_json(sep.to_json())
    assert (back.A, back.B, back.S, back.alpha_achieved) == (sep.A, sep.B, sep.S, sep.alpha_achieved)


@settings(max_examples=60)
@given(st.integers(1, 8), st.integers(0, 8), st.integers(0, 10**6), st.data())
def test_brute_matches_enumeration_weighted(n, extra, seed, data):
    g = generate_random_connected(n, extra, seed)
    weights = data.draw(st.lists(st.integers(0, 4), min_size=n, max_size=n))
    if sum(weights) == 0:
        weights[0] = 1
    vw = VertexWeighting.from_mapping(n, dict(enumerate(weights)))
    sep = brute_force_separator(g, vw)
    best = enumerate_separations(n, [(u, v) for u, v, _ in g.edges], weights)
    assert len(sep.S) == best[0]
    assert validate_separation(g, vw, sep).passed


@settings(max_examples=80)
@given(st.integers(2, 40), st.integers(0, 40), st.integers(0, 10**6))
def test_bfs_always_valid(n, extra, seed):
    g = generate_random_connected(n, min(extra, 3 * n), seed)
    sep = bfs_layer_separator(g, unit(g))
    assert validate_separation(g, unit(g), sep).passed
    assert disconnects(g, sep)
