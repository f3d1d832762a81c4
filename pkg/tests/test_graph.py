import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import networkx as nx
from conftest import complete, cycle, graphs, path, to_nx

from longclaw.errors import GraphFormatError
from longclaw.graph import (
    Graph,
    closed_neighborhood,
    components,
    is_induced_path,
    parse_graph,
    read_graph,
    render_graph,
    write_graph,
)


def test_parse_minimal():
    G = parse_graph("p 2\ne 0 1")
    assert G.n == 2 and G.edges() == [(0, 1)] and G.weights == (1, 1)


def test_parse_default_weight_rule():
    G = parse_graph(b"p 3\nw 2 5\ne 0 1\ne 1 2")
    assert G.edges() == [(0, 1), (1, 2)]
    assert G.weights == (1, 1, 5) and G.total_weight == 7


def test_parse_comments_and_blank_lines():
    G = parse_graph("# header comment\n\np 3\n# edge\ne 2 0\n")
    assert G.edges() == [(0, 2)]


@pytest.mark.parametrize(
    "text, needle, line",
    [
        ("p 2\ne 0 2", "out of range", 2),
        ("p 2\ne 0 1\ne 1 0", "duplicate edge", 3),
        ("p 2\nw 0 -1", "negative weight", 2),
        ("p 2\ne 0 x", "non-integer", 2),
        ("e 0 1\np 2", "must come first", 1),
        ("p 2\np 2", "duplicate header", 2),
        ("p 2\ne 1 1", "self-loop", 2),
        ("p 2\nq 0", "unknown line tag", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, needle, line):
    with pytest.raises(GraphFormatError) as err:
        parse_graph(text)
    assert needle in str(err.value)
    assert str(err.value).startswith(f"line {line}:")


def test_parse_missing_header():
    with pytest.raises(GraphFormatError):
        parse_graph("# nothing here\n")


def test_graph_rejects_bad_input():
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 1)], [1, -1])
    with pytest.raises(ValueError):
        Graph(2, [(0, 1)], [1])


def test_closed_neighborhood_examples():
    assert closed_neighborhood(path(3), {1}) == {0, 1, 2}
    assert closed_neighborhood(path(3), set()) == frozenset()
    assert closed_neighborhood(cycle(5), {0, 2}) == {0, 1, 2, 3, 4}


def test_closed_neighborhood_rejects_bad_ids():
    with pytest.raises(ValueError):
        closed_neighborhood(path(3), {3})


def test_components_examples():
    P5 = path(5)
    keep = set(range(5)) - closed_neighborhood(P5, {2})
    assert components(P5, keep) == [frozenset({0}), frozenset({4})]
    assert components(P5, set()) == []
    two_triangles = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert [len(c) for c in components(two_triangles)] == [3, 3]


def test_is_induced_path_examples():
    assert is_induced_path(path(4), (0, 1, 2, 3))
    assert not is_induced_path(cycle(4), (0, 1, 2, 3))
    assert not is_induced_path(complete(3), (0, 1, 2))
    assert is_induced_path(path(1), (0,))
    assert not is_induced_path(path(3), (0, 1, 0))


def test_write_read_round_trip(tmp_path):
    G = Graph(4, [(2, 3), (0, 1)], [1, 7, 0, 1])
    write_graph(G, tmp_path / "g.graph")
    assert read_graph(tmp_path / "g.graph") == G
    assert (tmp_path / "g.graph").read_text() == "p 4\nw 1 7\nw 2 0\ne 0 1\ne 2 3\n"


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_render_parse_round_trip(G):
    text = render_graph(G)
    again = parse_graph(text)
    assert again == G and render_graph(again) == text


@settings(max_examples=80, deadline=None)
@given(graphs(), st.data())
def test_closed_neighborhood_matches_definition(G, data):
    S = data.draw(st.sets(st.integers(0, G.n - 1))) if G.n else set()
    N = closed_neighborhood(G, S)
    expected = set(S)
    for v in S:
        expected |= G.neighbors(v)
    assert N == expected and N >= S


@settings(max_examples=80, deadline=None)
@given(graphs(), st.data())
def test_components_agree_with_networkx(G, data):
    keep = data.draw(st.sets(st.integers(0, G.n - 1))) if G.n else set()
    comps = components(G, keep)
    assert sorted(map(sorted, comps)) == sorted(sorted(c) for c in nx.connected_components(to_nx(G, keep)))
    # ordered by minimum id, disjoint, covering keep
    assert [min(c) for c in comps] == sorted(min(c) for c in comps)
    assert sum(len(c) for c in comps) == len(keep) and set().union(*comps) == set(keep)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8), st.data())
def test_is_induced_path_agrees_with_networkx(G, data):
    Q = data.draw(st.lists(st.integers(0, G.n - 1), max_size=G.n)) if G.n else []
    H = to_nx(G).subgraph(Q)
    expected = (
        len(set(Q)) == len(Q)
        and (len(Q) <= 1 or nx.is_isomorphic(H, nx.path_graph(len(Q))))
        and all(G.has_edge(a, b) for a, b in zip(Q, Q[1:]))
    )
    assert is_induced_path(G, Q) == bool(expected)
