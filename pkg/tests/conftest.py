import networkx as nx
from hypothesis import strategies as st

from longclaw.graph import Graph


def path(n, weights=None):
    return Graph(n, [(i, i + 1) for i in range(n - 1)], weights)


def cycle(n, weights=None):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], weights)


def complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def to_nx(G, keep=None):
    H = nx.Graph()
    vs = range(G.n) if keep is None else keep
    H.add_nodes_from(vs)
    H.add_edges_from((u, v) for u, v in G.edges() if u in H and v in H)
    return H


@st.composite
def graphs(draw, max_n=12, max_weight=5):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    weights = draw(st.lists(st.integers(0, max_weight), min_size=n, max_size=n))
    return Graph(n, edges, weights)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
