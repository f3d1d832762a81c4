"""Vertex-weighted simple graphs, neighborhoods, components and the text format.

Vertices are dense integer ids ``0..n-1``.  Vertex sets are passed around as
``frozenset`` objects; anything that needs a reproducible order sorts them.

Text format::

    # comment
    p <n>
    w <v> <weight>      (optional, default weight 1)
    e <u> <v>
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .errors import GraphFormatError

_MAX_TOTAL_WEIGHT = 2**64 - 1


class Graph:
    """Immutable simple undirected graph with nonnegative integer weights."""

    __slots__ = ("n", "_adj", "_weights", "_total")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), weights: Sequence[int] | None = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an id out of range")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        if weights is None:
            weights = [1] * n
        if len(weights) != n:
            raise ValueError("weights length does not match n")
        for v, wt in enumerate(weights):
            if wt < 0:
                raise ValueError(f"negative weight at vertex {v}")
        total = sum(weights)
        if total > _MAX_TOTAL_WEIGHT:
            raise ValueError("total weight exceeds 64-bit range")
        self.n = n
        self._adj = tuple(frozenset(a) for a in adj)
        self._weights = tuple(int(wt) for wt in weights)
        self._total = total

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def weights(self) -> tuple[int, ...]:
        return self._weights

    @property
    def total_weight(self) -> int:
        return self._total

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def degree(self, v: int, within: frozenset[int] | None = None) -> int:
        if within is None:
            return len(self._adj[v])
        return len(self._adj[v] & within)

    def weight(self, v: int) -> int:
        return self._weights[v]

    def weight_of(self, vertices: Iterable[int]) -> int:
        return sum(self._weights[v] for v in vertices)

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in sorted(self._adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    def with_weights(self, weights: Sequence[int]) -> "Graph":
        return Graph(self.n, self.edges(), weights)

    def without_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, [e for e in self.edges() if e != (min(u, v), max(u, v))], self._weights)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj and self._weights == other._weights

    def __hash__(self):
        return hash((self.n, self._adj, self._weights))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()}, W={self._total})"


def _check_ids(G: Graph, vertices: Iterable[int]) -> frozenset[int]:
    s = frozenset(vertices)
    for v in s:
        if not (0 <= v < G.n):
            raise ValueError(f"vertex id {v} out of range for n={G.n}")
    return s


def open_neighborhood(G: Graph, S: Iterable[int]) -> frozenset[int]:
    """N(S): vertices outside S with a neighbor in S."""
    S = _check_ids(G, S)
    out: set[int] = set()
    for v in S:
        out |= G.neighbors(v)
    return frozenset(out - S)


def closed_neighborhood(G: Graph, S: Iterable[int]) -> frozenset[int]:
    S = _check_ids(G, S)
    out = set(S)
    for v in S:
        out |= G.neighbors(v)
    return frozenset(out)


def complement(G: Graph, S: Iterable[int]) -> frozenset[int]:
    return frozenset(range(G.n)) - frozenset(S)


def components(G: Graph, keep: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Connected components of ``G[keep]``, ordered by minimum vertex id."""
    keep = frozenset(range(G.n)) if keep is None else _check_ids(G, keep)
    seen: set[int] = set()
    result = []
    for s in sorted(keep):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in G.neighbors(v):
                if u in keep and u not in seen:
                    seen.add(u)
                    comp.add(u)
                    queue.append(u)
        result.append(frozenset(comp))
    return result


def is_connected(G: Graph, keep: Iterable[int]) -> bool:
    return len(components(G, keep)) <= 1


def is_induced_path(G: Graph, Q: Sequence[int]) -> bool:
    if len(set(Q)) != len(Q):
        return False
    if any(not (0 <= v < G.n) for v in Q):
        return False
    pos = {v: i for i, v in enumerate(Q)}
    for i, v in enumerate(Q):
        for u in G.neighbors(v):
            j = pos.get(u)
            if j is not None and abs(i - j) != 1:
                return False
        if i + 1 < len(Q) and not G.has_edge(v, Q[i + 1]):
            return False
    return True


def induced_edges(G: Graph, S: Iterable[int]) -> list[tuple[int, int]]:
    S = frozenset(S)
    return sorted((u, v) for u in S for v in G.neighbors(u) if v in S and u < v)


def parse_graph(text: str | bytes) -> Graph:
    """Parse the line-based graph format; raises GraphFormatError with a line number."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = None
    weights: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    seen_edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise GraphFormatError(f"non-integer field in {line!r}", lineno) from None
        if tag == "p":
            if n is not None:
                raise GraphFormatError("duplicate header", lineno)
            if len(nums) != 1 or nums[0] < 0:
                raise GraphFormatError("header must be 'p <n>' with n >= 0", lineno)
            n = nums[0]
            continue
        if n is None:
            raise GraphFormatError("header 'p <n>' must come first", lineno)
        if tag == "w":
            if len(nums) != 2:
                raise GraphFormatError("weight line must be 'w <v> <weight>'", lineno)
            v, wt = nums
            if not 0 <= v < n:
                raise GraphFormatError(f"id out of range: {v}", lineno)
            if wt < 0:
                raise GraphFormatError(f"negative weight: {wt}", lineno)
            if v in weights:
                raise GraphFormatError(f"duplicate weight for {v}", lineno)
            weights[v] = wt
        elif tag == "e":
            if len(nums) != 2:
                raise GraphFormatError("edge line must be 'e <u> <v>'", lineno)
            u, v = nums
            for x in (u, v):
                if not 0 <= x < n:
                    raise GraphFormatError(f"id out of range: {x}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at {u}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise GraphFormatError(f"duplicate edge {key}", lineno)
            seen_edges.add(key)
            edges.append(key)
        else:
            raise GraphFormatError(f"unknown line tag {tag!r}", lineno)
    if n is None:
        raise GraphFormatError("missing header 'p <n>'")
    return Graph(n, edges, [weights.get(v, 1) for v in range(n)])


def render_graph(G: Graph) -> str:
    lines = [f"p {G.n}"]
    lines += [f"w {v} {wt}" for v, wt in enumerate(G.weights) if wt != 1]
    lines += [f"e {u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, "rb") as fh:
        return parse_graph(fh.read())


def write_graph(G: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_graph(G))
