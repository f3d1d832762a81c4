"""Three-in-a-tree answers, desk-scale backends and long-claw extraction.

``three_in_a_tree`` asks a chain of backends for either an induced tree
through three terminals or a rigid ESD in which every terminal is peripheral.
Whatever a backend returns is re-verified before it is handed back, so a
wrong backend produces ``CertificationFailed`` instead of a wrong answer.

Backends, tried in the configured order:

``certificate``  line-graph root certificate -> canonical ESD
``oracle``       user-supplied callable (used by fixtures)
``split``        terminals in different components -> one host edge per component
``exhaustive``   enumeration of induced trees, bounded by subset size
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import (
    ArmTooShort,
    BadCertificate,
    CertificationFailed,
    InvalidTreeShape,
    NotPeripheral,
)
from .esd import Esd, Strip, is_rigid, peripheral_vertices, validate_esd
from .graph import Graph, components, induced_edges, parse_graph, render_graph


# answers


@dataclass(frozen=True)
class Tree:
    vertices: frozenset[int]


@dataclass(frozen=True)
class Decomposition:
    esd: Esd


@dataclass(frozen=True)
class Inconclusive:
    reason: str


@dataclass(frozen=True)
class NoTreeProven:
    explored: int


@dataclass(frozen=True)
class BudgetExceeded:
    reason: str


@dataclass(frozen=True)
class NoneProven:
    explored: int


# line graphs


@dataclass(frozen=True)
class LineGraphCert:
    """Root graph plus the map from root edges to vertices of the line graph."""

    root: Graph
    edge_map: dict  # (u, v) with u < v -> vertex of G

    __hash__ = None

    def check(self, G: Graph) -> None:
        root_edges = set(self.root.edges())
        if set(self.edge_map) != root_edges:
            raise BadCertificate("edge map does not cover exactly the root edges")
        images = sorted(self.edge_map.values())
        if images != list(range(G.n)):
            raise BadCertificate("edge map is not a bijection onto the graph's vertices")
        inverse = {g: e for e, g in self.edge_map.items()}
        for g in range(G.n):
            e = inverse[g]
            for h in range(g + 1, G.n):
                shares = bool(set(e) & set(inverse[h]))
                if shares != G.has_edge(g, h):
                    raise BadCertificate(f"adjacency of {g},{h} disagrees with the root")


def line_graph(root: Graph, weights: Sequence[int] | None = None) -> tuple[Graph, LineGraphCert]:
    """Line graph of ``root``; vertex i is the i-th root edge in lexicographic order."""
    redges = root.edges()
    index = {e: i for i, e in enumerate(redges)}
    at: dict[int, list[int]] = {}
    for e, i in index.items():
        for end in e:
            at.setdefault(end, []).append(i)
    edges = set()
    for ids in at.values():
        for a, b in itertools.combinations(sorted(ids), 2):
            edges.add((a, b))
    G = Graph(len(redges), sorted(edges), weights)
    return G, LineGraphCert(root, index)


def render_cert(cert: LineGraphCert) -> str:
    lines = [render_graph(cert.root).rstrip("\n")]
    lines += [f"m {u} {v} {g}" for (u, v), g in sorted(cert.edge_map.items())]
    return "\n".join(lines) + "\n"


def parse_cert(text: str | bytes) -> LineGraphCert:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    graph_lines, edge_map = [], {}
    for raw in text.splitlines():
        parts = raw.split()
        if parts and parts[0] == "m":
            if len(parts) != 4:
                raise BadCertificate(f"bad map line {raw!r}")
            u, v, g = (int(p) for p in parts[1:])
            key = (min(u, v), max(u, v))
            if key in edge_map:
                raise BadCertificate(f"root edge {key} mapped twice")
            edge_map[key] = g
        else:
            graph_lines.append(raw)
    return LineGraphCert(parse_graph("\n".join(graph_lines)), edge_map)


def line_graph_esd(G: Graph, cert: LineGraphCert, keep: Iterable[int] | None = None, Z: Iterable[int] = ()) -> Esd:
    """Canonical rigid ESD of ``G[keep]`` built from the root certificate."""
    cert.check(G)
    keep = frozenset(range(G.n)) if keep is None else frozenset(keep)
    strips, hv = {}, set()
    root_degree: dict[int, int] = {}
    inverse = {}
    for (u, v), g in cert.edge_map.items():
        if g in keep:
            strips[(u, v)] = Strip({g}, {g}, {g})
            hv |= {u, v}
            inverse[g] = (u, v)
            for end in (u, v):
                root_degree[end] = root_degree.get(end, 0) + 1
    # a terminal is peripheral iff its root edge has an endpoint of degree one
    for z in Z:
        if z not in inverse or all(root_degree[end] > 1 for end in inverse[z]):
            raise NotPeripheral(f"terminal {z} has no root endpoint of degree one in the kept graph")
    return Esd(frozenset(hv), frozenset(strips), {}, strips, {})


# induced trees


def is_induced_tree(G: Graph, vertices) -> bool:
    vertices = frozenset(vertices)
    if not vertices:
        return False
    return len(induced_edges(G, vertices)) == len(vertices) - 1 and len(components(G, vertices)) == 1


def exhaustive_tree_search(G: Graph, Z: Iterable[int], budget: int | None = None, within=None):
    """Search induced trees of ``G[within]`` holding at least three terminals.

    Returns ``Tree``, ``NoTreeProven`` (complete search) or ``BudgetExceeded``
    (some branch was cut at ``budget`` vertices).
    """
    universe = frozenset(range(G.n)) if within is None else frozenset(within)
    terminals = frozenset(Z) & universe
    budget = len(universe) if budget is None else budget
    state = {"explored": 0, "cut": False}

    def reachable_terminals(S, hits, excluded):
        seen = set(S)
        queue = deque(S)
        count = len(S & terminals)
        while queue:
            v = queue.popleft()
            for u in G.neighbors(v):
                if u in seen or u not in universe or u in excluded or hits.get(u, 0) >= 2:
                    continue
                seen.add(u)
                if u in terminals:
                    count += 1
                queue.append(u)
        return count

    def grow(S, hits, excluded):
        # hits[v] = number of neighbors of v inside S
        state["explored"] += 1
        if len(S & terminals) >= 3:
            return S
        if reachable_terminals(S, hits, excluded) < 3:
            return None
        ext = sorted(v for v, h in hits.items() if h == 1 and v not in S and v not in excluded)
        if not ext:
            return None
        if len(S) >= budget:
            state["cut"] = True
            return None
        v = ext[0]
        new_hits = dict(hits)
        for u in G.neighbors(v):
            if u in universe and u not in S:
                new_hits[u] = new_hits.get(u, 0) + 1
        found = grow(S | {v}, new_hits, excluded)
        if found is not None:
            return found
        return grow(S, hits, excluded | {v})

    done: set[int] = set()
    for r in sorted(terminals):
        hits = {u: 1 for u in G.neighbors(r) if u in universe}
        found = grow(frozenset({r}), hits, frozenset(done))
        if found is not None:
            return Tree(frozenset(found))
        done.add(r)
    if state["cut"]:
        return BudgetExceeded(f"subset budget {budget} reached")
    return NoTreeProven(state["explored"])


# the contract


@dataclass
class TiatConfig:
    certificate: LineGraphCert | None = None
    oracle: Callable | None = None
    tree_budget: int | None = None
    order: tuple[str, ...] = ("certificate", "oracle", "split", "exhaustive")
    use_exhaustive: bool = True


def split_esd(G: Graph, Z: Iterable[int], within=None) -> Esd | None:
    """ESD of (G[within], Z) when every component holds at most two terminals and the
    terminals do not all share one component; otherwise ``None``."""
    terminals = frozenset(Z)
    comps = components(G, within)
    holding = [c for c in comps if c & terminals]
    if len(holding) < 2 or any(len(c & terminals) > 2 for c in holding):
        return None
    hv, ev, ee = set(), {}, {}
    nxt = 0
    for comp in comps:
        ts = sorted(comp & terminals)
        if not ts:
            hv.add(nxt)
            ev[nxt] = comp
            nxt += 1
            continue
        a, b = nxt, nxt + 1
        nxt += 2
        hv |= {a, b}
        ee[(a, b)] = Strip(comp, {ts[0]}, {ts[-1]})
    return Esd(frozenset(hv), frozenset(ee), ev, ee, {})


def verify_answer(G: Graph, Z, answer, within=None) -> None:
    """Raise CertificationFailed unless ``answer`` meets the three-in-a-tree contract."""
    universe = frozenset(range(G.n)) if within is None else frozenset(within)
    Z = frozenset(Z)
    if isinstance(answer, Tree):
        T = answer.vertices
        if not T <= universe:
            raise CertificationFailed("tiat-tree", "tree leaves the graph")
        if not is_induced_tree(G, T):
            raise CertificationFailed("tiat-tree", "vertex set does not induce a tree")
        if len(T & Z) < 3:
            raise CertificationFailed("tiat-tree", "fewer than three terminals")
    elif isinstance(answer, Decomposition):
        D = answer.esd
        report = validate_esd(G, D, universe)
        if not report.ok:
            raise CertificationFailed("tiat-esd", f"invalid: {report.violations[0]}")
        rigid = is_rigid(D)
        if not rigid.ok:
            raise CertificationFailed("tiat-esd", f"not rigid: {rigid.violations[0]}")
        missing = Z - peripheral_vertices(G, D, universe, check=False)
        if missing:
            raise CertificationFailed("tiat-esd", f"terminals not peripheral: {sorted(missing)}")


def three_in_a_tree(G: Graph, Z: Iterable[int], config: TiatConfig | None = None, within=None):
    config = config or TiatConfig()
    Z = frozenset(Z)
    if len(Z) < 2:
        raise ValueError("three-in-a-tree needs at least two terminals")
    universe = frozenset(range(G.n)) if within is None else frozenset(within)
    if not Z <= universe:
        raise ValueError("terminals must lie in the graph")
    reasons = []
    for name in config.order:
        answer = None
        if name == "certificate" and config.certificate is not None:
            answer = Decomposition(line_graph_esd(G, config.certificate, universe, Z))
        elif name == "oracle" and config.oracle is not None:
            answer = config.oracle(G, Z, universe)
        elif name == "split":
            D = split_esd(G, Z, universe)
            answer = Decomposition(D) if D is not None else None
        elif name == "exhaustive" and config.use_exhaustive:
            result = exhaustive_tree_search(G, Z, config.tree_budget, universe)
            if isinstance(result, Tree):
                answer = result
            else:
                reasons.append(f"exhaustive: {result}")
        if answer is not None and not isinstance(answer, Inconclusive):
            verify_answer(G, Z, answer, universe)
            return answer
        if isinstance(answer, Inconclusive):
            reasons.append(f"{name}: {answer.reason}")
    return Inconclusive("; ".join(reasons) or "no backend configured")


# long claws


@dataclass(frozen=True)
class StttCopy:
    center: int
    arms: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    t: int

    def vertices(self) -> frozenset[int]:
        return frozenset([self.center, *itertools.chain.from_iterable(self.arms)])

    def to_dict(self) -> dict:
        return {"center": self.center, "arms": [list(a) for a in self.arms], "t": self.t}

    @classmethod
    def from_dict(cls, doc) -> "StttCopy":
        return cls(int(doc["center"]), tuple(tuple(int(v) for v in a) for a in doc["arms"]), int(doc["t"]))


def verify_sttt(G: Graph, copy: StttCopy) -> bool:
    t = copy.t
    if t < 1 or len(copy.arms) != 3 or any(len(a) != t for a in copy.arms):
        return False
    verts = [copy.center, *itertools.chain.from_iterable(copy.arms)]
    if len(set(verts)) != 3 * t + 1 or any(not 0 <= v < G.n for v in verts):
        return False
    expected = set()
    for arm in copy.arms:
        prev = copy.center
        for v in arm:
            expected.add((min(prev, v), max(prev, v)))
            prev = v
    return set(induced_edges(G, verts)) == expected


def _tree_path(G: Graph, T: frozenset[int], a: int, b: int) -> list[int]:
    parent = {a: None}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        for u in sorted(G.neighbors(v)):
            if u in T and u not in parent:
                parent[u] = v
                queue.append(u)
    if b not in parent:
        raise InvalidTreeShape(f"{a} and {b} are not connected in the tree")
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


def extract_sttt(G: Graph, tree, Z: Sequence[int], t: int) -> StttCopy:
    """Cut an induced long claw out of an induced tree through the terminals ``Z``."""
    T = frozenset(tree)
    x, y, z = Z
    if not is_induced_tree(G, T) or not {x, y, z} <= T:
        raise InvalidTreeShape("vertex set is not an induced tree through the terminals")
    pxy, pxz, pyz = _tree_path(G, T, x, y), _tree_path(G, T, x, z), _tree_path(G, T, y, z)
    common = set(pxy) & set(pxz) & set(pyz)
    assert len(common) == 1, "three tree paths must meet in one vertex"
    (c,) = common
    if c in (x, y, z):
        raise InvalidTreeShape(f"terminal {c} lies on the path between the other two")
    arms = []
    for term in (x, y, z):
        branch = _tree_path(G, T, c, term)[1:]
        if len(branch) < t:
            raise ArmTooShort(f"branch towards {term} has {len(branch)} < {t} vertices")
        arms.append(tuple(branch[:t]))
    copy = StttCopy(c, tuple(arms), t)
    assert verify_sttt(G, copy)
    return copy


def find_sttt_exhaustive(G: Graph, t: int, budget: int | None = None):
    """Complete search for an induced S_{t,t,t}; ``budget`` caps search nodes."""
    if t < 1:
        raise ValueError("t must be at least 1")
    limit = budget if budget is not None else float("inf")
    explored = 0
    # placement order: the three first arm vertices, then second ones, ...
    slots = [(arm, k) for k in range(t) for arm in range(3)]

    def search(c, chosen, arms, i):
        nonlocal explored
        if i == len(slots):
            return StttCopy(c, tuple(tuple(a) for a in arms), t)
        arm, k = slots[i]
        pred = c if k == 0 else arms[arm][k - 1]
        lower = arms[arm - 1][0] if k == 0 and arm > 0 else -1
        for u in sorted(G.neighbors(pred)):
            if u in chosen or u <= lower:
                continue
            if any(G.has_edge(u, v) for v in chosen if v != pred):
                continue
            explored += 1
            if explored > limit:
                raise _Budget
            arms[arm].append(u)
            chosen.add(u)
            found = search(c, chosen, arms, i + 1)
            if found is not None:
                return found
            chosen.discard(u)
            arms[arm].pop()
        return None

    try:
        for c in range(G.n):
            if G.degree(c) < 3:
                continue
            found = search(c, {c}, [[], [], []], 0)
            if found is not None:
                return found
    except _Budget:
        return BudgetExceeded(f"search node budget {budget} exhausted")
    return NoneProven(explored)


class _Budget(Exception):
    pass
