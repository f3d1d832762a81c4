"""Turn an ESD whose particles are light into a rigid one, or find a 2-vertex separator.

The work is done on a relaxed decomposition in which any three host vertices
may carry a set (not only host triangles).  Triple sets are stored sparsely.
The rewrite phases, in order:

a. edges with an empty interface are detached (both empty) or re-hung on a
   fresh pendant host vertex (one empty);
b. triples containing an isolated host vertex are flushed;
c. isolated host vertices with an empty set are dropped;
d. triples that are not host triangles are eliminated, either into a new
   isolated host vertex, into the one edge set they touch, or into the set of
   the common endpoint of the two edges they touch.

Only the last rule of phase d can make a particle heavier than ``w``; when
that happens the interface vertices of the heavy full-edge particle dominate
its neighborhood and are returned as the separator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidEsd, PreconditionViolated, StepBudgetExceeded
from .esd import Esd, Strip, host_edge, particles, validate_esd
from .graph import Graph, closed_neighborhood, components


@dataclass
class RigidEsdResult:
    esd: Esd
    steps: int
    trace: list = field(default_factory=list)


@dataclass
class SeparatorResult:
    X: frozenset
    steps: int
    offending_edge: tuple
    trace: list = field(default_factory=list)


class RelaxedEsd:
    """Mutable relaxed decomposition used while rewriting."""

    def __init__(self, D: Esd):
        self.vertices: set[int] = set(D.host_vertices)
        self.adj: dict[int, set[int]] = {x: set(D.host_neighbors(x)) for x in D.host_vertices}
        self.vert: dict[int, set[int]] = {x: set(s) for x, s in D.eta_vertex.items()}
        # edge -> [all, interface at p, interface at q]
        self.edges: dict[tuple, list[set[int]]] = {
            e: [set(s.all), set(s.at_p), set(s.at_q)] for e, s in D.eta_edge.items()
        }
        self.triples: dict[tuple, set[int]] = {t: set(s) for t, s in D.eta_triangle.items() if s}
        self._next = max(self.vertices, default=-1) + 1

    def new_vertex(self) -> int:
        x = self._next
        self._next += 1
        self.vertices.add(x)
        self.adj[x] = set()
        return x

    def add_edge(self, p, q, all_, at_p_side, at_q_side):
        e = host_edge(p, q)
        if e != (p, q):
            at_p_side, at_q_side = at_q_side, at_p_side
        self.adj[p].add(q)
        self.adj[q].add(p)
        self.edges[e] = [set(all_), set(at_p_side), set(at_q_side)]

    def remove_edge(self, e):
        p, q = e
        self.adj[p].discard(q)
        self.adj[q].discard(p)
        return self.edges.pop(e)

    def iface(self, e, end) -> set[int]:
        rec = self.edges[e]
        return rec[1] if end == e[0] else rec[2]

    def vset(self, x) -> set[int]:
        return self.vert.get(x, set())

    def is_isolated(self, x) -> bool:
        return not self.adj[x]

    def full_edge(self, e) -> set[int]:
        p, q = e
        out = self.vset(p) | self.vset(q) | self.edges[e][0]
        for t, s in self.triples.items():
            if p in t and q in t:
                out |= s
        return out

    def is_triangle(self, t) -> bool:
        a, b, c = t
        return b in self.adj[a] and c in self.adj[a] and c in self.adj[b]

    def empty_interface_count(self) -> int:
        return sum(1 for rec in self.edges.values() for s in rec[1:] if not s)

    def bad_triple_count(self) -> int:
        return sum(1 for t, s in self.triples.items() if s and not self.is_triangle(t))

    def size(self) -> int:
        return len(self.vertices) + len(self.edges)

    def to_esd(self) -> Esd:
        leftover = [t for t, s in self.triples.items() if s and not self.is_triangle(t)]
        assert not leftover, f"non-triangle triples remain: {leftover}"
        return Esd(
            frozenset(self.vertices),
            frozenset(self.edges),
            {x: frozenset(s) for x, s in self.vert.items() if x in self.vertices},
            {e: Strip(*rec) for e, rec in self.edges.items()},
            {t: frozenset(s) for t, s in self.triples.items() if s},
        )


def _touches(G: Graph, A, B) -> bool:
    if not A or not B:
        return False
    small, big = (A, B) if len(A) <= len(B) else (B, A)
    return any(v in big or G.neighbors(v) & big for v in small)


def make_rigid(G: Graph, D: Esd, w: int, within=None):
    """Return ``RigidEsdResult`` or ``SeparatorResult`` for ``D``, an ESD of ``G[within]``."""
    universe = frozenset(range(G.n)) if within is None else frozenset(within)
    if 2 * w < G.weight_of(universe):
        raise PreconditionViolated(f"w={w} is below half the weight {G.weight_of(universe)}")
    report = validate_esd(G, D, universe)
    if not report.ok:
        raise InvalidEsd(report)
    heavy = [p for p in particles(G, D, universe, check=False) if p.weight > w]
    if heavy:
        raise PreconditionViolated(f"particle {heavy[0].kind} {heavy[0].anchor} weighs {heavy[0].weight} > {w}")

    R = RelaxedEsd(D)
    cap = 8 * (len(D.host_vertices) + len(D.host_edges) + len(universe)) ** 3
    steps = 0
    trace: list[tuple[str, int]] = []

    def step(phase, measure):
        nonlocal steps
        steps += 1
        trace.append((phase, measure))
        if steps > cap:
            raise StepBudgetExceeded(f"more than {cap} rewrites")

    # phase a
    while True:
        bad = sorted(e for e, rec in R.edges.items() if not rec[1] or not rec[2])
        if not bad:
            break
        before = R.empty_interface_count()
        e = bad[0]
        p, q = e
        all_, at_p, at_q = R.remove_edge(e)
        if not at_p and not at_q:
            v = R.new_vertex()
            R.vert[v] = set(all_)
        else:
            # re-hang at the endpoint whose interface survives
            keep_end, keep_iface = (q, at_q) if not at_p else (p, at_p)
            z = R.new_vertex()
            R.add_edge(z, keep_end, all_, all_, keep_iface)
        after = R.empty_interface_count()
        assert after < before, "phase a did not reduce empty interfaces"
        step("a", after)

    # phase b
    while True:
        found = None
        for t in sorted(R.triples):
            if R.triples[t]:
                iso = [x for x in t if R.is_isolated(x)]
                if iso:
                    found = (t, iso[0])
                    break
        if found is None:
            break
        t, x = found
        y, z = (v for v in t if v != x)
        members = R.triples.pop(t)
        yz = host_edge(y, z)
        if yz in R.edges:
            R.edges[yz][0] |= members
        else:
            v = R.new_vertex()
            R.vert[v] = set(members)
        step("b", sum(1 for tt, s in R.triples.items() if s and any(R.is_isolated(a) for a in tt)))

    # phase c
    for x in sorted(R.vertices):
        if R.is_isolated(x) and not R.vset(x):
            assert not any(x in t for t, s in R.triples.items() if s)
            R.vertices.discard(x)
            del R.adj[x]
            R.vert.pop(x, None)
            step("c", x)

    # phase d
    while True:
        pending = sorted(t for t, s in R.triples.items() if s and not R.is_triangle(t))
        if not pending:
            break
        before = R.bad_triple_count()
        t = pending[0]
        T = R.triples[t]
        rest = universe - T
        pairs = [host_edge(a, b) for a, b in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))]
        present = [e for e in pairs if e in R.edges]
        touched = [e for e in present if _touches(G, T, R.edges[e][0])]
        outside = _touches(G, T, rest)
        assert outside == bool(touched), f"triple {t} touches sets other than its edge sets"
        members = R.triples.pop(t)
        if not touched:
            v = R.new_vertex()
            R.vert[v] = members
            step("d1", R.bad_triple_count())
        elif len(touched) == 1:
            R.edges[touched[0]][0] |= members
            step("d2", R.bad_triple_count())
        else:
            assert len(present) == 2 and len(touched) == 2, f"case split not exhaustive at {t}"
            (x,) = set(touched[0]) & set(touched[1])
            R.vert.setdefault(x, set()).update(members)
            step("d3", R.bad_triple_count())
            over = sorted(
                host_edge(x, a) for a in R.adj[x] if G.weight_of(R.full_edge(host_edge(x, a))) > w
            )
            if over:
                e = over[0]
                X = frozenset((min(R.iface(e, e[0])), min(R.iface(e, e[1]))))
                return SeparatorResult(X, steps, e, trace)
        assert R.bad_triple_count() < before

    out = R.to_esd()
    return RigidEsdResult(out, steps, trace)


def separator_components_ok(G: Graph, X, w: int, within=None) -> bool:
    """Every component of ``G[within] - N[X]`` weighs at most ``w``."""
    universe = frozenset(range(G.n)) if within is None else frozenset(within)
    rest = universe - closed_neighborhood(G, X)
    return all(G.weight_of(c) <= w for c in components(G, rest))
