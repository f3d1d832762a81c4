"""Extended strip decompositions: data model, validator, particles and helpers.

An ESD of a graph G is a host graph H together with vertex sets of G
attached to host vertices, host edges (each with two interface subsets) and
host triangles.  Host edges are stored as ``(p, q)`` with ``p < q`` and the
interface at ``p`` is ``Strip.at_p``.

Every function that takes a graph accepts an optional ``within`` vertex set;
the decomposition is then interpreted as an ESD of the induced subgraph
``G[within]`` while keeping the original vertex ids.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InvalidEsd, NotRigid
from .graph import Graph, components

EMPTY: frozenset[int] = frozenset()

HostEdge = tuple[int, int]
HostTriangle = tuple[int, int, int]


def host_edge(p: int, q: int) -> HostEdge:
    if p == q:
        raise ValueError(f"host edge needs distinct endpoints, got {p}")
    return (p, q) if p < q else (q, p)


@dataclass(frozen=True)
class Strip:
    """The set attached to a host edge ``(p, q)`` and its two interfaces."""

    all: frozenset[int] = EMPTY
    at_p: frozenset[int] = EMPTY
    at_q: frozenset[int] = EMPTY

    def __post_init__(self):
        for name in ("all", "at_p", "at_q"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    @property
    def interior(self) -> frozenset[int]:
        return self.all - self.at_p - self.at_q

    @property
    def both(self) -> frozenset[int]:
        return self.at_p & self.at_q


@dataclass(frozen=True)
class Esd:
    host_vertices: frozenset[int]
    host_edges: frozenset[HostEdge]
    eta_vertex: Mapping[int, frozenset[int]] = field(default_factory=dict)
    eta_edge: Mapping[HostEdge, Strip] = field(default_factory=dict)
    eta_triangle: Mapping[HostTriangle, frozenset[int]] = field(default_factory=dict)

    __hash__ = None

    def __post_init__(self):
        hv = frozenset(self.host_vertices)
        he = frozenset(host_edge(p, q) for p, q in self.host_edges)
        for p, q in he:
            if p not in hv or q not in hv:
                raise ValueError(f"host edge {(p, q)} has an endpoint outside the host")
        ev = {}
        for x, s in self.eta_vertex.items():
            if x not in hv:
                raise ValueError(f"eta given for unknown host vertex {x}")
            if s:
                ev[x] = frozenset(s)
        ee = {}
        for e, strip in self.eta_edge.items():
            key = host_edge(*e)
            if key not in he:
                raise ValueError(f"eta given for unknown host edge {e}")
            if key != tuple(e):
                strip = Strip(strip.all, strip.at_q, strip.at_p)
            ee[key] = strip
        for e in he:
            ee.setdefault(e, Strip())
        adj = _adjacency(hv, he)
        et = {}
        for tri, s in self.eta_triangle.items():
            key = tuple(sorted(tri))
            if len(set(key)) != 3 or not _is_triangle(adj, key):
                raise ValueError(f"eta given for {tri}, which is not a host triangle")
            if s:
                et[key] = frozenset(s)
        object.__setattr__(self, "host_vertices", hv)
        object.__setattr__(self, "host_edges", he)
        object.__setattr__(self, "eta_vertex", dict(sorted(ev.items())))
        object.__setattr__(self, "eta_edge", dict(sorted(ee.items())))
        object.__setattr__(self, "eta_triangle", dict(sorted(et.items())))
        object.__setattr__(self, "_adj", adj)

    # host structure

    def host_neighbors(self, x: int) -> frozenset[int]:
        return self._adj[x]

    def host_degree(self, x: int) -> int:
        return len(self._adj[x])

    def triangles(self) -> list[HostTriangle]:
        out = []
        for p, q in sorted(self.host_edges):
            for r in sorted(self._adj[p] & self._adj[q]):
                if r > q:
                    out.append((p, q, r))
        return out

    def is_trivial(self) -> bool:
        return not self.host_edges

    # eta accessors

    def vertex_set(self, x: int) -> frozenset[int]:
        return self.eta_vertex.get(x, EMPTY)

    def edge_set(self, e) -> frozenset[int]:
        return self.eta_edge[host_edge(*e)].all

    def interface(self, e, end: int) -> frozenset[int]:
        key = host_edge(*e)
        strip = self.eta_edge[key]
        if end == key[0]:
            return strip.at_p
        if end == key[1]:
            return strip.at_q
        raise ValueError(f"{end} is not an endpoint of host edge {key}")

    def triangle_set(self, tri) -> frozenset[int]:
        return self.eta_triangle.get(tuple(sorted(tri)), EMPTY)

    def all_sets(self):
        """Yield ``(host object, eta set)`` for every vertex, edge and triangle."""
        for x in sorted(self.host_vertices):
            yield x, self.vertex_set(x)
        for e, strip in self.eta_edge.items():
            yield e, strip.all
        for tri in self.triangles():
            yield tri, self.triangle_set(tri)

    def covered(self) -> frozenset[int]:
        out: set[int] = set()
        for _, s in self.all_sets():
            out |= s
        return frozenset(out)

    def full_edge(self, e) -> frozenset[int]:
        p, q = host_edge(*e)
        members = set(self.vertex_set(p) | self.vertex_set(q) | self.edge_set((p, q)))
        for r in self._adj[p] & self._adj[q]:
            members |= self.triangle_set((p, q, r))
        return frozenset(members)


def _adjacency(hv, he) -> dict[int, frozenset[int]]:
    adj: dict[int, set[int]] = {x: set() for x in hv}
    for p, q in he:
        adj[p].add(q)
        adj[q].add(p)
    return {x: frozenset(a) for x, a in adj.items()}


def _is_triangle(adj, tri) -> bool:
    a, b, c = tri
    return b in adj[a] and c in adj[a] and c in adj[b]


@dataclass(frozen=True)
class Violation:
    rule: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        return f"rule {self.rule}: {self.detail} {self.witness}".strip()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def by_rule(self, rule: str) -> list[Violation]:
        return [v for v in self.violations if v.rule == rule]


def validate_esd(G: Graph, D: Esd, within: Iterable[int] | None = None) -> ValidationReport:
    """Check the three defining properties (and the interface subset rule).

    Violation witnesses:
      * ``subset``: ``(edge, end, stray vertices)``
      * ``1``: ``(v, obj)`` for a vertex outside the graph, ``(v, obj1, obj2)``
        for a vertex in two sets, ``(v,)`` for an uncovered vertex
      * ``2``: ``(x, a, b)`` with ``a``, ``b`` non-adjacent interface vertices at ``x``
      * ``3``: ``(u, v)`` for a G-edge in no allowed position
    """
    universe = frozenset(range(G.n)) if within is None else frozenset(within)
    violations: list[Violation] = []

    for e, strip in D.eta_edge.items():
        for end, iface in zip(e, (strip.at_p, strip.at_q)):
            stray = iface - strip.all
            if stray:
                violations.append(Violation("subset", (e, end, tuple(sorted(stray))), "interface not inside edge set"))

    owner: dict[int, object] = {}
    for obj, s in D.all_sets():
        for v in sorted(s):
            if v not in universe:
                violations.append(Violation("1", (v, obj), "vertex not in the graph"))
            elif v in owner:
                violations.append(Violation("1", (v, owner[v], obj), "vertex in two sets"))
            else:
                owner[v] = obj
    for v in sorted(universe - owner.keys()):
        violations.append(Violation("1", (v,), "vertex not covered"))

    for x in sorted(D.host_vertices):
        incident = sorted(host_edge(x, y) for y in D.host_neighbors(x))
        for e1, e2 in itertools.combinations(incident, 2):
            for a in sorted(D.interface(e1, x) & universe):
                for b in sorted(D.interface(e2, x) & universe):
                    if a != b and not G.has_edge(a, b):
                        violations.append(Violation("2", (x, a, b), "interfaces not complete"))

    for u in sorted(universe):
        for v in sorted(G.neighbors(u)):
            if v <= u or v not in universe:
                continue
            ou, ov = owner.get(u), owner.get(v)
            if ou is None or ov is None or ou == ov:
                continue
            if not _allowed_cross(D, u, ou, v, ov):
                violations.append(Violation("3", (u, v), "edge between sets in no allowed pattern"))

    return ValidationReport(tuple(violations))


def _kind(obj) -> str:
    if isinstance(obj, int):
        return "vertex"
    return "edge" if len(obj) == 2 else "triangle"


def _allowed_cross(D: Esd, u, ou, v, ov) -> bool:
    ku, kv = _kind(ou), _kind(ov)
    if ku == "edge" and kv == "edge":
        for x in set(ou) & set(ov):
            if u in D.interface(ou, x) and v in D.interface(ov, x):
                return True
        return False
    if {ku, kv} == {"edge", "vertex"}:
        (e, a), (x, _) = ((ou, u), (ov, v)) if ku == "edge" else ((ov, v), (ou, u))
        return x in e and a in D.interface(e, x)
    if {ku, kv} == {"edge", "triangle"}:
        e, a, tri = (ou, u, ov) if ku == "edge" else (ov, v, ou)
        return set(e) <= set(tri) and a in D.eta_edge[e].both
    return False


def is_rigid(D: Esd) -> ValidationReport:
    violations = []
    for e, strip in D.eta_edge.items():
        for end, iface in zip(e, (strip.at_p, strip.at_q)):
            if not iface:
                violations.append(Violation("rigid", (e, end), "empty interface"))
    for x in sorted(D.host_vertices):
        if D.host_degree(x) == 0 and not D.vertex_set(x):
            violations.append(Violation("rigid", (x,), "isolated host vertex with empty set"))
    return ValidationReport(tuple(violations))


@dataclass(frozen=True)
class Particle:
    kind: str  # vertex | edge-interior | half-edge | full-edge | triangle
    anchor: object
    members: frozenset[int]
    weight: int


def particles(G: Graph, D: Esd, within: Iterable[int] | None = None, check: bool = True) -> list[Particle]:
    """All particles of ``D``: one per host vertex and triangle, four per host edge."""
    if check:
        report = validate_esd(G, D, within)
        if not report.ok:
            raise InvalidEsd(report)

    def mk(kind, anchor, members):
        members = frozenset(members)
        return Particle(kind, anchor, members, G.weight_of(members))

    out = [mk("vertex", x, D.vertex_set(x)) for x in sorted(D.host_vertices)]
    for e, strip in D.eta_edge.items():
        p, q = e
        out.append(mk("edge-interior", e, strip.interior))
        out.append(mk("half-edge", (e, p), (D.vertex_set(p) | strip.all) - strip.at_q))
        out.append(mk("half-edge", (e, q), (D.vertex_set(q) | strip.all) - strip.at_p))
        out.append(mk("full-edge", e, D.full_edge(e)))
    for tri in D.triangles():
        out.append(mk("triangle", tri, D.triangle_set(tri)))
    return out


def max_particle_weight(G: Graph, D: Esd, within=None) -> int:
    return max((p.weight for p in particles(G, D, within)), default=0)


def restrict(D: Esd, keep: Iterable[int]) -> Esd:
    keep = frozenset(keep)
    return Esd(
        D.host_vertices,
        D.host_edges,
        {x: s & keep for x, s in D.eta_vertex.items()},
        {e: Strip(s.all & keep, s.at_p & keep, s.at_q & keep) for e, s in D.eta_edge.items()},
        {t: s & keep for t, s in D.eta_triangle.items()},
    )


def peripheral_vertices(G: Graph, D: Esd, within=None, check: bool = True) -> frozenset[int]:
    if check:
        report = validate_esd(G, D, within)
        if not report.ok:
            raise InvalidEsd(report)
    out = set()
    for x in D.host_vertices:
        if D.host_degree(x) == 1:
            (y,) = D.host_neighbors(x)
            iface = D.interface((x, y), x)
            if len(iface) == 1:
                out |= iface
    return frozenset(out)


def trivial_esd(G: Graph, within: Iterable[int] | None = None) -> Esd:
    comps = components(G, within)
    return Esd(frozenset(range(len(comps))), frozenset(), dict(enumerate(comps)))


def interface_dominators(G: Graph, D: Esd, e, within=None, check: bool = True) -> frozenset[int]:
    """Two interface vertices of ``e`` whose neighborhood covers N(full-edge particle of e)."""
    if check:
        report = validate_esd(G, D, within)
        if not report.ok:
            raise InvalidEsd(report)
    p, q = host_edge(*e)
    ip, iq = D.interface((p, q), p), D.interface((p, q), q)
    if not ip or not iq:
        raise NotRigid(f"host edge {(p, q)} has an empty interface")
    return frozenset((min(ip), min(iq)))


# serialization


def esd_to_dict(D: Esd) -> dict:
    def key(obj):
        return "-".join(str(i) for i in obj)

    return {
        "host": {
            "vertices": sorted(D.host_vertices),
            "edges": [list(e) for e in sorted(D.host_edges)],
        },
        "eta": {
            "vertex": {str(x): sorted(s) for x, s in D.eta_vertex.items() if s},
            "edge": {
                key(e): {"all": sorted(s.all), "at_p": sorted(s.at_p), "at_q": sorted(s.at_q)}
                for e, s in D.eta_edge.items()
            },
            "triangle": {key(t): sorted(s) for t, s in D.eta_triangle.items() if s},
        },
    }


def esd_to_json(D: Esd) -> str:
    return json.dumps(esd_to_dict(D), sort_keys=True, indent=2) + "\n"


def _only_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise ValueError(f"{where}: expected an object")
    unknown = set(obj) - set(allowed)
    if unknown:
        raise ValueError(f"{where}: unknown keys {sorted(unknown)}")


def _parse_key(text, arity, where):
    try:
        parts = tuple(int(s) for s in text.split("-"))
    except ValueError:
        raise ValueError(f"{where}: bad key {text!r}") from None
    if len(parts) != arity or any(i < 0 for i in parts) or list(parts) != sorted(set(parts)):
        raise ValueError(f"{where}: key {text!r} must be {arity} increasing nonnegative ids")
    return parts


def esd_from_dict(doc: dict) -> Esd:
    _only_keys(doc, {"host", "eta"}, "document")
    host = doc.get("host", {})
    _only_keys(host, {"vertices", "edges"}, "host")
    eta = doc.get("eta", {})
    _only_keys(eta, {"vertex", "edge", "triangle"}, "eta")
    vertices = [int(x) for x in host.get("vertices", [])]
    if any(x < 0 for x in vertices):
        raise ValueError("host ids must be nonnegative")
    edges = []
    for pair in host.get("edges", []):
        if len(pair) != 2:
            raise ValueError(f"host edge {pair} must have two endpoints")
        edges.append(host_edge(int(pair[0]), int(pair[1])))
    ev = {}
    for k, members in eta.get("vertex", {}).items():
        (x,) = _parse_key(k, 1, "eta.vertex")
        ev[x] = frozenset(members)
    ee = {}
    for k, rec in eta.get("edge", {}).items():
        e = _parse_key(k, 2, "eta.edge")
        _only_keys(rec, {"all", "at_p", "at_q"}, f"eta.edge.{k}")
        ee[e] = Strip(rec.get("all", ()), rec.get("at_p", ()), rec.get("at_q", ()))
    et = {}
    for k, members in eta.get("triangle", {}).items():
        et[_parse_key(k, 3, "eta.triangle")] = frozenset(members)
    return Esd(frozenset(vertices), frozenset(edges), ev, ee, et)


def esd_from_json(text: str | bytes) -> Esd:
    return esd_from_dict(json.loads(text))


def read_esd(path) -> Esd:
    with open(path, "rb") as fh:
        return esd_from_json(fh.read())


def write_esd(D: Esd, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(esd_to_json(D))
