"""Seeded instance generators with planted ground truth.

Every generator is a pure function of its ``GenParams``: the same params and
seed give the same graph, the same truth object and byte-identical files.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import asdict, dataclass, field

from ..esd import Esd, Strip, esd_to_json, host_edge, is_rigid, peripheral_vertices, validate_esd
from ..graph import Graph, render_graph
from ..tiat import LineGraphCert, StttCopy, line_graph, render_cert, verify_sttt

FAMILIES = ("planted-esd", "line-graph", "planted-sttt", "random")


@dataclass(frozen=True)
class GenParams:
    family: str
    seed: int
    n: int = 20  # vertices of G (root vertices for line-graph)
    host: int = 5  # core host vertices for planted-esd
    density: float = 0.2
    t: int = 1
    weight_min: int = 1
    weight_max: int = 1
    shape: str = "random"


@dataclass
class PlantedInstance:
    params: GenParams
    graph: Graph
    truth: object = None  # Esd, LineGraphCert, StttCopy or None
    peripheral: tuple[int, ...] = ()
    meta: dict = field(default_factory=dict)


def generate(p: GenParams) -> PlantedInstance:
    if p.family == "planted-esd":
        return gen_planted_esd(p)
    if p.family == "line-graph":
        return gen_line_graph(p)
    if p.family == "planted-sttt":
        return gen_planted_sttt(p)
    if p.family == "random":
        return gen_random(p)
    raise ValueError(f"unknown family {p.family!r}; expected one of {FAMILIES}")


def _weights(rng: random.Random, n: int, p: GenParams) -> list[int]:
    return [rng.randint(p.weight_min, p.weight_max) for _ in range(n)]


def _random_tree_edges(rng: random.Random, nodes: list[int]) -> list[tuple[int, int]]:
    edges = []
    for i in range(1, len(nodes)):
        edges.append((nodes[rng.randrange(i)], nodes[i]))
    return edges


# planted extended strip decompositions


def gen_planted_esd(p: GenParams) -> PlantedInstance:
    """Random rigid ESD with two pendant host edges, realized as a graph.

    Every edge set induces a connected subgraph, interfaces at a host vertex
    are made complete to each other, and optional edges are only drawn in
    positions the definition allows.
    """
    rng = random.Random(p.seed)
    core = max(2, p.host)
    hv = list(range(core))
    hedges = {host_edge(a, b) for a, b in _random_tree_edges(rng, hv)}
    for a, b in itertools.combinations(hv, 2):
        if rng.random() < p.density:
            hedges.add((a, b))
    pendants = []
    for k in range(2 + (core > 3 and rng.random() < 0.5)):
        leaf = core + k
        hv.append(leaf)
        anchor = rng.randrange(core)
        hedges.add(host_edge(leaf, anchor))
        pendants.append((leaf, anchor))
    isolated = None
    if rng.random() < 0.3:
        isolated = len(hv)
        hv.append(isolated)
    hedges = sorted(hedges)
    adj = {x: set() for x in hv}
    for a, b in hedges:
        adj[a].add(b)
        adj[b].add(a)
    triangles = [t for t in itertools.combinations(range(core), 3) if all(host_edge(*e) in hedges for e in itertools.combinations(t, 2))]

    # distribute G vertices: each edge at least one, the rest at random
    n = max(p.n, len(hedges) + (isolated is not None))
    owners: list[object] = list(hedges)
    if isolated is not None:
        owners.append(isolated)
    slots = list(hedges) * 3 + [x for x in range(core)] + triangles + ([isolated] if isolated is not None else [])
    while len(owners) < n:
        owners.append(rng.choice(slots))
    rng.shuffle(owners)
    ids = list(range(n))
    rng.shuffle(ids)
    members: dict[object, list[int]] = {}
    for vid, obj in zip(ids, owners):
        members.setdefault(obj, []).append(vid)

    pendant_leaf = {host_edge(leaf, anchor): leaf for leaf, anchor in pendants}
    edges: set[tuple[int, int]] = set()

    def connect(vs):
        vs = sorted(vs)
        rng.shuffle(vs)
        for a, b in _random_tree_edges(rng, vs):
            edges.add(host_edge(a, b))
        for a, b in itertools.combinations(vs, 2):
            if rng.random() < p.density:
                edges.add(host_edge(a, b))

    eta_edge = {}
    for e in hedges:
        vs = sorted(members.get(e, []))
        connect(vs)
        ifaces = []
        for end in e:
            if pendant_leaf.get(e) == end:
                ifaces.append({rng.choice(vs)})
            else:
                k = rng.randint(1, min(2, len(vs)))
                ifaces.append(set(rng.sample(vs, k)))
        eta_edge[e] = Strip(vs, ifaces[0], ifaces[1])
    eta_vertex = {}
    for x in range(core):
        vs = members.get(x, [])
        if vs:
            connect(vs)
            eta_vertex[x] = frozenset(vs)
    if isolated is not None:
        connect(members[isolated])
        eta_vertex[isolated] = frozenset(members[isolated])
    eta_tri = {}
    for tri in triangles:
        vs = members.get(tri, [])
        if vs:
            connect(vs)
            eta_tri[tri] = frozenset(vs)

    D = Esd(frozenset(hv), frozenset(hedges), eta_vertex, eta_edge, eta_tri)
    for x in hv:
        inc = sorted(host_edge(x, y) for y in adj[x])
        for e1, e2 in itertools.combinations(inc, 2):
            for a in D.interface(e1, x):
                for b in D.interface(e2, x):
                    edges.add(host_edge(a, b))
        for e in inc:
            for a in D.interface(e, x):
                for b in D.vertex_set(x):
                    if rng.random() < p.density:
                        edges.add(host_edge(a, b))
    for tri in triangles:
        for a in D.triangle_set(tri):
            for e in itertools.combinations(tri, 2):
                for b in D.eta_edge[host_edge(*e)].both:
                    if rng.random() < p.density:
                        edges.add(host_edge(a, b))

    G = Graph(n, sorted(edges), _weights(rng, n, p))
    periph = tuple(next(iter(D.interface(e, leaf))) for e, leaf in sorted(pendant_leaf.items()))[:2]
    assert validate_esd(G, D).ok and is_rigid(D).ok
    assert set(periph) <= peripheral_vertices(G, D)
    return PlantedInstance(p, G, D, periph)


# line graphs


def random_root(rng: random.Random, n: int, shape: str, density: float) -> Graph:
    n = max(2, n)
    if shape == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif shape == "cycle":
        edges = [(i, (i + 1) % n) for i in range(n)] if n >= 3 else [(0, 1)]
    elif shape == "caterpillar":
        spine = max(2, (2 * n) // 3)
        edges = [(i, i + 1) for i in range(spine - 1)]
        edges += [(rng.randrange(spine), v) for v in range(spine, n)]
    elif shape == "bypass":
        # a spine 0..s-1 plus a second route between two spine vertices;
        # the route gets the high ids so greedy walks prefer the spine
        n = max(n, 6)
        spine = max(4, (2 * n) // 3)
        edges = [(i, i + 1) for i in range(spine - 1)]
        a = rng.randrange(1, spine // 2)
        b = rng.randrange(max(a + 2, spine // 2), spine)
        route = [a] + list(range(spine, n)) + [b]
        edges += list(zip(route, route[1:]))
    elif shape == "random":
        edges = _random_tree_edges(rng, list(range(n)))
        extra = int(density * n)
        for _ in range(extra):
            a, b = rng.sample(range(n), 2)
            edges.append((a, b))
    else:
        raise ValueError(f"unknown root shape {shape!r}")
    return Graph(n, sorted({host_edge(a, b) for a, b in edges}))


def gen_line_graph(p: GenParams) -> PlantedInstance:
    rng = random.Random(p.seed)
    root = random_root(rng, p.n, p.shape, p.density)
    m = root.edge_count()
    G, cert = line_graph(root, _weights(rng, m, p))
    cert.check(G)
    return PlantedInstance(p, G, cert)


# planted long claws


def gen_planted_sttt(p: GenParams) -> PlantedInstance:
    """Plant an induced S_{t,t,t}.

    ``shape="noise"``: the spider sits on random ids inside a random graph;
    noise edges never join two planted vertices.
    ``shape="tadpole"``: a weighted path with a handle vertex closing a long
    cycle, so that the Gyarfas path is long and a claw exists beside it.
    """
    if p.shape == "tadpole":
        return _tadpole(p)
    rng = random.Random(p.seed)
    t = p.t
    n = max(p.n, 3 * t + 1)
    planted = rng.sample(range(n), 3 * t + 1)
    center, rest = planted[0], planted[1:]
    arms = tuple(tuple(rest[i * t : (i + 1) * t]) for i in range(3))
    edges = set()
    for arm in arms:
        prev = center
        for v in arm:
            edges.add(host_edge(prev, v))
            prev = v
    pset = set(planted)
    for a, b in itertools.combinations(range(n), 2):
        if a in pset and b in pset:
            continue
        if rng.random() < p.density:
            edges.add((a, b))
    G = Graph(n, sorted(edges), _weights(rng, n, p))
    copy = StttCopy(center, arms, t)
    assert verify_sttt(G, copy)
    return PlantedInstance(p, G, copy)


def _tadpole(p: GenParams) -> PlantedInstance:
    rng = random.Random(p.seed)
    t = p.t
    n = max(p.n, 3 * t + 16)
    spine = n - 1  # vertices 0..spine-1, handle is vertex n-1
    handle = n - 1
    q_len = spine - 1  # the path stops next to the heavy end
    iz = q_len - (t + 2)
    iy = iz - 2
    lo, hi = t + 1, iy - t - 1
    m = rng.randint(lo, hi)
    edges = [(i, i + 1) for i in range(spine - 1)] + [(m, handle), (spine - 1, handle)]
    weights = _weights(rng, n, p)
    weights[spine - 1] = sum(weights) - weights[spine - 1] + 1 + rng.randint(0, 5)
    G = Graph(n, edges, weights)
    cyc = list(range(m + 1, spine)) + [handle]
    arm_y = tuple(range(m + 1, m + 1 + t))
    arm_z = tuple([handle] + list(range(spine - 1, spine - t, -1)))[:t]
    arm_x = tuple(range(m - 1, m - 1 - t, -1))
    copy = StttCopy(m, (arm_x, arm_y, arm_z), t)
    assert len(cyc) > 2 * t + 1 and verify_sttt(G, copy)
    return PlantedInstance(p, G, copy, meta={"handle_at": m})


def gen_random(p: GenParams) -> PlantedInstance:
    """Connected G(n, p) graph: a random spanning tree plus independent edges."""
    rng = random.Random(p.seed)
    n = max(1, p.n)
    edges = {host_edge(a, b) for a, b in _random_tree_edges(rng, list(range(n)))}
    for a, b in itertools.combinations(range(n), 2):
        if rng.random() < p.density:
            edges.add((a, b))
    return PlantedInstance(p, Graph(n, sorted(edges), _weights(rng, n, p)))


# files


def write_instance(inst: PlantedInstance, prefix: str) -> list[str]:
    written = []

    def put(path, text):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        written.append(path)

    put(f"{prefix}.graph", render_graph(inst.graph))
    meta = {"params": asdict(inst.params), "peripheral": list(inst.peripheral), **inst.meta}
    if isinstance(inst.truth, Esd):
        put(f"{prefix}.esd.json", esd_to_json(inst.truth))
        meta["truth"] = "esd"
    elif isinstance(inst.truth, LineGraphCert):
        put(f"{prefix}.cert", render_cert(inst.truth))
        meta["truth"] = "cert"
    elif isinstance(inst.truth, StttCopy):
        put(f"{prefix}.sttt.json", json.dumps(inst.truth.to_dict(), sort_keys=True) + "\n")
        meta["truth"] = "sttt"
    else:
        meta["truth"] = None
    put(f"{prefix}.meta.json", json.dumps(meta, sort_keys=True, indent=2) + "\n")
    return written
