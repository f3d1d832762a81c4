"""Targeted corruptions of valid ESDs, and degraded inputs for ``make_rigid``.

Each mutation returns ``(graph, esd, expectation)`` where ``expectation`` is a
predicate over a single ``Violation`` that a correct validator must report,
or ``None`` when the instance offers no suitable target.
"""

from __future__ import annotations

import random

from ..esd import Esd, Strip, host_edge, restrict
from ..graph import Graph


def _owner_map(D: Esd) -> dict[int, object]:
    return {v: obj for obj, s in D.all_sets() for v in s}


def _without(D: Esd, v: int) -> tuple[dict, dict, dict]:
    ev = {x: s - {v} for x, s in D.eta_vertex.items()}
    ee = {e: Strip(s.all - {v}, s.at_p - {v}, s.at_q - {v}) for e, s in D.eta_edge.items()}
    et = {t: s - {v} for t, s in D.eta_triangle.items()}
    return ev, ee, et


def move_vertex(G: Graph, D: Esd, rng: random.Random):
    """Move a vertex into the interior of another edge set where one of its edges becomes illegal."""
    owner = _owner_map(D)
    options = []
    for v in sorted(owner):
        for e in sorted(D.host_edges):
            if owner[v] == e:
                continue
            target = D.edge_set(e)
            if any(u not in target for u in G.neighbors(v) if u in owner):
                options.append((v, e))
    if not options:
        return None
    v, e = rng.choice(options)
    ev, ee, et = _without(D, v)
    s = ee[e]
    ee[e] = Strip(s.all | {v}, s.at_p, s.at_q)
    D2 = Esd(D.host_vertices, D.host_edges, ev, ee, et)
    return G, D2, lambda viol: viol.rule == "3" and v in viol.witness


def drop_interface_member(G: Graph, D: Esd, rng: random.Random):
    """Remove ``v`` from interface ``(e, a)`` while ``v`` has an edge that only that membership allows."""
    owner = _owner_map(D)
    options = []
    for e in sorted(D.host_edges):
        for a in e:
            for v in sorted(D.interface(e, a)):
                for u in sorted(G.neighbors(v)):
                    ou = owner.get(u)
                    if ou == a:
                        options.append((e, a, v))
                        break
                    if isinstance(ou, tuple) and len(ou) == 2 and ou != e and a in ou and u in D.interface(ou, a):
                        options.append((e, a, v))
                        break
    if not options:
        return None
    e, a, v = rng.choice(options)
    ee = dict(D.eta_edge)
    s = ee[e]
    ee[e] = Strip(s.all, s.at_p - {v} if a == e[0] else s.at_p, s.at_q - {v} if a == e[1] else s.at_q)
    D2 = Esd(D.host_vertices, D.host_edges, D.eta_vertex, ee, D.eta_triangle)
    return G, D2, lambda viol: viol.rule == "3" and v in viol.witness


def drop_completeness_edge(G: Graph, D: Esd, rng: random.Random):
    """Delete an edge of G that the completeness rule at some host vertex requires."""
    options = []
    for x in sorted(D.host_vertices):
        inc = sorted(host_edge(x, y) for y in D.host_neighbors(x))
        for i, e1 in enumerate(inc):
            for e2 in inc[i + 1 :]:
                for a in sorted(D.interface(e1, x)):
                    for b in sorted(D.interface(e2, x)):
                        options.append((x, a, b))
    if not options:
        return None
    x, a, b = rng.choice(options)
    G2 = G.without_edge(a, b)
    return G2, D, lambda viol: viol.rule == "2" and {a, b} <= set(viol.witness[1:])


MUTATIONS = (move_vertex, drop_interface_member, drop_completeness_edge)


def degrade(G: Graph, D: Esd, rng: random.Random, heavy: bool = False):
    """Empty some interfaces by deleting vertices and inject triangle sets that
    turn into non-triangle triples once an edge with empty interfaces is detached.

    Returns ``(graph, esd, keep)``: ``esd`` is an ESD of ``graph[keep]``.
    """
    n = G.n
    edges = set(G.edges())
    weights = list(G.weights)
    hv = set(D.host_vertices)
    he = set(D.host_edges)
    ev = {x: set(s) for x, s in D.eta_vertex.items()}
    ee = {e: [set(s.all), set(s.at_p), set(s.at_q)] for e, s in D.eta_edge.items()}
    et = {t: set(s) for t, s in D.eta_triangle.items()}
    adj = {x: set(D.host_neighbors(x)) for x in hv}

    def iface(e, end):
        return ee[e][1] if end == e[0] else ee[e][2]

    def new_vertex(weight):
        nonlocal n
        weights.append(weight)
        n += 1
        return n - 1

    injected = []
    injections = 1 if heavy else rng.randint(1, 3)
    for _ in range(injections):
        centers = [x for x in sorted(hv) if len(adj[x]) >= (3 if heavy else 2)]
        if not centers:
            break
        x = rng.choice(centers)
        if heavy:
            # the two lightest edges at x get the triple, the heaviest is
            # the one that overflows once the triple is absorbed into x
            by_weight = sorted(adj[x], key=lambda a: (G.weight_of(D.full_edge(host_edge(x, a))), a))
            y, z = by_weight[0], by_weight[1]
        else:
            y, z = rng.sample(sorted(adj[x]), 2)
        yz = host_edge(y, z)
        tri = tuple(sorted((x, y, z)))
        if yz in he or tri in et:
            continue
        # a fresh host edge yz with empty interfaces makes xyz a host triangle
        he.add(yz)
        adj[y].add(z)
        adj[z].add(y)
        ee[yz] = [set(), set(), set()]
        t_vertex = new_vertex(rng.randint(0, 3))
        et[tri] = {t_vertex}
        injected.append((x, y, z, t_vertex))
        for other in (y, z):
            if heavy or rng.random() < 0.8:
                e = host_edge(x, other)
                b = new_vertex(rng.randint(0, 2))
                ee[e][0].add(b)
                ee[e][1].add(b)
                ee[e][2].add(b)
                # b sits in both interfaces, so it must be complete to the
                # other interfaces at both ends of e
                for end in e:
                    for f_end in adj[end]:
                        f = host_edge(end, f_end)
                        if f != e:
                            for c in iface(f, end):
                                edges.add(host_edge(b, c))
                edges.add(host_edge(t_vertex, b))
    G2 = Graph(n, sorted(edges), weights)
    D2 = Esd(frozenset(hv), frozenset(he), ev, {e: Strip(*r) for e, r in ee.items()}, et)
    # delete a few interface vertices (away from the overflow site in heavy mode)
    spared = {injected[0][0]} if heavy and injected else set()
    victims = set()
    for e in sorted(D2.host_edges):
        if spared & set(e):
            continue
        for end in e:
            if rng.random() < 0.25:
                victims |= D2.interface(e, end)
    keep = frozenset(range(n)) - victims
    if heavy and injected:
        x, y, z, tv = injected[0]
        Dk = restrict(D2, keep)
        W0 = G2.weight_of(keep) - weights[tv]
        F = {a: G2.weight_of(Dk.full_edge(host_edge(x, a)) - {tv}) for a in Dk.host_neighbors(x)}
        a = max((b for b in F if b not in (y, z)), key=lambda b: (F[b], -b))
        tw = max(0, W0 - 2 * F[a] + 2)
        # only keep the heavy weight when the input particles stay small
        if 2 * (max(F[y], F[z]) + tw) <= W0 + tw:
            weights[tv] = tw
            G2 = G2.with_weights(weights)
    return G2, D2, keep
