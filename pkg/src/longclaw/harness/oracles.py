"""Brute-force checks kept independent of the code paths they judge.

Nothing here calls into ``graph.components``, the validator or the
decomposer; components are found with a separate union-find.
"""

from __future__ import annotations

import itertools


def _union_find_components(G, keep):
    parent = {v: v for v in keep}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u in keep:
        for v in G.neighbors(u):
            if v in parent:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[max(ru, rv)] = min(ru, rv)
    groups = {}
    for v in keep:
        groups.setdefault(find(v), set()).add(v)
    return [frozenset(g) for _, g in sorted(groups.items())]


def brute_closed_neighborhood(G, S):
    out = set(S)
    for v in range(G.n):
        if any(G.has_edge(v, s) for s in S):
            out.add(v)
    return frozenset(out)


def remainder_components(G, S, within=None):
    """Components of ``G[within] - N[S]``."""
    universe = set(range(G.n)) if within is None else set(within)
    keep = universe - brute_closed_neighborhood(G, S)
    return _union_find_components(G, keep)


def check_separator(G, S, within=None, bound=None) -> bool:
    """Every component of ``G - N[S]`` satisfies ``2 * weight <= W`` (or ``weight <= bound``)."""
    W = G.total_weight
    for comp in remainder_components(G, S, within):
        wt = sum(G.weight(v) for v in comp)
        if bound is None:
            if 2 * wt > W:
                return False
        elif wt > bound:
            return False
    return True


def brute_is_induced_path(G, Q) -> bool:
    if len(set(Q)) != len(Q):
        return False
    for i, j in itertools.combinations(range(len(Q)), 2):
        if G.has_edge(Q[i], Q[j]) != (j == i + 1):
            return False
    return True


def brute_esd_valid(G, D, within=None) -> bool:
    """Definition-level ESD check by enumerating every vertex pair."""
    universe = set(range(G.n)) if within is None else set(within)
    sets = []  # (object, set)
    for x in D.host_vertices:
        sets.append((x, set(D.vertex_set(x))))
    for e in D.host_edges:
        sets.append((e, set(D.edge_set(e))))
        p, q = e
        if not (D.interface(e, p) <= D.edge_set(e) and D.interface(e, q) <= D.edge_set(e)):
            return False
    for tri in D.triangles():
        sets.append((tri, set(D.triangle_set(tri))))
    seen = []
    for _, s in sets:
        seen.extend(s)
    if sorted(seen) != sorted(universe):
        return False
    owner = {v: obj for obj, s in sets for v in s}

    def iface(e, x):
        return D.interface(e, x)

    for x in D.host_vertices:
        nbrs = sorted(D.host_neighbors(x))
        for y, z in itertools.permutations(nbrs, 2):
            for a in iface((x, y), x):
                for b in iface((x, z), x):
                    if not G.has_edge(a, b):
                        return False
    for u, v in itertools.combinations(sorted(universe), 2):
        if not G.has_edge(u, v) or owner[u] == owner[v]:
            continue
        ok = False
        for a, b in ((u, v), (v, u)):
            oa, ob = owner[a], owner[b]
            for x in D.host_vertices:
                for y in D.host_neighbors(x):
                    if a in iface((x, y), x):
                        if ob == x:
                            ok = True
                        for z in D.host_neighbors(x):
                            if z != y and b in iface((x, z), x):
                                ok = True
            if isinstance(oa, tuple) and len(oa) == 3:
                for e in itertools.combinations(oa, 2):
                    if b in iface(e, e[0]) and b in iface(e, e[1]):
                        ok = True
        if not ok:
            return False
    return True


def brute_is_tree(G, vertices) -> bool:
    vs = set(vertices)
    m = sum(1 for a, b in itertools.combinations(vs, 2) if G.has_edge(a, b))
    return bool(vs) and m == len(vs) - 1 and len(_union_find_components(G, vs)) == 1


def brute_is_rigid(D) -> bool:
    for e in D.host_edges:
        if not D.interface(e, e[0]) or not D.interface(e, e[1]):
            return False
    return all(D.vertex_set(x) for x in D.host_vertices if not D.host_neighbors(x))


def brute_particle_weights(G, D) -> list[int]:
    """Weights of every particle, computed straight from the definitions."""
    w = lambda s: sum(G.weight(v) for v in s)  # noqa: E731
    out = [w(D.vertex_set(x)) for x in D.host_vertices]
    for e in D.host_edges:
        p, q = e
        full = set(D.edge_set(e))
        ip, iq = set(D.interface(e, p)), set(D.interface(e, q))
        out.append(w(full - ip - iq))
        out.append(w((set(D.vertex_set(p)) | full) - iq))
        out.append(w((set(D.vertex_set(q)) | full) - ip))
        big = full | set(D.vertex_set(p)) | set(D.vertex_set(q))
        for tri in D.triangles():
            if p in tri and q in tri:
                big |= set(D.triangle_set(tri))
        out.append(w(big))
    out.extend(w(D.triangle_set(tri)) for tri in D.triangles())
    return out
