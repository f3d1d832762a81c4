"""How induced paths between peripheral vertices sit inside an ESD.

For an ESD of G and an induced path P between two distinct peripheral
vertices, four facts must hold:

(i)   P has at most one vertex in each interface;
(ii)  every vertex of P lies in an edge set;
(iii) P meets each edge set in a subpath whose ends lie in the two
      interfaces and whose inner vertices avoid both interfaces;
(iv)  if P touches N[A] for the full-edge particle A of pq and its start is
      outside the set of pq, then P meets an interface at p or q of another
      host edge.

``path_violations`` returns human-readable descriptions of failures.
"""

from __future__ import annotations

import random
from collections import deque

from ..esd import Esd, host_edge
from ..graph import Graph, closed_neighborhood

EXHAUSTIVE_LIMIT = 14
SAMPLES = 200


def enumerate_induced_paths(G: Graph, u: int, v: int, limit: int | None = None) -> list[tuple[int, ...]]:
    """All induced u-v paths (depth-first, min-id order)."""
    out: list[tuple[int, ...]] = []

    def dfs(path, blocked):
        if limit is not None and len(out) >= limit:
            return
        last = path[-1]
        if last == v:
            out.append(tuple(path))
            return
        for w in sorted(G.neighbors(last)):
            if w in blocked:
                continue
            # w must not touch the path except at ``last``
            if any(G.has_edge(w, x) for x in path[:-1]):
                continue
            path.append(w)
            dfs(path, blocked | {w})
            path.pop()

    dfs([u], {u})
    return out


def _can_reach(G: Graph, start: int, target: int, banned: set[int]) -> bool:
    if start == target:
        return True
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for b in G.neighbors(a):
            if b in banned:
                continue
            if b == target:
                return True
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return False


def random_induced_path(G: Graph, u: int, v: int, rng: random.Random, max_steps: int = 20000):
    """One induced u-v path by randomized DFS with reachability pruning, or None."""
    path = [u]
    stack = [None]
    steps = 0

    def options():
        last = path[-1]
        # vertices adjacent to the path before ``last`` can never be used
        banned = set(path)
        for x in path[:-1]:
            banned |= G.neighbors(x)
        cands = []
        for w in G.neighbors(last):
            if w in banned:
                continue
            after = (banned | G.neighbors(last)) - {w}
            if w == v or (v not in after and _can_reach(G, w, v, after)):
                cands.append(w)
        rng.shuffle(cands)
        return cands

    stack[0] = options()
    while stack and steps < max_steps:
        steps += 1
        if path[-1] == v:
            return tuple(path)
        if not stack[-1]:
            stack.pop()
            path.pop()
            continue
        w = stack[-1].pop()
        path.append(w)
        stack.append(options() if w != v else [])
    return None


def sample_induced_paths(G: Graph, u: int, v: int, seed: int = 0, count: int = SAMPLES) -> list[tuple[int, ...]]:
    if G.n <= EXHAUSTIVE_LIMIT:
        return enumerate_induced_paths(G, u, v)
    rng = random.Random(seed)
    seen: dict[tuple[int, ...], None] = {}
    for _ in range(count):
        P = random_induced_path(G, u, v, rng)
        if P is not None:
            seen.setdefault(P)
    return list(seen)


def path_violations(G: Graph, D: Esd, P) -> list[str]:
    P = tuple(P)
    pos = {x: i for i, x in enumerate(P)}
    problems = []
    in_edges = set()
    for e, strip in D.eta_edge.items():
        in_edges |= strip.all
        # (i)
        for end, iface in zip(e, (strip.at_p, strip.at_q)):
            hit = iface & set(P)
            if len(hit) > 1:
                problems.append(f"(i) {sorted(hit)} in interface of {e} at {end}")
        # (iii)
        part = sorted((pos[x] for x in strip.all if x in pos))
        if part:
            if part != list(range(part[0], part[-1] + 1)):
                problems.append(f"(iii) path meets {e} in a non-contiguous set")
                continue
            ends = (P[part[0]], P[part[-1]])
            inner = [P[i] for i in part[1:-1]]
            if len(part) == 1:
                if ends[0] not in strip.both:
                    problems.append(f"(iii) lone vertex {ends[0]} not in both interfaces of {e}")
            else:
                a_ok = ends[0] in strip.at_p and ends[1] in strip.at_q
                b_ok = ends[0] in strip.at_q and ends[1] in strip.at_p
                if not (a_ok or b_ok):
                    problems.append(f"(iii) ends {ends} of the run in {e} not in opposite interfaces")
            for x in inner:
                if x in strip.at_p or x in strip.at_q:
                    problems.append(f"(iii) inner vertex {x} of run in {e} lies in an interface")
    # (ii)
    outside = [x for x in P if x not in in_edges]
    if outside:
        problems.append(f"(ii) vertices {outside} outside all edge sets")
    # (iv), from both ends
    for walk in (P, P[::-1]):
        start = walk[0]
        for pq in sorted(D.host_edges):
            if start in D.edge_set(pq):
                continue
            A = D.full_edge(pq)
            if not (closed_neighborhood(G, A) & set(walk)):
                continue
            p, q = pq
            found = False
            for r in (p, q):
                for s in D.host_neighbors(r):
                    f = host_edge(r, s)
                    if f != pq and D.interface(f, r) & set(walk):
                        found = True
            if not found:
                problems.append(f"(iv) path from {start} touches N[A] of {pq} without a foreign interface")
    return problems
