"""Oracle backends for three-in-a-tree used by fixtures and tests.

``CompressingOracle`` starts from the canonical line-graph ESD and merges
host vertices of degree two into longer strips.  The result is still a rigid
ESD with peripheral terminals, but its full-edge particles are coarser, which
is what drives the decomposer into its heavy-particle branch.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..esd import Esd, Strip, host_edge
from ..tiat import Decomposition, LineGraphCert, line_graph_esd


def compress_once(D: Esd, p: int, protected=frozenset()) -> Esd | None:
    """Merge the two host edges at ``p`` into one, or ``None`` if not allowed."""
    nbrs = sorted(D.host_neighbors(p))
    if len(nbrs) != 2 or p in protected:
        return None
    a, b = nbrs
    ab = host_edge(a, b)
    if ab in D.host_edges:
        return None
    ap, pb = host_edge(a, p), host_edge(p, b)
    merged = D.edge_set(ap) | D.edge_set(pb) | D.vertex_set(p)
    strip = Strip(merged, D.interface(ap, a), D.interface(pb, b))
    ee = {e: s for e, s in D.eta_edge.items() if e not in (ap, pb)}
    ee[ab] = strip
    ev = {x: s for x, s in D.eta_vertex.items() if x != p}
    return Esd(D.host_vertices - {p}, frozenset(ee), ev, ee, D.eta_triangle)


@dataclass
class CompressingOracle:
    cert: LineGraphCert
    seed: int = 0
    rate: float = 1.0  # chance of compressing each eligible host vertex

    def __call__(self, G, Z, universe):
        D = line_graph_esd(G, self.cert, universe, Z)
        rng = random.Random(self.seed)
        for p in sorted(D.host_vertices):
            if rng.random() < self.rate:
                out = compress_once(D, p)
                if out is not None:
                    D = out
        return Decomposition(D)
