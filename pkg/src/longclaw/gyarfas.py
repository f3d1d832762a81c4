"""Induced paths whose closed neighborhood leaves only light components.

A set is *big* when ``2 * weight > W`` (``W`` the total weight of G), so at most
one component of any ``G - N[X]`` is big.  The path is grown from the
minimum-id vertex of the big component, always stepping to the minimum-id
vertex that touches the current big component, until no big component is
left; trailing vertices are then trimmed while the property still holds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import PropertyViolated
from .graph import Graph, closed_neighborhood, complement, components, is_induced_path, open_neighborhood


@dataclass
class GyarfasResult:
    Q: tuple[int, ...]
    trace: list[tuple[int, int]] = field(default_factory=list)  # (appended vertex, |big component| before)


def big_component(G: Graph, removed) -> frozenset[int] | None:
    """The unique component of ``G - removed`` with ``2 * weight > W``, if any."""
    W = G.total_weight
    for comp in components(G, complement(G, removed)):
        if 2 * G.weight_of(comp) > W:
            return comp
    return None


def is_small_after(G: Graph, Q: Sequence[int]) -> bool:
    return big_component(G, closed_neighborhood(G, Q)) is None


def gyarfas_path(G: Graph) -> GyarfasResult:
    start = big_component(G, ())
    if start is None:
        return GyarfasResult(())
    P = [min(start)]
    trace = [(P[0], len(start))]
    region = start  # big component of G - N[P minus its last vertex]
    while True:
        big = big_component(G, closed_neighborhood(G, P))
        if big is None:
            break
        assert big <= region, "big component escaped the tracked region"
        candidates = open_neighborhood(G, big) & region & G.neighbors(P[-1])
        if not candidates:
            raise AssertionError(f"no extension vertex after {P}; the extension invariant is broken")
        u = min(candidates)
        P.append(u)
        trace.append((u, len(big)))
        region = big
    Q = trim_minimal(G, P)
    return GyarfasResult(tuple(Q), trace)


def trim_minimal(G: Graph, Q: Sequence[int]) -> tuple[int, ...]:
    """Drop trailing vertices while the remaining prefix still leaves no big component."""
    Q = list(Q)
    if not is_induced_path(G, Q) or not is_small_after(G, Q):
        raise PropertyViolated(f"{Q} is not an induced path leaving only small components")
    while Q and is_small_after(G, Q[:-1]):
        Q.pop()
    return tuple(Q)


def is_prefix_minimal(G: Graph, Q: Sequence[int]) -> bool:
    return not Q or not is_small_after(G, Q[:-1])
