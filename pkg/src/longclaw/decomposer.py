"""Long-claw-or-separator driver.

``decompose(G, t)`` returns either an induced S_{t,t,t} of G or a set S of at
most ``3t + 11`` vertices with a rigid ESD of ``G - N[S]`` whose particles all
satisfy ``2 * weight <= W``.  The claims the argument relies on are checked at
runtime and reported through ``CertificationFailed``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    ArmTooShort,
    CertificationFailed,
    ContractViolation,
    Inconclusive,
    InvalidEsd,
    InvalidTreeShape,
    TooShort,
)
from .esd import (
    Esd,
    host_edge,
    interface_dominators,
    is_rigid,
    particles,
    restrict,
    trivial_esd,
    validate_esd,
)
from .graph import Graph, closed_neighborhood, complement, components, open_neighborhood
from .gyarfas import gyarfas_path
from .rigidify import RigidEsdResult, make_rigid
from .tiat import Decomposition, StttCopy, TiatConfig, Tree, extract_sttt, three_in_a_tree, verify_sttt


def size_bound(t: int) -> int:
    return 3 * t + 11


def worst_case_accounting(t: int) -> tuple[int, int, int, int]:
    """Sizes of Y, X, X_A and {last, z'} in the heavy-particle branch."""
    return (3 * t + 3, 4, 2, 2)


@dataclass(frozen=True)
class Anchors:
    x: int
    y: int
    z: int
    z_prime: int
    ell: int
    Q1: tuple[int, ...]
    Q2: tuple[int, ...]
    Qx: tuple[int, ...]
    Qy: tuple[int, ...]
    Qz: tuple[int, ...]
    t: int
    Q: tuple[int, ...] = ()

    @property
    def Y(self) -> frozenset[int]:
        return frozenset(self.Qx + self.Qy + self.Qz)

    @property
    def terminals(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)


def mark_anchors(Q: Sequence[int], t: int) -> Anchors:
    Q = tuple(Q)
    k = len(Q)
    if k <= size_bound(t):
        raise TooShort(f"path has {k} <= {size_bound(t)} vertices")
    iz = k - (t + 2)
    iy = iz - 2
    A = Anchors(
        x=Q[0],
        y=Q[iy],
        z=Q[iz],
        z_prime=Q[iz - 1],
        ell=Q[-1],
        Q1=Q[: iy + 1],
        Q2=Q[iz:],
        Qx=Q[: t + 1],
        Qy=Q[iy - t : iy + 1],
        Qz=Q[iz : iz + t + 1],
        t=t,
        Q=Q,
    )
    assert len(A.Y) == 3 * t + 3
    return A


def build_gprime(G: Graph, A: Anchors) -> frozenset[int]:
    """Vertex set of G' = G - (N(Y) - V(Q1) - V(Q2))."""
    removed = open_neighborhood(G, A.Y) - set(A.Q1) - set(A.Q2)
    keep = complement(G, removed)
    lost = [v for v in A.Q if v not in keep]
    if lost != [A.z_prime]:
        raise CertificationFailed("gprime-path", f"path vertices removed: {lost}, expected only {A.z_prime}")
    for v in A.terminals:
        if G.degree(v, keep) != 1:
            raise CertificationFailed("terminal-degree", f"terminal {v} has degree {G.degree(v, keep)} in G'")
    return keep


def normalize_isolated(G: Graph, D: Esd, within=None) -> Esd:
    """Split each isolated host vertex into one per component of its set; drop empty ones."""
    report = validate_esd(G, D, within)
    if not report.ok:
        raise InvalidEsd(report)
    nxt = max(D.host_vertices, default=-1) + 1
    hv = set(D.host_vertices)
    ev = dict(D.eta_vertex)
    for x in sorted(D.host_vertices):
        if D.host_degree(x):
            continue
        comps = components(G, D.vertex_set(x))
        if len(comps) == 1:
            continue
        hv.discard(x)
        ev.pop(x, None)
        for comp in comps:
            hv.add(nxt)
            ev[nxt] = comp
            nxt += 1
    return Esd(frozenset(hv), D.host_edges, ev, D.eta_edge, D.eta_triangle)


def find_big_particle(G: Graph, D: Esd, W: int, within=None):
    """``None`` if every particle has ``2 * weight <= W``; else a host edge with a big full-edge particle."""
    big = [p for p in particles(G, D, within) if 2 * p.weight > W]
    if not big:
        return None
    for p in big:
        if p.kind == "vertex" and D.host_degree(p.anchor) == 0:
            raise ContractViolation(f"isolated host vertex {p.anchor} carries weight {p.weight} > W/2")
    heavy_edges = sorted(e for e in D.host_edges if 2 * G.weight_of(D.full_edge(e)) > W)
    assert heavy_edges, "a big particle must lie in a big full-edge particle"
    return heavy_edges[0]


@dataclass
class BigParticleCertificate:
    S: frozenset[int]
    X: frozenset[int]
    X_A: frozenset[int]
    edge: tuple[int, int]


def big_particle_separator(G: Graph, A: Anchors, D: Esd, pq, keep) -> BigParticleCertificate:
    """Separator for the case where the full-edge particle of ``pq`` is big."""
    keep = frozenset(keep)
    pq = host_edge(*pq)
    W = G.total_weight
    particle = D.full_edge(pq)
    if 2 * G.weight_of(particle) <= W:
        raise ContractViolation(f"full-edge particle of {pq} is not big")
    Q1 = frozenset(A.Q1)
    if Q1 & D.edge_set(pq):
        raise CertificationFailed("Claim 1", f"Q1 meets the edge set of {pq}")
    if Q1 & particle:
        raise CertificationFailed("Claim 1", f"Q1 meets the particle of {pq}")
    X = closed_neighborhood(G, particle) & keep & Q1
    if len(X) > 4:
        raise CertificationFailed("|X| <= 4", f"X = {sorted(X)}")
    X_A = interface_dominators(G, D, pq, keep, check=False)
    if len(X_A) > 2:
        raise CertificationFailed("|X_A| <= 2")
    S = A.Y | X | X_A | {A.ell, A.z_prime}
    if len(S) > size_bound(A.t):
        raise CertificationFailed("|S| bound", f"|S| = {len(S)}")
    rest = complement(G, closed_neighborhood(G, S))
    for comp in components(G, rest):
        if 2 * G.weight_of(comp) > W:
            raise CertificationFailed("Claim 2", f"component of weight {G.weight_of(comp)} survives")
    return BigParticleCertificate(frozenset(S), X, X_A, pq)


@dataclass
class Separator:
    S: frozenset[int]
    esd: Esd
    branch: str  # short-path | rigid | rigid-separator | big-particle | trivial
    details: dict = field(default_factory=dict)


@dataclass
class ClawFound:
    copy: StttCopy
    details: dict = field(default_factory=dict)


def verify_outcome(G: Graph, t: int, outcome) -> dict[str, bool]:
    """Independent re-check of an outcome; returns named checks."""
    if isinstance(outcome, ClawFound):
        return {"verify_sttt": verify_sttt(G, outcome.copy) and outcome.copy.t == t}
    S = outcome.S
    rest = complement(G, closed_neighborhood(G, S))
    W = G.total_weight
    valid = validate_esd(G, outcome.esd, rest).ok
    checks = {
        "size": len(S) <= size_bound(t),
        "valid": valid,
        "rigid": is_rigid(outcome.esd).ok,
    }
    checks["refined"] = valid and all(2 * p.weight <= W for p in particles(G, outcome.esd, rest, check=False))
    return checks


def decompose(G: Graph, t: int, config: TiatConfig | None = None):
    """Return ``ClawFound`` or ``Separator``; raises Inconclusive / CertificationFailed."""
    if t < 1:
        raise ValueError("t must be at least 1")
    W = G.total_weight
    gp = gyarfas_path(G)
    Q = gp.Q
    details = {"Q": Q}
    if len(Q) <= size_bound(t):
        S = frozenset(Q)
        rest = complement(G, closed_neighborhood(G, S))
        outcome = Separator(S, trivial_esd(G, rest), "short-path" if Q else "trivial", details)
        return _checked(G, t, outcome)

    A = mark_anchors(Q, t)
    keep = build_gprime(G, A)
    details.update(anchors=A, gprime=keep)
    answer = three_in_a_tree(G, A.terminals, config, keep)
    if isinstance(answer, Tree):
        try:
            copy = extract_sttt(G, answer.vertices, A.terminals, t)
        except (InvalidTreeShape, ArmTooShort) as exc:
            raise CertificationFailed("tree-extraction", str(exc)) from exc
        return _checked(G, t, ClawFound(copy, details))
    if not isinstance(answer, Decomposition):
        raise Inconclusive(answer.reason)

    D = normalize_isolated(G, answer.esd, keep)
    pq = find_big_particle(G, D, W, keep)
    details["esd_gprime"] = D
    if pq is None:
        rest = complement(G, closed_neighborhood(G, A.Y))
        w = (W + 1) // 2
        result = make_rigid(G, restrict(D, rest), w, rest)
        details["make_rigid_steps"] = result.steps
        if isinstance(result, RigidEsdResult):
            return _checked(G, t, Separator(A.Y, result.esd, "rigid", details))
        S = A.Y | result.X
        rest = complement(G, closed_neighborhood(G, S))
        return _checked(G, t, Separator(S, trivial_esd(G, rest), "rigid-separator", details))

    cert = big_particle_separator(G, A, D, pq, keep)
    details["big_particle"] = cert
    rest = complement(G, closed_neighborhood(G, cert.S))
    return _checked(G, t, Separator(cert.S, trivial_esd(G, rest), "big-particle", details))


def _checked(G, t, outcome):
    checks = verify_outcome(G, t, outcome)
    outcome.details["checks"] = checks
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise CertificationFailed("outcome", f"failed checks: {failed}")
    return outcome
