import json
import random

import pytest

from conftest import complete, path
from longclaw.errors import InvalidEsd, NotRigid
from longclaw.esd import (
    Esd,
    Strip,
    esd_from_dict,
    esd_from_json,
    esd_to_dict,
    esd_to_json,
    interface_dominators,
    is_rigid,
    particles,
    peripheral_vertices,
    read_esd,
    restrict,
    trivial_esd,
    validate_esd,
    write_esd,
)
from longclaw.graph import Graph, open_neighborhood
from longclaw.harness.generators import GenParams, generate, random_root
from longclaw.harness.mutations import MUTATIONS
from longclaw.harness.oracles import brute_esd_valid
from longclaw.tiat import line_graph, line_graph_esd


def claw_host_esd():
    """K3 on a, b, c = 0, 1, 2 over a claw host: center 0, leaves 1, 2, 3."""
    strips = {(0, leaf): Strip({v}, {v}, {v}) for leaf, v in ((1, 0), (2, 1), (3, 2))}
    return complete(3), Esd({0, 1, 2, 3}, strips.keys(), {}, strips)


def single_edge_esd(at_p=frozenset({0}), at_q=frozenset({4})):
    """P5 inside one host edge (0, 1); vertices v1..v5 are 0..4."""
    return path(5), Esd({0, 1}, {(0, 1)}, {}, {(0, 1): Strip(range(5), at_p, at_q)})


def by_kind(ps):
    out = {}
    for p in ps:
        out.setdefault(p.kind, []).append(p)
    return out


# validation


def test_claw_host_esd_is_valid():
    G, D = claw_host_esd()
    assert validate_esd(G, D).ok
    assert brute_esd_valid(G, D)


def test_trivial_esd_always_valid():
    for s in range(20):
        G = generate(GenParams("random", s, n=15, density=0.1)).graph
        assert validate_esd(G, trivial_esd(G)).ok


def test_rule_two_violation_has_witness():
    G = Graph(2)
    strips = {(0, 1): Strip({0}, {0}, {0}), (0, 2): Strip({1}, {1}, {1})}
    D = Esd({0, 1, 2}, strips.keys(), {}, strips)
    report = validate_esd(G, D)
    assert not report.ok
    assert [v.witness for v in report.by_rule("2")] == [(0, 0, 1)]
    assert not brute_esd_valid(G, D)


def test_partition_and_subset_violations():
    G = path(3)
    D = Esd({0, 1}, {(0, 1)}, {0: {0, 1}}, {(0, 1): Strip({1, 2}, {1}, {5})})
    report = validate_esd(G, D)
    rules = {v.rule for v in report.violations}
    assert {"1", "subset"} <= rules
    assert any(v.witness[:1] == (1,) and len(v.witness) == 3 for v in report.by_rule("1"))


def test_rule_three_violation():
    # a vertex set edge to the interior of an incident edge set is not allowed
    G = path(3)
    D = Esd({0, 1}, {(0, 1)}, {0: {0}}, {(0, 1): Strip({1, 2}, {2}, {2})})
    report = validate_esd(G, D)
    assert [v.witness for v in report.by_rule("3")] == [(0, 1)]


def test_esd_rejects_non_triangle_key():
    with pytest.raises(ValueError):
        Esd({0, 1, 2}, {(0, 1), (1, 2)}, {}, {}, {(0, 1, 2): {0}})


def test_mutations_are_rejected_with_witness():
    for s in range(15):
        inst = generate(GenParams("planted-esd", 700 + s, n=30, host=5))
        rng = random.Random(s)
        for k in range(9):
            G2, D2, expect = MUTATIONS[k % 3](inst.graph, inst.truth, rng)
            report = validate_esd(G2, D2)
            assert not report.ok
            assert any(expect(v) for v in report.violations)
            assert not brute_esd_valid(G2, D2)


def test_validator_agrees_with_brute_force_on_generated_instances():
    for s in range(40):
        inst = generate(GenParams("planted-esd", s, n=random.Random(s).randint(3, 40), host=4))
        assert validate_esd(inst.graph, inst.truth).ok and brute_esd_valid(inst.graph, inst.truth)


# particles


def test_single_edge_particles():
    G, D = single_edge_esd()
    ps = by_kind(particles(G, D))
    assert [p.weight for p in ps["full-edge"]] == [5]
    half = {p.anchor[1]: p for p in ps["half-edge"]}
    assert half[0].members == {0, 1, 2, 3} and half[0].weight == 4
    assert ps["edge-interior"][0].members == {1, 2, 3}
    assert all(p.weight == 0 for p in ps["vertex"])


def test_trivial_esd_particles_are_components():
    G = Graph(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6)])
    ps = particles(G, trivial_esd(G))
    assert [p.kind for p in ps] == ["vertex", "vertex"]
    assert [p.weight for p in ps] == [3, 4]


def test_triangle_particle_inside_full_edge():
    G = Graph(1)
    D = Esd({0, 1, 2}, {(0, 1), (0, 2), (1, 2)}, {}, {}, {(0, 1, 2): {0}})
    ps = by_kind(particles(G, D))
    assert [p.members for p in ps["triangle"]] == [frozenset({0})]
    full = {p.anchor: p.members for p in ps["full-edge"]}
    assert 0 in full[(0, 1)]


def test_particles_reject_invalid():
    G = Graph(2)
    with pytest.raises(InvalidEsd):
        particles(G, Esd({0}, set(), {0: {0}}))


def test_every_vertex_in_exactly_one_set_and_full_edge_formula():
    for s in range(20):
        inst = generate(GenParams("planted-esd", 300 + s, n=40, host=5))
        D = inst.truth
        seen = [v for _, members in D.all_sets() for v in members]
        assert sorted(seen) == list(range(inst.graph.n))
        for e in D.host_edges:
            p, q = e
            expected = set(D.vertex_set(p)) | set(D.vertex_set(q)) | set(D.edge_set(e))
            for tri in D.triangles():
                if p in tri and q in tri:
                    expected |= D.triangle_set(tri)
            assert D.full_edge(e) == expected


# rigidity, restriction, peripheral vertices


def test_line_graph_esd_is_rigid():
    G, cert = line_graph(random_root(random.Random(1), 12, "random", 0.3))
    D = line_graph_esd(G, cert)
    assert validate_esd(G, D).ok and is_rigid(D).ok


def test_rigidity_violations():
    G, D = single_edge_esd(at_p=frozenset())
    assert [v.witness for v in is_rigid(D).violations] == [((0, 1), 0)]
    D2 = Esd({0}, set())
    assert [v.witness for v in is_rigid(D2).violations] == [(0,)]


def test_restrict_examples():
    G, D = single_edge_esd()
    assert esd_to_dict(restrict(D, range(5))) == esd_to_dict(D)
    empty = restrict(D, ())
    assert validate_esd(Graph(0), empty).ok and empty.covered() == frozenset()
    R = restrict(D, {1, 2, 3, 4})
    assert R.interface((0, 1), 0) == frozenset()
    assert validate_esd(G, R, {1, 2, 3, 4}).ok
    assert not is_rigid(R).ok


def test_restrict_then_validate_on_induced_subgraph():
    for s in range(20):
        inst = generate(GenParams("planted-esd", 400 + s, n=30))
        keep = frozenset(random.Random(s).sample(range(30), 17))
        assert validate_esd(inst.graph, restrict(inst.truth, keep), keep).ok


def test_peripheral_examples():
    G, D = claw_host_esd()
    assert peripheral_vertices(G, D) == {0, 1, 2}
    assert peripheral_vertices(G, trivial_esd(G)) == frozenset()
    root = path(5)  # root edges 01, 12, 23, 34 become line-graph vertices 0..3
    L, cert = line_graph(root)
    assert peripheral_vertices(L, line_graph_esd(L, cert)) == {0, 3}


def test_peripheral_rejects_invalid():
    with pytest.raises(InvalidEsd):
        peripheral_vertices(Graph(1), Esd(set(), set()))


def test_trivial_esd_examples():
    E = trivial_esd(Graph(0))
    assert not E.host_vertices
    G = path(4)
    T = trivial_esd(G)
    assert len(T.host_vertices) == 1 and is_rigid(T).ok
    assert [p.members for p in particles(G, T)] == [frozenset(range(4))]


# interface dominators


def test_interface_dominators_examples():
    G, D = single_edge_esd()
    assert interface_dominators(G, D, (0, 1)) == {0, 4}
    G, D = single_edge_esd(at_p=frozenset({0, 1}))
    assert interface_dominators(G, D, (1, 0)) == {0, 4}
    G, D = single_edge_esd(at_p=frozenset())
    with pytest.raises(NotRigid):
        interface_dominators(G, D, (0, 1))


def test_interface_dominators_cover_neighborhood_of_full_edge():
    for s in range(40):
        inst = generate(GenParams("planted-esd", 500 + s, n=35, host=6, density=0.3))
        G, D = inst.graph, inst.truth
        for e in D.host_edges:
            A = D.full_edge(e)
            XA = interface_dominators(G, D, e)
            assert open_neighborhood(G, A) <= open_neighborhood(G, XA)


# files


def test_json_round_trip_and_format(tmp_path):
    G, D = claw_host_esd()
    doc = esd_to_dict(D)
    assert set(doc) == {"host", "eta"}
    assert "0-1" in doc["eta"]["edge"]
    assert not doc["eta"].get("vertex")  # empty sets are omitted
    assert esd_to_dict(esd_from_json(esd_to_json(D))) == doc
    write_esd(D, tmp_path / "d.json")
    assert esd_to_dict(read_esd(tmp_path / "d.json")) == doc
    assert json.loads((tmp_path / "d.json").read_text()) == json.loads(esd_to_json(D))


def test_json_with_triangles_round_trips():
    for s in range(10):
        inst = generate(GenParams("planted-esd", 900 + s, n=40, host=6, density=0.5))
        assert esd_to_dict(esd_from_dict(esd_to_dict(inst.truth))) == esd_to_dict(inst.truth)


def test_json_rejects_unknown_keys():
    G, D = claw_host_esd()
    doc = esd_to_dict(D)
    doc["extra"] = 1
    with pytest.raises(ValueError):
        esd_from_dict(doc)
    doc = esd_to_dict(D)
    doc["eta"]["edge"]["0-1"]["middle"] = []
    with pytest.raises(ValueError):
        esd_from_dict(doc)


def test_json_rejects_malformed_keys():
    doc = {"host": {"vertices": [0, 1], "edges": [[0, 1]]}, "eta": {"edge": {"1-0": {"all": [0], "at_p": [0], "at_q": [0]}}}}
    with pytest.raises(ValueError):
        esd_from_dict(doc)
