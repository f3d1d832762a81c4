import json
import random

import networkx as nx
import pytest

from conftest import path, star, to_nx

from longclaw import cli
from longclaw.esd import read_esd, validate_esd
from longclaw.graph import Graph, render_graph, write_graph
from longclaw.harness.backends import CompressingOracle, compress_once
from longclaw.harness.generators import GenParams, generate, write_instance
from longclaw.harness.lemmas import enumerate_induced_paths, path_violations, sample_induced_paths
from longclaw.harness.mutations import MUTATIONS, degrade
from longclaw.harness.oracles import brute_esd_valid, brute_is_induced_path, check_separator
from longclaw.tiat import line_graph, line_graph_esd, verify_sttt


# generators


def test_generation_is_byte_identical(tmp_path):
    for family in ("planted-esd", "line-graph", "planted-sttt", "random"):
        p = GenParams(family, 11, n=24, weight_max=4)
        a = write_instance(generate(p), str(tmp_path / "a"))
        b = write_instance(generate(p), str(tmp_path / "b"))
        assert len(a) == len(b)
        for fa, fb in zip(a, b):
            assert open(fa, "rb").read() == open(fb, "rb").read()


def test_root_path_gives_path():
    inst = generate(GenParams("line-graph", 0, n=4, shape="path"))
    assert nx.is_isomorphic(to_nx(inst.graph), nx.path_graph(3))


def test_root_star_gives_triangle():
    L, cert = line_graph(star(3))
    assert nx.is_isomorphic(to_nx(L), nx.complete_graph(3))
    cert.check(L)


def test_planted_sttt_verifies():
    inst = generate(GenParams("planted-sttt", 7, n=20, t=2))
    assert verify_sttt(inst.graph, inst.truth)
    assert inst.truth.center not in set().union(*map(set, inst.truth.arms))


def test_planted_esd_instances_validate():
    for seed in range(50):
        inst = generate(GenParams("planted-esd", seed, n=80))
        assert validate_esd(inst.graph, inst.truth).ok
        assert brute_esd_valid(inst.graph, inst.truth)


def test_random_family_is_connected():
    for seed in range(10):
        inst = generate(GenParams("random", seed, n=30, density=0.05))
        assert nx.is_connected(to_nx(inst.graph))


def test_unknown_shape_rejected():
    with pytest.raises(ValueError):
        generate(GenParams("line-graph", 0, shape="blob"))


# oracles


def test_check_separator_examples():
    assert check_separator(star(5), {0})
    assert not check_separator(path(9), set())
    assert check_separator(path(9), {4})


def test_brute_induced_path():
    assert brute_is_induced_path(path(5), [0, 1, 2, 3, 4])
    assert not brute_is_induced_path(Graph(3, [(0, 1), (1, 2), (0, 2)]), [0, 1, 2])


# mutations and degraded inputs


def test_every_mutation_is_detected():
    rng = random.Random(3)
    hits = 0
    for seed in range(20):
        inst = generate(GenParams("planted-esd", seed, n=30))
        for mutate in MUTATIONS:
            out = mutate(inst.graph, inst.truth, rng)
            if out is None:
                continue
            G2, D2, expect = out
            report = validate_esd(G2, D2)
            assert not report.ok
            assert any(expect(v) for v in report.violations)
            hits += 1
    assert hits > 30


def test_degrade_keeps_an_esd_of_the_kept_part():
    from longclaw.esd import restrict

    rng = random.Random(5)
    for seed in range(10):
        inst = generate(GenParams("planted-esd", seed, n=30))
        G2, D2, keep = degrade(inst.graph, inst.truth, rng, heavy=seed % 2 == 0)
        assert validate_esd(G2, restrict(D2, keep), keep).ok


# backends


def test_compressing_oracle_gives_rigid_coarser_esd():
    from longclaw.esd import is_rigid

    G, cert = line_graph(path(12))
    base = line_graph_esd(G, cert)
    D = CompressingOracle(cert)(G, (), frozenset(range(G.n))).esd
    assert validate_esd(G, D).ok and is_rigid(D).ok
    assert len(D.host_vertices) < len(base.host_vertices)
    assert compress_once(base, min(base.host_vertices)) is None  # degree-one end


# lemma harness


def test_induced_path_enumeration_matches_networkx():
    G = Graph(6, [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5), (1, 4)])
    ours = set(enumerate_induced_paths(G, 0, 5))
    nxG = to_nx(G)
    theirs = {tuple(p) for p in nx.all_simple_paths(nxG, 0, 5) if nx.is_isomorphic(nxG.subgraph(p), nx.path_graph(len(p)))}
    assert ours == theirs


def test_lemma_facts_on_planted_esds():
    checked = 0
    for seed in range(10):
        inst = generate(GenParams("planted-esd", seed, n=25))
        u, v = inst.peripheral
        for P in sample_induced_paths(inst.graph, u, v, seed=seed, count=40):
            assert path_violations(inst.graph, inst.truth, P) == []
            checked += 1
    assert checked > 10


def test_lemma_checker_flags_a_broken_path():
    G, cert = line_graph(path(6))
    D = line_graph_esd(G, cert)
    assert path_violations(G, D, (0, 2)) != []


# command line


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_cli_decompose_separator(tmp_path, capsys):
    g = tmp_path / "g.graph"
    write_graph(path(30), g)
    out = tmp_path / "r.json"
    code, text = run(["decompose", "--t", 1, "--input", g, "--out", out], capsys)
    assert code == 0
    report = json.loads(out.read_text())
    assert report["branch"] == "separator" and all(v == "pass" for v in report["checks"].values())
    assert read_esd(report["esd_file"]) is not None
    code, _ = run(["validate-esd", "--graph", g, "--esd", report["esd_file"], "--report", out], capsys)
    assert code == 0


def test_cli_decompose_claw(tmp_path, capsys):
    inst = generate(GenParams("planted-sttt", 1, n=22, t=1, shape="tadpole"))
    g = tmp_path / "g.graph"
    write_graph(inst.graph, g)
    out = tmp_path / "r.json"
    code, _ = run(["decompose", "--t", 1, "--input", g, "--out", out], capsys)
    assert code == 0
    assert json.loads(out.read_text())["branch"] == "sttt"


def test_cli_validate_rejects_bad_esd(tmp_path, capsys):
    inst = generate(GenParams("planted-esd", 2, n=30))
    G2, D2, _ = MUTATIONS[2](inst.graph, inst.truth, random.Random(0))
    g, e = tmp_path / "g.graph", tmp_path / "d.esd.json"
    write_graph(G2, g)
    from longclaw.esd import write_esd

    write_esd(D2, e)
    code, text = run(["validate-esd", "--graph", g, "--esd", e], capsys)
    assert code == 3 and json.loads(text)["ok"] is False


def test_cli_usage_errors(tmp_path, capsys):
    assert run(["decompose", "--t", 1], capsys)[0] == 1
    assert run(["gyarfas", "--input", tmp_path / "missing.graph"], capsys)[0] == 1
    bad = tmp_path / "bad.graph"
    bad.write_text("not a graph\n")
    assert run(["gyarfas", "--input", bad], capsys)[0] == 1
    assert run(["no-such-command"], capsys)[0] == 1
    assert run(["--help"], capsys)[0] == 0


def test_cli_find_sttt_budget(tmp_path, capsys):
    inst = generate(GenParams("random", 0, n=40, density=0.1))
    g = tmp_path / "g.graph"
    write_graph(inst.graph, g)
    code, text = run(["find-sttt", "--t", 3, "--input", g, "--budget", 1], capsys)
    assert code == 2
    code, text = run(["find-sttt", "--t", 1, "--input", g], capsys)
    assert code == 0 and "found" in json.loads(text)


def test_cli_gyarfas_and_generate(tmp_path, capsys):
    g = tmp_path / "g.graph"
    write_graph(path(5), g)
    code, text = run(["gyarfas", "--input", g], capsys)
    assert code == 0 and json.loads(text)["Q"][0] == 0
    code, text = run(["generate", "--family", "line-graph", "--seed", 4, "--out-prefix", tmp_path / "x"], capsys)
    assert code == 0 and len(json.loads(text)["written"]) == 3


def test_cli_selftest_arithmetic(capsys):
    code, text = run(["selftest", "--suite", "arithmetic"], capsys)
    assert code == 0 and text.startswith("[PASS] 8.")
