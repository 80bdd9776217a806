import json
import subprocess
import sys

import pytest

from deltacolor import cli, verify
from deltacolor.cli import emit_dot, main
from deltacolor.coloring import PartialColoring
from deltacolor.generators import FAMILIES, FamilySpec, gen_figure1
from deltacolor.multigraph import Multigraph
from deltacolor.structure import FAIL, ConjectureRecord, VerificationReport


def test_emit_dot_triangle():
    text = emit_dot(Multigraph(3, [(0, 1), (1, 2), (2, 0)]))
    lines = text.splitlines()
    assert lines[0] == "graph G {" and lines[-1] == "}"
    assert sum("--" not in ln and ln.strip().endswith(";") for ln in lines) == 3
    assert sum("--" in ln for ln in lines) == 3


def test_emit_dot_figure1():
    g, c = gen_figure1()
    text = emit_dot(g, c)
    assert text.count("label=") == 4
    assert text.count("style=dashed") == 2


def test_emit_dot_empty():
    assert emit_dot(Multigraph(0, [])) == "graph G {\n}\n"


def test_gen_and_round_trip(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["gen", "fat-cycle", "-k", "1", "-o", str(out)]) == 0
    g = Multigraph.from_text(out.read_text())
    assert (g.n, g.m, g.max_degree) == (3, 6, 4)
    assert out.read_text().startswith("c family fat-cycle k=1\n")


@pytest.mark.parametrize("family", [f for f in FAMILIES if f != "random-class2"])
def test_every_family_round_trips(tmp_path, family):
    out = tmp_path / f"{family}.txt"
    assert main(["gen", family, "-o", str(out)] + (["-k", "2"] if family == "flower" else [])) == 0
    g = Multigraph.from_text(out.read_text())
    params = {"fat-cycle": {"k": 1}, "hr-chain": {"r": 1}, "flower": {"k": 2}}.get(family, {})
    assert g.edges == FamilySpec(family, params).build().edges


def test_max_subgraph_report(tmp_path):
    g = tmp_path / "g.txt"
    main(["gen", "fat-cycle", "-k", "1", "-o", str(g)])
    r = tmp_path / "r.json"
    assert main(["max-subgraph", str(g), "--report", str(r), "-o", str(tmp_path / "c.txt")]) == 0
    report = json.loads(r.read_text())
    assert report["max_subgraph_size"] == 4 and report["r_e"] == 2
    c = PartialColoring.from_text(Multigraph.from_text(g.read_text()), (tmp_path / "c.txt").read_text())
    assert c.size == 4 and c.is_proper()


def test_procedures_from_cli(tmp_path, capsys):
    g = tmp_path / "p.txt"
    main(["gen", "petersen", "-o", str(g)])
    capsys.readouterr()
    assert main(["assign-cycles", str(g)]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 2
    assert main(["extend", str(g), "--two-factor", "0,1,2,3,4,10,11,12,13,14"]) == 0
    assert json.loads(capsys.readouterr().out)["size"] == 13
    assert main(["normalize", str(g), "--dot", str(tmp_path / "n.dot")]) == 0
    assert json.loads(capsys.readouterr().out)["size"] == 13
    assert (tmp_path / "n.dot").read_text().count("style=dashed") == 2


def test_non_maximum_coloring_exits_1(tmp_path, capsys):
    g = tmp_path / "c5.txt"
    g.write_text(Multigraph(5, [(i, (i + 1) % 5) for i in range(5)]).to_text())
    c = tmp_path / "c.txt"
    c.write_text("t 2\nx 0 1\nx 1 -\nx 2 -\nx 3 -\nx 4 -\n")
    assert main(["assign-cycles", str(g), "--coloring", str(c)]) == 1
    assert json.loads(capsys.readouterr().err)["outcome"] == "fail"


def test_usage_and_input_errors_exit_2(tmp_path):
    assert main([]) == 2
    assert main(["bogus"]) == 2
    assert main(["max-subgraph", str(tmp_path / "missing.txt")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("p 2 1\ne 0 0\n")
    assert main(["max-subgraph", str(bad)]) == 2
    assert main(["verify", "--builtin", "families", "--theorems", "nonsense"]) == 2


def test_budget_exceeded_exits_2(tmp_path):
    g = tmp_path / "h.txt"
    main(["gen", "hr-chain", "-r", "1", "-o", str(g)])
    assert main(["max-subgraph", str(g), "--node-budget", "3"]) == 2


def _corpus(tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    main(["gen", "fat-cycle", "-k", "1", "-o", str(d / "fat.txt")])
    main(["gen", "petersen", "-o", str(d / "petersen.txt")])
    main(["gen", "figure1", "-o", str(d / "fig1.txt")])
    return d


def test_verify_jsonl(tmp_path):
    d = _corpus(tmp_path)
    out = tmp_path / "report.jsonl"
    theorems = "cut,ratio,class1,matching,assignment"
    assert main(["verify", "--corpus", str(d), "--theorems", theorems, "-o", str(out)]) == 0
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(records) == 3 * 5
    assert [(r["instance"], r["theorem"]) for r in records] == [
        (inst, th) for inst in ("fat", "fig1", "petersen") for th in theorems.split(",")
    ]
    assert all(set(r) == {"theorem", "instance", "outcome", "witness"} for r in records)


def test_verify_is_deterministic_and_parallel_stable(tmp_path):
    d = _corpus(tmp_path)
    outs = []
    for i, jobs in enumerate(("1", "1", "2")):
        out = tmp_path / f"r{i}.jsonl"
        main(["verify", "--corpus", str(d), "--seed", "7", "--jobs", jobs, "-o", str(out)])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_verify_exit_1_on_failure(tmp_path, monkeypatch):
    d = _corpus(tmp_path)
    monkeypatch.setattr(
        verify, "check_ratio_bound", lambda g, cert, name: VerificationReport("ratio", name, FAIL, {"forced": True})
    )
    out = tmp_path / "r.jsonl"
    assert main(["verify", "--corpus", str(d), "--theorems", "ratio", "-o", str(out)]) == 1
    assert all(json.loads(line)["witness"] == {"forced": True} for line in out.read_text().splitlines())


def test_explore_writes_flagged_witnesses(tmp_path, monkeypatch):
    d = _corpus(tmp_path)
    flagged = tmp_path / "flagged"
    out = tmp_path / "explore.jsonl"
    assert main(["explore", "--corpus", str(d), "--flagged-dir", str(flagged), "-o", str(out)]) == 0
    assert all(json.loads(line)["equal"] for line in out.read_text().splitlines())
    assert not flagged.exists()
    monkeypatch.setattr(cli, "explore_conjecture", lambda g, cert, name, budget: ConjectureRecord(name, 1, 2, (0,)))
    assert main(["explore", "--corpus", str(d), "--flagged-dir", str(flagged), "-o", str(out)]) == 0
    assert sorted(p.name for p in flagged.iterdir()) == ["fat.txt", "fig1.txt", "petersen.txt"]
    assert Multigraph.from_text((flagged / "fat.txt").read_text()).m == 6


def test_module_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "deltacolor", "gen", "flower", "-k", "2"], capture_output=True, text=True
    )
    assert res.returncode == 0
    assert Multigraph.from_text(res.stdout).m == 10
