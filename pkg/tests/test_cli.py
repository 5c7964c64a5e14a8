import json

import pytest

from pentaforge.cli import main
from pentaforge.families import add_universal
from pentaforge.graph import Graph, load_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, g: Graph):
    path = tmp_path / name
    path.write_text(g.to_text())
    return str(path)


def test_gen_villa_writes_graph_and_certificate(tmp_path, capsys):
    out = tmp_path / "v.graph"
    code, _, _ = run(capsys, "gen", "villa", "--t", "3", "--budget", "15", "--seed", "7", "-o", str(out))
    assert code == 0
    g = load_graph(out.read_text())
    assert 7 <= g.n <= 15
    cert = json.loads((tmp_path / "v.cert.json").read_text())
    assert cert["core"]["kind"] == "villa" and cert["seed"] == 7 and cert["core"]["t"] == 3
    assert out.read_text().startswith("# family villa seed 7\n")
    code, _, _ = run(capsys, "verify", str(out), str(tmp_path / "v.cert.json"))
    assert code == 0


def test_gen_is_deterministic(tmp_path, capsys):
    a = run(capsys, "gen", "mansion", "--seed", "3", "--budget", "18")[1]
    b = run(capsys, "gen", "mansion", "--seed", "3", "--budget", "18")[1]
    assert a == b
    assert a != run(capsys, "gen", "mansion", "--seed", "4", "--budget", "18")[1]


def test_gen_base_m0(tmp_path, capsys):
    out = tmp_path / "m0.graph"
    assert run(capsys, "gen", "base:M0", "-o", str(out))[0] == 0
    assert load_graph(out.read_text()).n == 12


def test_gen_errors(capsys, monkeypatch):
    monkeypatch.delenv("PENTAFORGE_SEED", raising=False)
    code, _, err = run(capsys, "gen", "crown", "--budget", "3", "--seed", "1")
    assert code == 2 and "budget" in err
    assert run(capsys, "gen", "crown")[0] == 2
    assert run(capsys, "gen", "dodecahedron", "--seed", "1")[0] == 2
    assert run(capsys, "gen", "base:M9")[0] == 2
    monkeypatch.setenv("PENTAFORGE_SEED", "5")
    assert run(capsys, "gen", "crown")[0] == 0


def test_gen_batch_json(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "ring", "--k", "6", "--seed", "2", "--count", "3", "--format", "json")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 3
    seeds = [json.loads(line)["certificate"]["seed"] for line in lines]
    assert seeds == [2, 3, 4]
    run(capsys, "gen", "pentagon", "--t", "4", "--count", "2", "-o", str(tmp_path / "p.graph"),
        "--dot", str(tmp_path / "p.dot"))
    assert (tmp_path / "p-1.graph").exists() and (tmp_path / "p-1.cert.json").exists()
    assert (tmp_path / "p-0.dot").read_text().startswith("graph")


def test_gen_fixed_families(capsys):
    code, out, _ = run(capsys, "gen", "hyperhole", "--sizes", "2,1,1,1,1")
    assert code == 0 and load_graph(out).n == 6
    code, out, _ = run(capsys, "gen", "thicken", "--base", "T0", "--mult", "2,2,2,2,2,2,2,2,2")
    assert code == 0 and load_graph(out).n == 18


def test_check(tmp_path, capsys):
    code, out, _ = run(capsys, "check", write(tmp_path, "c4.graph", Graph.cycle(4)))
    assert code == 1 and json.loads(out)["profile"]["C4"] is not None
    code, out, _ = run(capsys, "gen", "mansion", "--seed", "1")
    path = tmp_path / "m.graph"
    path.write_text(out)
    assert run(capsys, "check", str(path))[0] == 0
    bad = tmp_path / "bad.graph"
    bad.write_text("p 3\ne 0 7\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "line 2" in err
    assert run(capsys, "check", str(tmp_path / "missing.graph"))[0] == 2


def test_classify(tmp_path, capsys):
    out = tmp_path / "b.graph"
    run(capsys, "gen", "basket", "--seed", "9", "-o", str(out))
    code, text, _ = run(capsys, "classify", str(out))
    assert code == 0 and json.loads(text)["outcome"] == "in_class"
    code, text, _ = run(capsys, "classify", write(tmp_path, "k3.graph", Graph.complete(3)))
    assert code == 0 and json.loads(text)["outcome"] == "has_simplicial"
    assert run(capsys, "classify", write(tmp_path, "c6.graph", Graph.cycle(6)))[0] == 1


def test_cwd(tmp_path, capsys):
    out = tmp_path / "v.graph"
    run(capsys, "gen", "villa", "--seed", "4", "-o", str(out))
    code, text, _ = run(capsys, "cwd", str(out))
    res = json.loads(text)
    assert code == 0 and res["verified"] and res["width"] <= 4
    code, text, _ = run(capsys, "cwd", str(out), "--format", "text")
    assert text.startswith("(")
    assert run(capsys, "cwd", write(tmp_path, "c4.graph", Graph.cycle(4)))[0] == 1


def test_color(tmp_path, capsys):
    path = write(tmp_path, "w.graph", add_universal(Graph.cycle(5), 1))
    code, text, _ = run(capsys, "color", path)
    assert code == 0 and json.loads(text)["chi"] == 4
    assert run(capsys, "color", path, "--k", "3")[0] == 1
    code, text, _ = run(capsys, "color", path, "--k", "4")
    assert code == 0 and len(json.loads(text)["assignment"]) == 6
    assert run(capsys, "color", write(tmp_path, "c4.graph", Graph.cycle(4)))[0] == 1


def test_verify_rejects_wrong_certificates(tmp_path, capsys):
    out = tmp_path / "v.graph"
    run(capsys, "gen", "villa", "--seed", "4", "-o", str(out))
    other = tmp_path / "c.graph"
    run(capsys, "gen", "crown", "--seed", "4", "-o", str(other))
    assert run(capsys, "verify", str(out), str(tmp_path / "c.cert.json"))[0] == 1
    junk = tmp_path / "junk.json"
    junk.write_text("{}")
    assert run(capsys, "verify", str(out), str(junk))[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
