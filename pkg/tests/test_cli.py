import json

import pytest

from princlab.cli import main
from princlab.io import dumps, load_lattice
from princlab.library import boolean, chain, chain_poset


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, obj in (("c4", chain(4)), ("b3", boolean(3)), ("c3", chain_poset(3))):
        p = tmp_path / f"{name}.json"
        p.write_text(dumps(obj.to_dict()), encoding="utf-8")
        paths[name] = p
    q = tmp_path / "jplus.json"
    q.write_text(dumps({"d": "b3", "q": ["0", "a1", "a2", "a3", "1"]}), encoding="utf-8")
    paths["jplus"] = q
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_analyze_c4(files, capsys, tmp_path):
    code, out = run(capsys, "analyze", files["c4"], "--json", "--dot", tmp_path / "dot", "--figures", tmp_path / "fig")
    assert code == 0
    rep = json.loads(out.out)
    assert rep["con_shape"] == "B3" and rep["princ_size"] == 7 and rep["sandwich"]
    assert (tmp_path / "dot" / "C4.dot").exists() and (tmp_path / "dot" / "C4.con.dot").exists()
    assert "doublecircle" in (tmp_path / "dot" / "C4.con.dot").read_text()
    assert (tmp_path / "fig" / "C4.png").stat().st_size > 0


def test_analyze_text(files, capsys):
    code, out = run(capsys, "analyze", files["b3"])
    assert code == 0 and "Princ L: 8" in out.out and "shape B3" in out.out


def test_construct_c3(files, capsys, tmp_path):
    out_file = tmp_path / "built.json"
    code, out = run(capsys, "construct", "--poset", files["c3"], "--out", out_file, "--figures", tmp_path / "fig")
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert len(doc["elements"]) == 6 and doc["theorem"]["ok"] and doc["crucial_observations"]
    # round trip through analyze
    code, _ = run(capsys, "analyze", out_file)
    assert code == 0


def test_search_b3_jplus(files, capsys):
    code, out = run(capsys, "search", "--d", files["b3"], "--q", files["jplus"], "--max-size", 8, "--json")
    assert code == 4
    assert json.loads(out.out)["outcome"] == "none_up_to"


def test_search_witness_written(files, capsys, tmp_path):
    w = tmp_path / "w.json"
    code, out = run(capsys, "search", "--d", files["b3"], "--q", "full", "--max-size", 6, "--witness-out", w)
    assert code == 0 and "Witness" in out.out
    assert load_lattice(w).n == 5


def test_enumerate_out_roundtrip(capsys, tmp_path):
    code, out = run(capsys, "enumerate", "--size", 6, "--out", tmp_path / "l6")
    assert code == 0 and out.out.startswith("15 lattices")
    written = sorted((tmp_path / "l6").glob("*.json"))
    assert len(written) == 15
    for f in written:
        assert run(capsys, "analyze", f)[0] == 0
    code, out = run(capsys, "enumerate", "--size", 7, "--distributive", "--json")
    assert json.loads(out.out)["count"] == 8


def test_atlas_small(capsys, tmp_path):
    code, out = run(capsys, "atlas", "--max-d-size", 5, "--max-l-size", 9, "--out", tmp_path / "a.json",
                    "--figures", tmp_path / "fig")
    assert code == 0 and "status 0" in out.out
    doc = json.loads((tmp_path / "a.json").read_text())
    assert doc["status"] == 0 and len(doc["entries"]) == 7
    assert (tmp_path / "fig" / "atlas_5_9.png").exists()


def test_atlas_insufficient_bound(capsys):
    code, out = run(capsys, "atlas", "--min-d-size", 7, "--max-d-size", 7, "--max-l-size", 8)
    assert code == 4 and "bound:" in out.out


def test_gadget_default(capsys):
    code, out = run(capsys, "gadget", "--json")
    assert code == 0 and set(json.loads(out.out)["roles"]) == {"o", "i", "ap", "bp", "aq", "bq"}


def test_exit_codes(tmp_path, capsys, files):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert run(capsys, "analyze", bad)[0] == 1
    assert run(capsys, "analyze", tmp_path / "missing.json")[0] == 1
    notlat = tmp_path / "v.json"
    notlat.write_text(dumps({"elements": ["a", "b"], "covers": []}), encoding="utf-8")
    assert run(capsys, "analyze", notlat)[0] == 2
    cyc = tmp_path / "cyc.json"
    cyc.write_text(dumps({"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}), encoding="utf-8")
    assert run(capsys, "analyze", cyc)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["analyze", str(files["c4"]), "--bogus"])
    assert exc.value.code == 1
    q = tmp_path / "q.json"
    q.write_text(dumps({"q": ["0", "1"]}), encoding="utf-8")
    assert run(capsys, "search", "--d", files["b3"], "--q", q, "--max-size", 5)[0] == 2
    assert run(capsys, "search", "--d", files["b3"], "--q", "full", "--max-size", 99)[0] == 2
    unb = tmp_path / "unb.json"
    unb.write_text(dumps({"elements": ["a", "b"], "covers": []}), encoding="utf-8")
    assert run(capsys, "construct", "--poset", unb)[0] == 2


def test_deterministic_reports(files, capsys, tmp_path):
    outs = []
    for k in range(2):
        f = tmp_path / f"r{k}.json"
        run(capsys, "search", "--d", files["b3"], "--q", "full", "--max-size", 6, "--out", f)
        outs.append(f.read_bytes())
    assert outs[0] == outs[1]
