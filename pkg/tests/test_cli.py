from __future__ import annotations

import json
import pytest

from toruspack import io, svg
from toruspack.cli import run
from toruspack.packing import DELTA_TRI
from corpus import eight_disk_strip, triangular


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_number(capsys):
    assert _run(capsys, "classify-number", "7")[:2] == (0, "yes (2,1)\n")
    assert _run(capsys, "classify-number", "2")[:2] == (0, "no\n")
    assert _run(capsys, "classify-number", "2", "--strict")[0] == 1


def test_gen_triangular_then_analyze(capsys, tmp_path):
    f = tmp_path / "p.json"
    assert run(["gen-triangular", "--n1", "2", "--n2", "1", "-o", str(f)]) == 0
    assert io.packing_from_json(json.loads(f.read_text())).n == 7
    code, out, _ = _run(capsys, "analyze", str(f))
    rep = json.loads(out)
    assert code == 0 and rep["jammed"] and rep["n"] == 7


def test_gen_strip_auto_torus(capsys, tmp_path):
    f = tmp_path / "s.json"
    assert run(["gen-strip", "--a", "0", "--b", "5", "--c", "8", "--auto-torus", "-o", str(f)]) == 0
    doc = json.loads(f.read_text())
    assert doc["meta"]["n"] == [2, 1, 1, 1]
    assert doc["meta"]["g"] == ["1/7", ["0", "4/7"]]
    code, out, _ = _run(capsys, "analyze", str(f), "--exact")
    rep = json.loads(out)
    assert rep["jammed"] and rep["m"] == 16
    code, out, _ = _run(capsys, "gap-check", str(f))
    gap = json.loads(out)
    assert gap["ratio"] == "7/8" and gap["bound"] == "8/9" and gap["below_bound"]


def test_gen_strip_without_torus(capsys):
    code, _, err = _run(capsys, "gen-strip", "--a", "0", "--b", "0", "--c", "1", "--auto-torus", "--bound", "5")
    assert code == 1 and "no triangular torus" in err
    code, out, _ = _run(capsys, "gen-strip", "--a", "0", "--b", "0", "--c", "1")
    assert code == 0 and len(json.loads(out)["centers"]) == 1


def test_bad_rhombus_direction_exit_code(capsys):
    code, _, err = _run(capsys, "gen-strip", "--a", "0", "--b", "1", "--c", "3", "--g", "1/2", "1/2*sqrt3")
    assert code == 2 and err


def test_gen_tiling_and_flex(capsys, tmp_path):
    f = tmp_path / "d.json"
    assert run(["gen-tiling", "dodecagonal", "-o", str(f)]) == 0
    code, out, _ = _run(capsys, "flex", str(f), "--theta", "0.5", "--sweep", "5")
    rows = json.loads(out)["samples"]
    assert code == 0 and len(rows) == 5
    assert all(r["shape"] == "triangular" and r["max_edge_error"] < 1e-12 for r in rows)
    code, out, _ = _run(capsys, "analyze", str(f))
    rep = json.loads(out)
    assert not rep["jammed"] and rep["flex"]
    assert _run(capsys, "analyze", str(f), "--strict")[0] == 1


def test_flex_refuses_strips(capsys, tmp_path):
    f = tmp_path / "g.json"
    assert run(["gen-tiling", "rhombus-grid", "--p", "2", "--q", "1", "--s", "1", "-o", str(f)]) == 0
    code, _, err = _run(capsys, "flex", str(f), "--theta", "0.1")
    assert code == 2 and err


def test_census(capsys):
    assert _run(capsys, "census", "--a", "1", "--b", "1")[:2] == (0, "f3=8 f4=4 ratio=0.5\n")
    assert _run(capsys, "census", "--a", "0", "--b", "1")[0] == 2


def test_analyze_stdin_and_float(capsys, monkeypatch):
    import io as stdio

    doc = io.dumps(io.packing_to_json(eight_disk_strip()[1]))
    monkeypatch.setattr("sys.stdin", stdio.StringIO(doc))
    code, out, _ = _run(capsys, "analyze", "-", "--float")
    rep = json.loads(out)
    assert code == 0 and rep["jammed"] and rep["m"] == 16


def test_malformed_input(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{oops")
    code, _, err = _run(capsys, "analyze", str(f))
    assert code == 2 and "malformed" in err
    assert _run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 2
    f.write_text('{"centers": [[0, 0]], "radius": "1/2", "lattice": {"g1": [1, 0], "g2": [2, 0]}}')
    assert _run(capsys, "analyze", str(f))[0] == 2


def test_overlapping_packing_rejected(capsys, tmp_path):
    f = tmp_path / "o.json"
    f.write_text(json.dumps({"lattice": {"g1": [1, 0], "g2": [0, 1]}, "radius": 1, "centers": [[0, 0]]}))
    assert _run(capsys, "analyze", str(f))[0] == 2


def test_optimize_writes_manifest(capsys, tmp_path):
    code, out, _ = _run(capsys, "optimize", "--n", "1", "--seeds", "3", "--max-iters", "200",
                        "--threads", "2", "--out", str(tmp_path))
    assert code == 0 and "best density" in out
    man = json.loads((tmp_path / "manifest.json").read_text())
    assert [r["seed"] for r in man["runs"]] == [0, 1, 2]
    assert man["best"]["density"] == pytest.approx(DELTA_TRI, abs=1e-12)
    best = io.packing_from_json(json.loads((tmp_path / "best.json").read_text()))
    assert best.n == 1


def test_render(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(io.dumps(io.packing_to_json(triangular(2, 1))))
    out = tmp_path / "p.svg"
    assert run(["render", str(f), "-o", str(out), "--block", "2"]) == 0
    text = out.read_text()
    # one circle per disk per copy of the fundamental domain
    assert text.count("<circle") == 7 * 4
    t = tmp_path / "t.json"
    run(["gen-tiling", "snub-square", "-o", str(t)])
    run(["render", str(t), "-o", str(out), "--block", "1"])
    text = out.read_text()
    assert text.count("<polygon") == 1 + 12 and text.count("<circle") == 8


def test_svg_direct():
    s = svg.render_packing(triangular(1, 0), block=3)
    assert s.startswith("<svg") and s.count("<circle") == 9
