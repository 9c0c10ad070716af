"""Command-line surface: outputs, flags, and exit codes."""

import json

import pytest

from asjust.cli import main

from .fixtures import HAM_TEXT, P5_TEXT


@pytest.fixture()
def p5_file(tmp_path):
    path = tmp_path / "p5.lp"
    path.write_text(P5_TEXT)
    return str(path)


def test_wfs_output(p5_file, capsys):
    assert main(["wfs", p5_file]) == 0
    out = capsys.readouterr().out
    # atoms print in interning order (f before e in the source)
    assert "W+ = {f, e}" in out
    assert "W- = {d, c}" in out


def test_wfs_trace_is_json(p5_file, capsys):
    assert main(["wfs", p5_file, "--trace"]) == 0
    out = capsys.readouterr().out
    rows = json.loads(out[out.index("[") :])
    assert rows[0]["K"] == ["e", "f"]
    assert rows[0]["U"] == ["a", "b", "e", "f"]


def test_solve_models_and_exit(p5_file, capsys):
    assert main(["solve", p5_file]) == 0
    out = capsys.readouterr().out
    assert "Answer 1: a f e" in out
    assert "Answer 2: f b e" in out
    assert "2 answer set(s)" in out


def test_solve_exit_codes(tmp_path, capsys):
    empty = tmp_path / "none.lp"
    empty.write_text("p :- not p.")
    assert main(["solve", str(empty)]) == 10
    bad = tmp_path / "bad.lp"
    bad.write_text("p :- not")
    assert main(["solve", str(bad)]) == 2
    capsys.readouterr()
    assert main(["solve", str(tmp_path / "missing.lp")]) == 2


def test_solve_trace_file(p5_file, tmp_path, capsys):
    out_file = tmp_path / "traces.json"
    assert main(["solve", p5_file, "--trace", str(out_file)]) == 0
    capsys.readouterr()
    traces = json.loads(out_file.read_text())
    assert len(traces) == 2
    assert traces[0][0] == {"tag": None, "state": {"plus": [], "minus": []}}
    kinds = [step["tag"]["kind"] for step in traces[0][1:]]
    assert kinds == ["AL1", "AL1", "atmost", "choice", "AL2"]


def test_kill_false_filter(tmp_path, capsys):
    ham = tmp_path / "ham.lp"
    ham.write_text(HAM_TEXT)
    assert main(["solve", str(ham), "--kill-false"]) == 0
    out = capsys.readouterr().out
    assert "2 answer set(s)" in out
    assert "false" not in out.replace("answer set", "")


def test_oracle(p5_file, capsys):
    assert main(["oracle", p5_file]) == 0
    out = capsys.readouterr().out
    assert "2 answer set(s)" in out


def test_justify_json(p5_file, capsys):
    assert main(["justify", p5_file, "--model", "2", "--atom", "b"]) == 0
    data = json.loads(capsys.readouterr().out)
    labels = {n["id"]: (n["kind"], n["atom"]) for n in data["nodes"]}
    edges = {(labels[e["from"]], labels[e["to"]], e["label"]) for e in data["edges"]}
    assert (("pos", "b"), ("neg", "a"), "-") in edges


def test_justify_dot_and_render(p5_file, tmp_path, capsys):
    png = tmp_path / "graph.png"
    code = main(
        ["justify", p5_file, "--model", "2", "--atom", "c", "--sign", "-",
         "--format", "dot", "--render", str(png)]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph")
    assert "style=solid" in out
    assert png.exists() and png.stat().st_size > 0


def test_justify_unknown_atom(p5_file, capsys):
    assert main(["justify", p5_file, "--atom", "nosuch"]) == 2


def test_justify_bad_model_index(p5_file, capsys):
    assert main(["justify", p5_file, "--model", "9", "--atom", "b"]) == 2
