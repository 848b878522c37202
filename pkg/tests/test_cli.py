import io
import json
from fractions import Fraction

import pytest

from balcut.cli import dispatch
from balcut.errors import ParseError, RangeError
from balcut.fileio import parse_graph, parse_partition, write_graph, write_partition, write_report
from balcut.generators import barbell_graph
from balcut.graph import MultiGraph


def parse(text, **kw):
    return parse_graph(io.StringIO(text), **kw)


def test_parse_basic_and_header():
    g = parse("p 2 1\n0 1\n")
    assert g.n == 2 and g.m == 1

    g = parse("0 1\n0 1\n")
    assert g.m == 2 and g.volume() == 4  # parallel edges kept verbatim

    g = parse("# comment\n\n0 1\n2 0 # trailing\n")
    assert g.n == 3 and g.m == 2


def test_parse_errors():
    with pytest.raises(ParseError):
        parse("0 0\n")  # self-loop without the flag
    assert parse("0 0\n", allow_self_loops=True).has_self_loops
    with pytest.raises(ParseError):
        parse("0 1 2\n")
    with pytest.raises(ParseError):
        parse("a b\n")
    with pytest.raises(RangeError):
        parse("p 2 1\n0 5\n")
    with pytest.raises(ParseError):
        parse("p 2 2\n0 1\n")  # header m mismatch


def test_graph_round_trip():
    g = barbell_graph(4, 2)
    buf = io.StringIO()
    write_graph(g, buf)
    g2 = parse(buf.getvalue())
    assert g2.n == g.n and sorted(g2.edges) == sorted(g.edges)


def test_partition_round_trip():
    buf = io.StringIO()
    write_partition([0, 0, 1, 1], buf)
    labels = parse_partition(io.StringIO(buf.getvalue()), 4)
    assert labels == [0, 0, 1, 1]


def test_report_round_trips_and_is_stable():
    rep = {"b": Fraction(1, 3), "a": [1, 2], "c": {"y": 0.5, "x": frozenset({3, 1})}}
    buf1, buf2 = io.StringIO(), io.StringIO()
    write_report(rep, buf1)
    write_report(rep, buf2)
    assert buf1.getvalue() == buf2.getvalue()
    parsed = json.loads(buf1.getvalue())
    assert parsed["b"] == "1/3"
    assert parsed["c"]["x"] == [1, 3]


@pytest.fixture
def graph_file(tmp_path):
    path = tmp_path / "g.txt"
    with open(path, "w") as fh:
        write_graph(barbell_graph(6, 1), fh)
    return str(path)


def test_cli_balcut_smoke(graph_file, tmp_path, capsys):
    rep = tmp_path / "rep.json"
    part = tmp_path / "part.txt"
    code = dispatch([
        "balcut", "--phi", "1/4", "--r", "1", graph_file,
        "--out-report", str(rep), "--out-partition", str(part),
    ])
    assert code == 0
    report = json.loads(rep.read_text())
    assert report["branch"] == "balanced"
    assert report["cut_edges"] == 1
    labels = parse_partition(io.StringIO(part.read_text()), 12)
    assert sorted(set(labels)) == [0, 1]


def test_cli_determinism(graph_file, tmp_path):
    outs = []
    for i in range(2):
        rep = tmp_path / f"rep{i}.json"
        part = tmp_path / f"part{i}.txt"
        assert dispatch([
            "decompose", "--eps", "1/2", "--r", "1", graph_file,
            "--out-report", str(rep), "--out-partition", str(part),
        ]) == 0
        outs.append((rep.read_bytes(), part.read_bytes()))
    assert outs[0] == outs[1]


def test_cli_gen_pipe_certify(tmp_path, capsys):
    gfile = tmp_path / "gg.txt"
    assert dispatch(["gen", "gabber-galil", "--k", "4", "--out", str(gfile)]) == 0
    code = dispatch(["certify", "--r", "1", str(gfile)])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["branch"] == "certified"
    assert report["subset_size"] >= 8


def test_cli_verify(tmp_path, capsys):
    gfile = tmp_path / "c8.txt"
    with open(gfile, "w") as fh:
        write_graph(MultiGraph(8, [(i, (i + 1) % 8) for i in range(8)]), fh)
    cut = tmp_path / "cut.txt"
    with open(cut, "w") as fh:
        write_partition([0, 0, 0, 0, 1, 1, 1, 1], fh)
    assert dispatch(["verify", "--oracle", "sparsest", str(gfile), str(cut)]) == 0
    assert capsys.readouterr().out.startswith("PASS")

    with open(cut, "w") as fh:
        write_partition([0, 1, 1, 1, 1, 1, 1, 1], fh)
    assert dispatch(["verify", "--oracle", "sparsest", str(gfile), str(cut)]) == 0
    assert capsys.readouterr().out.startswith("FAIL")


def test_cli_prune(tmp_path, capsys):
    gfile = tmp_path / "k6.txt"
    from balcut.generators import complete_graph

    with open(gfile, "w") as fh:
        write_graph(complete_graph(6), fh)
    dels = tmp_path / "del.txt"
    dels.write_text("0 1\n")
    code = dispatch(["prune", "--phi", "1/2", "--deleted", str(dels), str(gfile)])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["boundary_edges"] <= report["boundary_budget"]


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\n")
    assert dispatch(["balcut", "--phi", "1/4", str(bad)]) == 2
    assert dispatch(["nonsense"]) == 1
    assert dispatch(["balcut", "--phi", "1/4", str(tmp_path / "missing.txt")]) == 2


def test_cli_certify_diagnostics(graph_file, capsys):
    code = dispatch(["certify", "--r", "1", "--diagnostics", graph_file])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    if "potential_trace" in report:
        trace = report["potential_trace"]
        assert trace[0] == 0.0
        assert all(b >= a - 1e-9 for a, b in zip(trace, trace[1:]))
