import io
import json

import pytest

from muchnik_intervals import catalog
from muchnik_intervals.cli import main
from muchnik_intervals.errors import CycleDetected, ParseError
from muchnik_intervals.formats import (
    SCHEMA_VERSION,
    AnalysisReport,
    parse_json,
    parse_poset,
    parse_text,
    poset_to_json,
    poset_to_text,
    to_dot,
)

DIAMOND_TEXT = """\
# the four-element Boolean lattice
poset 4
0 bot
3 top
covers
0 1
0 2   # inline comment
1 top
2 3
"""


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write_fixture(tmp_path, name):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(poset_to_json(catalog.poset(name))))
    return str(path)


def test_parse_text():
    p = parse_text(DIAMOND_TEXT)
    assert p.n == 4
    assert p.labels == ("bot", "1", "2", "top")
    assert p.cover_pairs == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_parse_text_without_labels():
    p = parse_text("poset 2\ncovers\n0 1\n")
    assert p.labels is None and p.leq[0, 1]


@pytest.mark.parametrize("text, line", [
    ("lattice 3\ncovers\n", 1),
    ("poset x\ncovers\n", 1),
    ("poset 3\n0 a\n", 2),
    ("poset 3\n5 a\ncovers\n", 2),
    ("poset 3\n0 a\n0 b\ncovers\n", 3),
    ("poset 3\ncovers\n0 1\n1 x y\n", 4),
    ("poset 3\ncovers\n0 7\n", 3),
    ("\n\n# nothing\n", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as e:
        parse_text(text)
    assert e.value.line == line


def test_cycle_in_file():
    with pytest.raises(CycleDetected):
        parse_text("poset 2\ncovers\n0 1\n1 0\n")


def test_parse_json():
    p = parse_json('{"size": 3, "labels": ["a", "b", "c"], "covers": [[0, 1], [1, 2]]}')
    assert p.leq[0, 2] and p.label(2) == "c"
    with pytest.raises(ParseError) as e:
        parse_json('{"size": 3,\n "covers": [[0, 1],, ]}')
    assert e.value.line == 2
    with pytest.raises(ParseError):
        parse_json('{"size": 2, "covers": [[0, "b"]]}')
    with pytest.raises(ParseError):
        parse_json('{"size": 2, "labels": ["a"], "covers": []}')


@pytest.mark.parametrize("name", ["diamond", "double_diamond", "example35", "fd3"])
def test_text_and_json_roundtrip(name):
    p = catalog.poset(name)
    assert parse_poset(poset_to_text(p)) == p
    assert parse_poset(json.dumps(poset_to_json(p))) == p


@pytest.mark.parametrize("name, nodes, edges", [("diamond", 4, 4), ("double_diamond", 7, 8), ("fd3", 18, None)])
def test_dot_counts(name, nodes, edges):
    dot = to_dot(catalog.poset(name))
    assert dot.count("[label=") == nodes
    if edges is not None:
        assert dot.count(" -> ") == edges
    assert dot.startswith("digraph") and "rankdir=BT" in dot


def test_report_roundtrip(tmp_path):
    code, out, _ = run("analyze", "--input", write_fixture(tmp_path, "double_diamond"))
    r = AnalysisReport.from_json(out)
    assert r.to_json() == out
    assert r.schema_version == SCHEMA_VERSION
    bad = json.loads(out)
    bad["schema_version"] = 99
    with pytest.raises(ParseError):
        AnalysisReport.from_dict(bad)


def test_analyze_double_diamond(tmp_path):
    code, out, _ = run("analyze", "--input", write_fixture(tmp_path, "double_diamond"))
    r = json.loads(out)
    assert code == 1
    assert r["realizable"] is False and r["dd_like"] is True
    assert r["witness"]["kind"] == "dd_like_interval"
    assert r["witness"]["bowtie"] == {"x0": "B", "x1": "C", "y0": "E", "y1": "F"}
    assert r["timing_seconds"] is None


def test_analyze_fd3(tmp_path):
    code, out, _ = run("analyze", "--input", write_fixture(tmp_path, "fd3"), "--json")
    r = json.loads(out)
    assert code == 0
    assert r["size"] == 18 and r["realizable"] and r["has_dd_like_subinterval"] is None


def test_analyze_timing_and_dot(tmp_path):
    path = write_fixture(tmp_path, "diamond")
    _, out, _ = run("analyze", "--input", path, "--timing")
    assert json.loads(out)["timing_seconds"] >= 0
    code, out, _ = run("analyze", "--input", path, "--dot")
    assert code == 0 and out.startswith("digraph")


def test_analyze_is_deterministic(tmp_path):
    path = write_fixture(tmp_path, "dd_like_2")
    assert run("analyze", "--input", path) == run("analyze", "--input", path)


def test_analyze_bad_input(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("poset 3\ncovers\n0 1\n1 x y\n")
    code, out, err = run("analyze", "--input", str(path))
    assert code == 2 and out == ""
    e = json.loads(err)
    assert e["error"] == "ParseError" and e["line"] == 4


def test_analyze_not_a_lattice(tmp_path):
    code, _, err = run("analyze", "--input", write_fixture(tmp_path, "bowtie"))
    assert code == 2 and json.loads(err)["error"] == "NotALattice"


def test_analyze_missing_file(tmp_path):
    code, _, err = run("analyze", "--input", str(tmp_path / "nope.txt"))
    assert code == 2


def test_model_example35(tmp_path):
    code, out, _ = run("model", "--poset", write_fixture(tmp_path, "example35_poset"), "--verify-f")
    r = json.loads(out)
    assert code == 0 and r["passed"]
    assert [d["name"] for d in r["degrees"]] == list("ABCDEFGH")


def test_model_bowtie(tmp_path):
    code, out, err = run("model", "--poset", write_fixture(tmp_path, "bowtie"))
    e = json.loads(err)
    assert code == 2 and out == ""
    assert e["error"] == "NotInitialSegment"
    assert e["witness"] == {"x0": "x0", "x1": "x1", "y0": "y0", "y1": "y1"}


def test_model_dyment():
    code, out, _ = run("model", "--dyment", "--max-size", "4")
    r = json.loads(out)
    assert code == 0 and r["violations"] == [] and r["structures"] == 9


def test_model_needs_poset():
    code, _, _ = run("model")
    assert code == 2


def test_enumerate_small():
    code, out, _ = run("enumerate", "--max-j", "1")
    r = json.loads(out)
    assert code == 0 and r["total_posets"] == 1 and r["by_size"][0]["realizable"] == 1
    code, _, err = run("enumerate", "--max-j", "9")
    assert code == 2 and json.loads(err)["error"] == "SizeBound"


def test_catalog():
    code, out, _ = run("catalog", "--list")
    names = [x["name"] for x in json.loads(out)]
    assert code == 0 and "double_diamond" in names and names == sorted(names)
    code, out, _ = run("catalog", "--name", "diamond")
    assert json.loads(out)["size"] == 4
    code, _, _ = run("catalog", "--name", "nonexistent")
    assert code == 2


def test_catalog_output_feeds_analyze(tmp_path):
    _, out, _ = run("catalog", "--name", "stacked_diamond")
    path = tmp_path / "s.json"
    path.write_text(out)
    code, _, _ = run("analyze", "--input", str(path))
    assert code == 0


def test_export(tmp_path):
    path = tmp_path / "d.txt"
    path.write_text(DIAMOND_TEXT)
    code, out, _ = run("export", "--input", str(path), "--dot")
    assert code == 0 and out.count(" -> ") == 4 and '"bot"' in out
