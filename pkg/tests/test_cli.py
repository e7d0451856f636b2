import json

import pytest

from sandlat.cli import EXIT_CAPACITY, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, parse_n_range
from sandlat.statespace import StateGraph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_dot(capsys):
    code, out, _ = run(capsys, "generate", "--n", "4", "--rule", "spm", "--format", "dot")
    assert code == EXIT_OK
    assert out.count("->") == 3
    assert sum(1 for line in out.splitlines() if "label=" in line and "->" not in line) == 4


def test_generate_json(capsys):
    code, out, _ = run(capsys, "generate", "--n", "3", "--rule", "theta:-1", "--format", "json")
    assert code == EXIT_OK
    g = StateGraph.from_json(out)
    assert len(g) == 10 and len(json.loads(out)["nodes"]) == 10


def test_generate_text_and_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "--n", "6", "--rule", "lb")
    assert code == EXIT_OK and len(out.splitlines()) == 11
    path = tmp_path / "edges.csv"
    assert main(["generate", "--n", "4", "--rule", "lb", "--format", "csv", "-o", str(path)]) == EXIT_OK
    lines = path.read_text().splitlines()
    assert lines[0] == "from,pos,to,kind" and len(lines) == 5


def test_generate_with_origin(capsys):
    code, out, _ = run(capsys, "generate", "--n", "6", "--rule", "cfg:2", "--origin", "[6]")
    assert code == EXIT_OK
    assert out.split() == ["[6,0,0,0,0,0]", "[4,1,1,0,0,0]", "[2,2,2,0,0,0]"]


@pytest.mark.parametrize("argv", [
    ["generate", "--n", "70", "--rule", "lb"],
    ["generate", "--n", "4", "--rule", "bogus"],
    ["generate", "--n", "4", "--rule", "lb", "--origin", "[5]"],
    ["verify", "--n", "3..1"],
    ["verify", "--n", "x"],
    ["nonsense"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_capacity(capsys):
    code, _, err = run(capsys, "generate", "--n", "8", "--rule", "lb", "--cap", "5")
    assert code == EXIT_CAPACITY and "error" in err


def test_parse_n_range():
    assert parse_n_range("4") == [4]
    assert parse_n_range("1..3") == [1, 2, 3]


def test_verify_prop4_row(capsys):
    code, out, _ = run(capsys, "verify", "--n", "4", "--suite", "prop4")
    assert code == EXIT_OK
    assert '4,theta=2,fixed_point,pass,"[2,1,1,0]"' in out.splitlines()


def test_verify_all_small_with_figure(capsys, tmp_path):
    fig = tmp_path / "summary.png"
    csv_path = tmp_path / "verify.csv"
    code = main(["verify", "--n", "1..4", "--suite", "all", "-o", str(csv_path), "--figure", str(fig)])
    assert code == EXIT_OK
    rows = csv_path.read_text().splitlines()
    assert rows[0] == "n,param,property,result,witness"
    assert all(",pass," in r for r in rows[1:])
    assert fig.stat().st_size > 0


def test_verify_failure_exit(capsys, monkeypatch):
    from sandlat import verify

    monkeypatch.setitem(verify.SUITES, "thm1", lambda n: [verify.Row(n, "", "x", False, "boom")])
    code, _, err = run(capsys, "verify", "--n", "2", "--suite", "thm1")
    assert code == EXIT_FAIL and "boom" in err


def test_classes(capsys, tmp_path):
    code, out, _ = run(capsys, "classes", "--n", "4", "--members")
    assert code == EXIT_OK
    assert out.splitlines() == [
        "[2,1,1,0] size=4 members=[4,0,0,0] [3,1,0,0] [2,2,0,0] [2,1,1,0]",
        "[1,1,1,1] size=1 members=[1,1,1,1]",
    ]
    fig = tmp_path / "classes.png"
    dot = tmp_path / "classes.dot"
    assert main(["classes", "--n", "6", "--format", "dot", "-o", str(dot), "--figure", str(fig)]) == EXIT_OK
    assert dot.read_text().count("peripheries=2") == 4
    assert fig.stat().st_size > 0


def test_fixed_point(capsys):
    code, out, _ = run(capsys, "fixed-point", "--n", "10", "--theta", "2")
    assert code == EXIT_OK and out.strip() == "[4,3,2,1,0,0,0,0,0,0]"
    code, out, _ = run(capsys, "fixed-point", "--n", "3", "--theta", "1")
    assert out.strip() == "[1,1,1]"


@pytest.mark.parametrize("cmd", ["chain", "theta-report"])
def test_chain(capsys, tmp_path, cmd):
    fig = tmp_path / "chain.png"
    code, out, _ = run(capsys, cmd, "--n", "3", "--figure", str(fig))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "theta,size,fixed_point,chain_length,lattice,suborder,filter"
    body = [line for line in lines[1:] if not line.startswith("#")]
    assert [line.split(",")[0] for line in body] == ["3", "2", "1", "0", "-1"]
    assert any("clamped" in line for line in lines if line.startswith("#"))
    assert fig.stat().st_size > 0


def test_cfg_verify(capsys):
    code, out, _ = run(capsys, "cfg-verify", "--n", "6", "--m", "2")
    assert code == EXIT_OK
    assert len(out.splitlines()) == 4 and all(",pass," in r for r in out.splitlines()[1:])


def test_cfg_language(capsys, tmp_path):
    code, out, _ = run(capsys, "cfg-language", "--n", "4", "--m", "1", "--L", "3")
    assert code == EXIT_OK
    assert out.splitlines() == ["", "1", "1 1", "1 1 2"]
    path = tmp_path / "words.txt"
    assert main(["cfg-language", "--n", "4", "--m", "1", "--L", "3", "-o", str(path)]) == EXIT_OK
    assert path.read_text() == out
