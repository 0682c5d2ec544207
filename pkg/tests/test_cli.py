import subprocess
import sys

import pytest

from conftest import fixture_path
from golden_cases import golden_path, load_cases, render_case
from ngraph.cli import COMMANDS, main, parse_graph_file, run
from ngraph.builders import example
from ngraph.graphio import GraphSyntaxError, ValidationFailure

CASES = load_cases()


@pytest.mark.parametrize("name,args", CASES, ids=[n for n, _ in CASES])
def test_golden(name, args):
    with open(golden_path(name), encoding="utf-8") as fh:
        expected = fh.read()
    assert render_case(args) == expected


def test_corpus_covers_every_command():
    used = {args[0] for _, args in CASES}
    assert set(COMMANDS) <= used
    assert len(CASES) >= 12


def test_exit_code_contract():
    for name, args in CASES:
        code = int(render_case(args).split("\n")[1].split()[1])
        if name.startswith("error_"):
            assert code == 2, name
        else:
            assert code in (0, 1), name


def test_documented_examples():
    code, text = run(["regular", "--graph", "E4", "--set", "v"])
    assert code == 1 and "not regular: double-perp = {u,v}" in text
    code, text = run(["ideals", "--graph", "E5"])
    assert code == 0 and text.startswith("4 saturated hereditary sets")
    code, _ = run(["kp-equal", "--graph", "E2", "p v", "s a S* a + s b S* b"])
    assert code == 0


def test_parse_graph_file():
    with open(fixture_path("E2.graph"), encoding="utf-8") as fh:
        assert parse_graph_file(fh.read()) == example("E2")
    with open(fixture_path("bad_missing_edge.graph"), encoding="utf-8") as fh:
        with pytest.raises(GraphSyntaxError):
            parse_graph_file(fh.read())
    with open(fixture_path("bad_not_bijective.graph"), encoding="utf-8") as fh:
        with pytest.raises(ValidationFailure):
            parse_graph_file(fh.read())


@pytest.mark.parametrize("args", [
    ["ideals", "--graph", "E2", "--bogus"],
    ["closure", "--graph", "E4", "--set", "zz"],
    ["kp-equal", "--graph", "E2", "p v"],
    ["separate", "--graph", "E2", "--cap", "{1:1}", "--bound", "{1:3}"],
    ["aperiodic", "--graph", "E2", "--pair-cap", "{1:2}", "--bound", "{1:1}"],
    ["kp-eval", "--graph", "E2", "p v +"],
    ["render", "--graph", "no/such/file.graph"],
    ["rep-check", "--graph", "E2"],
    ["ideals", "--graph", "E2", "--truncate", "x"],
])
def test_errors_exit_2(args):
    code, text = run(args)
    assert code == 2 and text.strip()


def test_main_streams(capsys):
    assert main(["closure", "--graph", "E4", "--set", "v"]) == 0
    out, err = capsys.readouterr()
    assert out == "closure = {v}\n" and err == ""
    assert main(["ideals"]) == 2
    out, err = capsys.readouterr()
    assert out == "" and "--graph is required" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ngraph", "ideals", "--graph", "E4", "--machine"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "count=3"
