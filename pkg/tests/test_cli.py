from __future__ import annotations

import io
import subprocess
import sys
from pathlib import Path

import pytest

from coxcent.cli import main
from coxcent.graph import counterexample_graph


def run(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def counter_file(tmp_path: Path) -> str:
    path = tmp_path / "counter.txt"
    path.write_text(counterexample_graph().to_text(), encoding="utf-8")
    return str(path)


def test_roots_tables() -> None:
    code, text = run("roots", "--type", "E8", "--format", "tsv")
    lines = text.splitlines()
    assert code == 0 and len(lines) == 121
    assert lines[-1].split("\t")[2] == "[2,3,4,6,5,4,3,2]"
    code, text = run("roots", "--type", "A1", "--format", "tsv")
    assert code == 0 and len(text.splitlines()) == 2
    code, text = run("roots", "--type", "H4")
    assert code == 0 and text.startswith("# positive roots of H4")


def test_roots_of_parabolic_subset(counter_file: str) -> None:
    code, text = run("roots", "--graph", counter_file, "--subset", "4,5", "--format", "tsv")
    assert code == 0 and len(text.splitlines()) == 4


def test_roots_rejects_infinite_type(counter_file: str, capsys) -> None:
    code, _ = run("roots", "--graph", counter_file)
    assert code == 3
    assert "offending component" in capsys.readouterr().err


def test_verify_counterexample(counter_file: str) -> None:
    code, text = run("verify", "--graph", counter_file, "--subset", "4,5")
    assert code == 1 and text.rstrip().endswith("REFUTED-HYPOTHESIS-FALSE")
    assert "moves [1,0,0,0,0,0,0] to [0,1,0,0,0,0,0]" in text
    code, text = run("verify", "--graph", counter_file, "--subset", "4", "--depth", "6")
    assert code == 0 and text.rstrip().endswith("VERIFIED")
    assert "0 violation(s)" in text


def test_verify_finite_type_is_vacuous() -> None:
    code, text = run("verify", "--type", "D5", "--subset", "1")
    assert code == 0 and "VERIFIED" in text


def test_verify_truncation_is_distinct(tmp_path: Path) -> None:
    path = tmp_path / "g.txt"
    path.write_text("nodes 6\nedge 1 2 3\nedge 2 3 3\nedge 3 4 3\nedge 4 1 3\nedge 5 6 4\n", encoding="utf-8")
    code, text = run("verify", "--graph", str(path), "--subset", "1", "--max-nodes", "1")
    assert code == 2 and "TRUNCATED" in text and "caveat" in text


def test_centralizer_report_and_dot(counter_file: str) -> None:
    code, text = run("centralizer", "--graph", counter_file, "--subset", "4,5")
    assert code == 0 and "FINITE-PART" in text and "Y-GENERATORS" in text
    code, text = run("centralizer", "--graph", counter_file, "--subset", "4,5", "--format", "dot")
    assert code == 0 and text.startswith("digraph")
    code, text = run("centralizer", "--type", "D7", "--subset", "1,2,3")
    assert code == 0 and "Y-GENERATORS\n\n" in text


def test_centralizer_full_set_has_one_node() -> None:
    code, text = run("centralizer", "--type", "B3", "--subset", "1,2,3")
    assert code == 0
    nodes = text.split("NODES\n")[1].split("\n\n")[0].splitlines()
    assert len(nodes) == 1


def test_decompose_d7_example() -> None:
    # u = ω3 ω2 ω1 ω0, written left to right
    word = "6,5,4,3,7,5,4,6,5,7,3,4,5,6,2,3,4,5,1,2,3,4"
    code, text = run("decompose", "--type", "D7", "--subset", "5", "--word", word, "--y", "1,2,3", "--z", "5,4,3")
    assert code == 0
    rows = [line.split("\t") for line in text.splitlines()[2:]]
    assert [r[1] for r in rows] == ["W", "N", "N", "N"]
    assert [r[4] for r in rows] == ["8", "4", "6", "4"]


def test_decompose_identity_and_bad_word() -> None:
    code, text = run("decompose", "--type", "A3", "--y", "1", "--z", "1")
    assert code == 0 and len(text.splitlines()) == 2
    code, _ = run("decompose", "--type", "A3", "--word", "1", "--y", "1", "--z", "1")
    assert code == 3
    code, _ = run("decompose", "--type", "A3", "--word", "9", "--y", "1", "--z", "1")
    assert code == 3


def test_counterexample_command() -> None:
    code, text = run("counterexample")
    assert code == 0
    assert "walk: (4,5) -> (3,4) -> (1,3)" in text
    assert "PASS w.alpha_1 = alpha_2" in text
    assert text.rstrip().endswith("PASS")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["roots"],
        ["roots", "--type", "Q9"],
        ["roots", "--graph", "/nonexistent/graph.txt"],
        ["verify", "--type", "A3", "--subset", "7"],
        ["verify", "--type", "A3", "--max-nodes", "0"],
        ["roots", "--type", "A3", "--format", "dot"],
    ],
)
def test_input_errors(argv: list[str]) -> None:
    assert run(*argv)[0] == 3


def test_malformed_graph_file(tmp_path: Path) -> None:
    path = tmp_path / "bad.txt"
    path.write_text("nodes 2\nedge 1 2 7\n", encoding="utf-8")
    assert run("verify", "--graph", str(path))[0] == 3


def test_module_entry_point() -> None:
    proc = subprocess.run([sys.executable, "-m", "coxcent", "counterexample"], capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout


def test_output_is_deterministic(counter_file: str) -> None:
    args = ("centralizer", "--graph", counter_file, "--subset", "4")
    assert run(*args) == run(*args)
