import json
from pathlib import Path

import pytest

from bezknot.cli import EXIT_INPUT, EXIT_OK, EXIT_UNCERTIFIED, main
from bezknot.io import parse_forest
from conftest import FIXTURES

DATA = Path(__file__).parent.parent / "data"
K0_FILE, K1_FILE = str(DATA / "K0.txt"), str(DATA / "K1.txt")


def test_classify(capsys):
    assert main(["classify", K1_FILE, "--max-level", "4"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "Trefoil"
    assert "TrefoilRight" in out[1]
    assert main(["classify", K0_FILE, "--max-level", "3"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "Unknot"


def test_subdivide_reproduces_table(tmp_path):
    out = tmp_path / "l3.txt"
    assert main(["subdivide", K1_FILE, "--levels", "3", "--scale", "2^29", "-o", str(out)]) == EXIT_OK
    assert parse_forest(out.read_text()) == parse_forest((FIXTURES / "table3_K1_level3.txt").read_text())


def test_subdivide_all_levels(tmp_path):
    out = tmp_path / "all.txt"
    assert main(["subdivide", K1_FILE, "--levels", "2", "--scale", "2^29", "--all-levels", "-o", str(out)]) == 0
    text = out.read_text()
    assert "(*Subdivision 1 *)" in text and "(*Subdivision 2 *)" in text
    assert len(parse_forest(text)) == 6


def test_certify_and_validate(tmp_path):
    report = tmp_path / "cert.json"
    assert main(["certify", K1_FILE, "--max-level", "3", "-o", str(report)]) == EXIT_OK
    assert json.loads(report.read_text())["enclosures"]
    assert main(["validate", str(report)]) == EXIT_OK
    data = json.loads(report.read_text())
    data["knot_class"] = "Unknot"
    report.write_text(json.dumps(data))
    assert main(["validate", str(report)]) == EXIT_UNCERTIFIED


def test_certify_failure_exit_code(capsys):
    assert main(["certify", K1_FILE, "--max-level", "3", "--no-repair"]) == EXIT_UNCERTIFIED
    assert "hulls overlap" in capsys.readouterr().err


def test_push(tmp_path, capsys):
    report = tmp_path / "push.json"
    assert main(["push", K0_FILE, "--vertex", "3", "--to", "10,-60,58", "-o", str(report)]) == EXIT_OK
    assert main(["validate", str(report)]) == EXIT_OK
    assert main(["push", K0_FILE, "--vertex", "3", "--to", "10,-60"]) == EXIT_INPUT


def test_diagram_with_svg(tmp_path):
    svg = tmp_path / "k0.svg"
    out = tmp_path / "k0.json"
    assert main(["diagram", K0_FILE, "--level", "4", "--axis", "xy", "--svg", str(svg), "-o", str(out)]) == 0
    assert json.loads(out.read_text())["knot_class"] == "Unknot"
    assert svg.read_text().startswith("<?xml")


def test_enclosure_command(tmp_path):
    out = tmp_path / "e.json"
    args = ["enclosure", K1_FILE, "--piece", "7", "--level", "3", "--scale", "2^29",
            "--normal-l", "10,-57032750/60642987,0", "--normal-r", "1,68748075/151430805,0", "-o", str(out)]
    assert main(args) == EXIT_OK
    report = json.loads(out.read_text())
    assert report["evidence"]["left_count"] == report["evidence"]["right_count"] == 2
    assert report["mid"] == ["4399876800", "-4859733312", "-849023360"]
    swapped = args[:8] + ["--normal-l", args[11], "--normal-r", args[9]]
    assert main(swapped) == EXIT_INPUT


def test_bisect(tmp_path):
    out = tmp_path / "t.json"
    assert main(["bisect", K0_FILE, K1_FILE, "--tol", "1/8", "--max-level", "5", "-o", str(out)]) == EXIT_OK
    report = json.loads(out.read_text())
    assert (report["lo"], report["hi"]) == ("3/8", "1/2")
    assert main(["validate", str(out)]) == EXIT_OK


@pytest.mark.parametrize("text", ["0 0 0\n1 0 0\n0 1 0\n", "0 0\n", "not a polygon\n"])
def test_bad_input_files(tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    assert main(["classify", str(path)]) == EXIT_INPUT


def test_missing_file():
    assert main(["certify", "/nonexistent/k.txt"]) == EXIT_INPUT


def test_bad_scale():
    assert main(["subdivide", K1_FILE, "--levels", "1", "--scale", "3^2"]) == EXIT_INPUT
