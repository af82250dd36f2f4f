import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from polylab.cli import MATH_FAIL, OK, USAGE, main, run_command
from polylab.io import load_geometry, read_morphism
from polylab.morphisms import is_epimorphism

FIX = Path(__file__).parent / "fixtures"


def run(*argv):
    return run_command([str(a) for a in argv])


@pytest.mark.parametrize("args, points, lines", [
    (["ordinary-polygon", "--m", "5"], 5, 5),
    (["digon", "--r", "2", "--c", "3"], 2, 3),
    (["grid", "--r", "3", "--c", "3"], 9, 6),
    (["dual-grid", "--r", "3", "--c", "3"], 6, 9),
    (["projective-plane", "--q", "3"], 13, 13),
    (["q4", "--q", "2"], 15, 15),
    (["w", "--q", "2"], 15, 15),
    (["split-cayley", "--q", "2"], 63, 63),
    (["t2-conic", "--q", "2"], 15, 15),
    (["thin-hexagon", "--q", "2"], 21, 14),
    (["double-plane", "--q", "2"], 14, 21),
])
def test_construct(tmp_path, args, points, lines):
    out = tmp_path / "g.ig"
    code, text = run("construct", *args, "-o", out)
    assert code == OK, text
    G = load_geometry(out)
    assert (G.num_points, G.num_lines) == (points, lines)
    code, text = run("validate", out)
    assert code == OK and text.startswith("CHECK polygon PASS")


def test_construct_usage(tmp_path):
    assert run("construct", "grid", "--r", "3", "-o", tmp_path / "g.ig")[0] == USAGE
    assert run("construct", "nonsense", "-o", tmp_path / "g.ig")[0] == USAGE
    assert run("construct", "projective-plane", "--q", "6", "-o", tmp_path / "g.ig")[0] == USAGE


def test_validate_without_order(tmp_path):
    run("construct", "grid", "--r", "3", "--c", "4", "-o", tmp_path / "g.ig")
    code, text = run("validate", tmp_path / "g.ig")
    assert code == OK and "order=none" in text


def test_validate_failures(tmp_path):
    bad = tmp_path / "bad.ig"
    bad.write_text("ig 1\npoints 3\nlines 1\n0 1 2\n")
    code, text = run("validate", bad)
    assert code == MATH_FAIL and text.startswith("CHECK polygon FAIL")
    bad.write_text("ig 1\npoints 3\nlines 1\n0 1 7\n")
    code, text = run("validate", bad)
    assert code == USAGE and "line 4, column 5" in text
    assert run("validate", tmp_path / "missing.ig")[0] == USAGE


def test_usage_errors():
    assert run("bogus")[0] == USAGE
    assert run()[0] == USAGE
    assert run("--help")[0] == OK


def test_epi_search_and_classify(tmp_path):
    out = tmp_path / "epis"
    code, text = run("--jobs", "1", "epi", "search", FIX / "pg2.ig", FIX / "triangle.ig", "-o", out)
    assert code == OK and "count=126" in text
    files = sorted(out.glob("epi_*.igmap"))
    assert len(files) == 126
    phi = read_morphism(files[0].read_bytes(), base_dir=out)
    assert is_epimorphism(phi)
    code, text = run("epi", "classify", out / "source.ig", files[0])
    assert code == OK and text.startswith("CHECK classified PASS theorem=GT")


def test_epi_search_up_to_target(tmp_path):
    code, text = run("--jobs", "1", "epi", "search", FIX / "pg2.ig", FIX / "triangle.ig",
                     "--up-to-target-auto", "-o", tmp_path)
    assert code == OK and "count=21" in text


def test_epi_search_truncated(tmp_path):
    code, text = run("--jobs", "1", "epi", "search", FIX / "pg2.ig", FIX / "triangle.ig",
                     "--limit", "5", "-o", tmp_path)
    assert code == MATH_FAIL and "# report incomplete" in text
    assert len(list(tmp_path.glob("epi_*.igmap"))) == 5


def test_classify_digest_target(tmp_path):
    code, text = run("epi", "classify", FIX / "pg2.ig", FIX / "gt_pg2_digest.igmap")
    assert code == OK and "case=A base=0" in text
    code, text = run("epi", "classify", FIX / "pg2.ig", FIX / "gt_pg2.igmap")
    assert code == OK and "ab=" in text


def test_classify_not_epimorphism():
    code, text = run("epi", "classify", FIX / "q4_2.ig", FIX / "subfield_2_2.igmap")
    assert code == USAGE


def test_theorem_commands():
    code, text = run("--jobs", "1", "theorem", "gt", FIX / "pg2.ig")
    assert code == OK and "# summary: 2-class match" in text
    code, text = run("--jobs", "1", "theorem", "jatgq", FIX / "w2.ig")
    assert code == OK and "s'>1 searches empty" in text
    assert "CHECK empty-onto-grid(3,3) PASS" in text
    code, text = run("theorem", "gt", FIX / "grid33.ig")
    assert code == MATH_FAIL and "CHECK source FAIL" in text


def test_thin_theorem_command():
    code, text = run("--jobs", "1", "thin-theorem", "--m", "4", "--s", "2", "--sp", "1")
    assert code == OK and "count=72" in text
    assert run("thin-theorem", "--m", "5", "--s", "2", "--sp", "1")[0] == USAGE


def test_free_run(tmp_path):
    code, text = run("free", "run", FIX / "grid33.ig", "--stages", "30", "-o", tmp_path)
    assert code == OK and "CHECK girth PASS" in text
    assert len((tmp_path / "journal.txt").read_text().splitlines()) == 30
    assert run("free", "run", FIX / "pg2.ig", "--stages", "3", "-o", tmp_path)[0] == USAGE


def test_hyperplane_commands():
    code, text = run("hyperplane", "classify", FIX / "w2.ig", "--points", "0")
    assert code == MATH_FAIL and "NotHyperplane" in text
    code, text = run("hyperplane", "enum", FIX / "w2.ig")
    assert code == OK
    assert "CHECK kinds PASS A=6 B=15 C=10" in text
    hyper = [ln for ln in text.splitlines() if ln.startswith("HYPERPLANE")]
    assert len(hyper) == 31
    pts = hyper[0].split("points=")[1]
    code, text = run("hyperplane", "classify", FIX / "w2.ig", "--points", pts)
    assert code == OK and "CHECK hyperplane PASS" in text
    assert run("hyperplane", "classify", FIX / "w2.ig", "--points", "a,b")[0] == USAGE
    assert run("hyperplane", "classify", FIX / "w2.ig", "--points", "99")[0] == USAGE
    assert run("hyperplane", "enum", FIX / "pg2.ig")[0] == USAGE


def test_main_streams(capsys):
    assert main(["validate", str(FIX / "pg2.ig")]) == OK
    assert "PASS" in capsys.readouterr().out
    assert main(["validate", str(FIX / "nope.ig")]) == USAGE
    assert "error" in capsys.readouterr().err


@pytest.mark.skipif(shutil.which("polylab") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["polylab", "validate", str(FIX / "triangle.ig")], capture_output=True, text=True)
    assert res.returncode == 0 and "gonality=3" in res.stdout
