import json
import os
import subprocess
import sys

import pytest

from lobell.cli import main

DATA = os.path.join(os.path.dirname(__file__), "data")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_file(capsys):
    code, out, err = run(capsys, "classify", os.path.join(DATA, "slice_t12.diagram"))
    assert code == 0 and not err
    assert out.startswith("verdict: properly-quasi-arithmetic")


def test_classify_json_is_stable(capsys):
    _, a, _ = run(capsys, "classify", "--n", "8", "--json")
    _, b, _ = run(capsys, "classify", "--n", "8", "--json")
    assert a == b
    doc = json.loads(a)
    assert doc["verdict"] == "arithmetic"
    assert doc["schemaVersion"] == "1"
    assert list(doc) == sorted(doc)


def test_classify_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(open(os.path.join(DATA, "slice_t5.diagram")).read()))
    code, out, _ = run(capsys, "classify", "-", "--dim", "3")
    assert code == 0 and "verdict: arithmetic" in out


def test_table(capsys):
    code, out, _ = run(capsys, "table", "5..8")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 5
    assert "l=2:(3,1,2)" in lines[3] and "not-quasi-arithmetic" in lines[3]
    code, out, _ = run(capsys, "table", "12", "--json")
    assert json.loads(out)["rows"][0]["verdict"] == "properly-quasi-arithmetic"


def test_gram_and_diagram(capsys):
    _, out, _ = run(capsys, "gram", "--n", "12")
    assert "g 1 2 = -cos(pi*1/12)" in out
    _, out, _ = run(capsys, "diagram", "--n", "6", "--k", "3")
    assert "angle 1 6 6" in out


def test_numbers(capsys):
    _, out, _ = run(capsys, "systole", "--n", "6", "--digits", "20")
    assert "delta_6 = 1.14621583478058884390" in out
    assert "= 2.29243166956117768780" in out
    _, out, _ = run(capsys, "ratio", "--n", "5", "--digits", "7")
    assert out.strip().endswith("= 1.9626105")


def test_faces_and_trace(capsys):
    _, out, _ = run(capsys, "faces", "--n", "5")
    assert out.splitlines()[0] == "L_5: F=12 E=30 V=20 Euler characteristic 2"
    _, out, _ = run(capsys, "trace", "--n", "7", "--other", "9")
    assert "degree of Q(cos 2pi/7): 3" in out


def test_cover_search_and_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "cover", "search", "--n", "9", "--top-eq-bottom")
    assert code == 0
    f = tmp_path / "c9.txt"
    f.write_text(out)
    code, out, _ = run(capsys, "cover", "verify", "--n", "9", str(f))
    assert code == 0
    assert "valid: yes" in out and "orientable: yes" in out and "top equals bottom: yes" in out
    assert "closed geodesic candidate length" in out
    _, out, _ = run(capsys, "cover", "search", "--n", "7", "--top-eq-bottom")
    assert out.startswith("none found")


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["classify"], "either a diagram file or --n"),
        (["classify", "/no/such/file"], "cannot read"),
        (["table", "9..x"], "bad range"),
        (["table", "3..6"], "n must be"),
        (["systole", "--n", "4"], "n must be"),
        (["faces", "--n", "2"], "n must be"),
        (["diagram", "--n", "6", "--k", "1"], "k must be"),
        (["classify", "--n", "5", "--dim", "4"], "signature"),
    ],
)
def test_errors_go_to_stderr(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.startswith("lobell: error:") and needle in err


def test_parse_error_location(capsys, tmp_path):
    f = tmp_path / "bad.diagram"
    f.write_text("nodes 3\ndashed 1 2 1/2\n")
    code, out, err = run(capsys, "classify", str(f))
    assert code == 2 and out == ""
    assert "line 2, column 12" in err


def test_bad_coloring_file(capsys, tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("face 0 100\n")
    code, out, err = run(capsys, "cover", "verify", "--n", "5", str(f))
    assert code == 2 and out == "" and "faces without a color" in err


def test_usage_errors_exit_nonzero():
    # argparse usage errors come from the real entry point
    p = subprocess.run([sys.executable, "-m", "lobell.cli", "table"], capture_output=True, text=True)
    assert p.returncode != 0 and p.stdout == "" and p.stderr


def test_precision_env_is_honoured():
    env = dict(os.environ, LOBELL_PRECISION_BITS="256")
    p = subprocess.run([sys.executable, "-m", "lobell.cli", "classify", "--n", "7"], capture_output=True, text=True, env=env)
    assert p.returncode == 0 and "not-quasi-arithmetic" in p.stdout
