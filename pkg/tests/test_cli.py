import io

import pytest

from grasspack import gpack
from grasspack.cli import equivalent_angle_deg, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line and " " not in line)


def test_optimize_then_verify(tmp_path):
    f = tmp_path / "o.gpack"
    code, out, _ = call("optimize", "--m", "4", "--n", "2", "--N", "4", "--starts", "2", "--seed", "3", "--out", str(f))
    assert code == 0
    fields = dict(tok.split("=") for tok in out.split())
    assert set(fields) == {"min_d2", "angle_deg", "converged"}
    code, out, _ = call("verify", str(f))
    assert code == 0
    assert kv(out)["min_d2"] == fields["min_d2"]
    assert kv(out)["valid"] == "true"


def test_optimize_deterministic(tmp_path):
    a, b = tmp_path / "a.gpack", tmp_path / "b.gpack"
    for f in (a, b):
        call("optimize", "--m", "3", "--n", "1", "--N", "5", "--starts", "2", "--seed", "7", "--out", str(f))
    assert a.read_bytes() == b.read_bytes()


def test_optimize_to_stdout():
    code, out, _ = call("optimize", "--m", "3", "--n", "1", "--N", "3", "--starts", "1")
    assert code == 0 and out.startswith("gpack 1\n")


def test_clifford_then_certify(tmp_path):
    f = tmp_path / "c.gpack"
    code, out, _ = call("clifford", "--i", "2", "--k", "1", "--out", str(f))
    assert code == 0 and kv(out)["N"] == "18"
    assert "exact" in f.read_text().splitlines()[2]
    code, out, _ = call("certify", str(f), "--tol", "1e-9")
    assert code == 0 and kv(out)["attained"] == "orthoplex"


def test_bound():
    code, out, _ = call("bound", "--m", "8", "--n", "4", "--N", "70")
    d = kv(out)
    assert code == 0 and d["governing"] == "orthoplex" and d["orthoplex_bound"] == "2"


def test_verify_corrupted(tmp_path):
    f = tmp_path / "bad.gpack"
    f.write_text("gpack 1\nm 3 n 1 N 2 metric chordal\n1 0 0\n0.5 1 0\n")
    code, out, _ = call("verify", str(f))
    assert code == 1 and kv(out)["valid"] == "false"


def test_verify_malformed(tmp_path):
    f = tmp_path / "bad.gpack"
    f.write_text("not a gpack\n")
    assert call("verify", str(f))[0] == 1


def test_verify_histogram(tmp_path):
    f, h = tmp_path / "c.gpack", tmp_path / "h.tsv"
    call("clifford", "--i", "2", "--k", "1", "--out", str(f))
    assert call("verify", str(f), "--hist", str(h))[0] == 0
    rows = [r.split("\t") for r in h.read_text().splitlines()]
    assert len(rows) == 50 and sum(int(r[1]) for r in rows) == 18 * 17 // 2
    code, out, _ = call("verify", str(f), "--hist")
    assert len([ln for ln in out.splitlines() if "\t" in ln]) == 50


def test_binocular_round_trip(tmp_path):
    f, p, g = tmp_path / "c.gpack", tmp_path / "p.txt", tmp_path / "g.gpack"
    call("clifford", "--i", "2", "--k", "1", "--out", str(f))
    assert call("binocular", "to-pairs", str(f), "--out", str(p))[0] == 0
    assert len(p.read_text().splitlines()) == 18
    assert call("binocular", "to-planes", str(p), "--out", str(g))[0] == 0
    code, out, _ = call("verify", str(g))
    assert float(kv(out)["min_d2"]) == pytest.approx(1.0, abs=1e-12)


def test_binocular_wrong_shape(tmp_path):
    f = tmp_path / "l.gpack"
    call("clifford", "--i", "2", "--k", "0", "--out", str(f))
    assert call("binocular", "to-pairs", str(f))[0] == 1


def test_embed(tmp_path):
    f = tmp_path / "c.gpack"
    call("clifford", "--i", "2", "--k", "1", "--out", str(f))
    code, out, _ = call("embed", str(f))
    d = kv(out)
    assert code == 0 and d["embedding_dimension"] == "9" and float(d["sphere_residual"]) < 1e-12


def test_catalog():
    code, out, _ = call("catalog", "lookup", "--m", "4", "--n", "2", "--N", "19")
    assert code == 0 and kv(out)["value"] == "0.90910000000000002"
    assert call("catalog", "lookup", "--m", "9", "--n", "2", "--N", "3")[0] == 1
    code, out, _ = call("catalog", "dump")
    assert code == 0 and len(out.splitlines()) > 70


@pytest.mark.parametrize(
    "argv",
    [(), ("bogus",), ("bound", "--m", "4"), ("verify", "/nonexistent.gpack"), ("catalog", "lookup")],
)
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == 2 and "usage" in err


def test_bad_dimensions_exit_1():
    assert call("bound", "--m", "3", "--n", "3", "--N", "2")[0] == 1


def test_equivalent_angle():
    assert equivalent_angle_deg(1.0, 1, "chordal") == pytest.approx(90.0)
    assert equivalent_angle_deg(1.0, 2, "chordal") == pytest.approx(45.0)
    assert equivalent_angle_deg(0.5, 1, "maxangle") == pytest.approx(28.64788975654116)
