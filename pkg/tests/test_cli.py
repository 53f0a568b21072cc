import json

import pytest

from degpv.cli import load_config, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_default(capsys):
    code, out, _ = run(capsys, "verify")
    report = json.loads(out)
    assert code == 0
    assert {r["suite"] for r in report} >= {"zero_curvature", "constraint_drift", "swap_jet"}
    assert all(r["pass"] and r["max_residual"] < 1e-10 for r in report)


def test_verify_loose_tol_still_passes(capsys):
    assert run(capsys, "verify", "--tol", "1e-3")[0] == 0


def test_malformed_config(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("theta0 = [1, 0\ntol = 1e-9\n")
    code, _, err = run(capsys, "verify", "--config", str(bad))
    assert code == 2 and "line" in err and "column" in err


@pytest.mark.parametrize("text", ["tol = 0.5\n", "theta0 = 'x'\n", "nonsense = 1\n",
                                  "t_start = -1.0\nt_end = 1.0\nvia = []\n"])
def test_invalid_config_values(tmp_path, capsys, text):
    cfg = tmp_path / "c.toml"
    cfg.write_text(text)
    assert run(capsys, "integrate", "--config", str(cfg))[0] == 2


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text("theta0 = [0.25, 0.5]\ntol = 1e-8\n[contour]\nradius = 0.2\n")
    c = load_config(str(cfg), {"tol": 1e-9})
    assert c.theta0 == 0.25 + 0.5j and c.tol == 1e-9 and c.radius == 0.2


def test_integrate_default(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code, _, err = run(capsys, "integrate", "-o", str(out))
    assert code == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "t_re,t_im,q_re,q_im,p_re,p_im,H_re,H_im,residual"
    assert max(float(r.split(",")[-1]) for r in rows[1:]) < 1e-8
    summary = json.loads(err)
    assert summary["constraint_drift"] < 1e-8
    assert summary["final"]["t"] == [2.0, 0.0]


def test_integrate_straight_path_hits_pole(capsys):
    code, _, err = run(capsys, "integrate", "--no-via")
    assert code == 1 and "last good t" in err


def test_integrate_through_zero_rejected(capsys):
    assert run(capsys, "integrate", "--t-start=-1", "--t-end", "1", "--no-via")[0] == 2


def test_integrate_zero_length(capsys):
    code, out, _ = run(capsys, "integrate", "--t-end", "1")
    assert code == 0 and len(out.splitlines()) == 2


def test_monodromy_default(capsys):
    code, out, _ = run(capsys, "monodromy", "--t-end", "1")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"theta", "t", "invariants", "expected", "drift"}
    tr = complex(*doc["invariants"]["tr_m0"])
    assert abs(tr - complex(*doc["expected"]["s0"])) < 1e-6


def test_surface(capsys):
    code, out, _ = run(capsys, "surface", "--s0", "3", "--s1", "2")
    doc = json.loads(out)
    assert code == 0
    assert [p["x"] for p in doc["singular_points"]] == [[[0, 0], [-1, 0], [3, 0]]]
    assert len(doc["fiber"]) == 5


def test_backlund_round_trip(tmp_path, capsys):
    src = tmp_path / "t.csv"
    args = ["--q0", "0.5,0.1", "--p0", "0.1", "--t-end", "1.5", "--no-via"]
    assert run(capsys, "integrate", *args, "-o", str(src))[0] == 0
    for kind in ("negate-t", "flip0", "flip1", "swap", "shift"):
        dst = tmp_path / f"{kind}.csv"
        code, _, err = run(capsys, "backlund", "--kind", kind, "--input", str(src), "-o", str(dst))
        assert code == 0
        assert json.loads(err)["verify_residual"] < 1e-6
        assert len(dst.read_text().splitlines()) == len(src.read_text().splitlines())


def test_backlund_missing_input(capsys):
    assert run(capsys, "backlund", "--kind", "swap", "--input", "/nonexistent.csv")[0] == 2


def test_sweep_deterministic(tmp_path, capsys):
    args = ["--q0", "0.5,0.1", "--p0", "0.1", "--t-end", "1.3", "--no-via", "--segments", "3"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "sweep", *args, "--workers", "2", "-o", str(a))[0] == 0
    assert run(capsys, "sweep", *args, "--workers", "1", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rows = a.read_text().splitlines()
    assert len(rows) == 10 and [r.split(",")[0] for r in rows[1:]] == [str(k) for k in range(9)]
