import json
import subprocess
import sys

import numpy as np
import pytest

from qjsd import io, states
from qjsd.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, st in {
        "bell": states.singlet(),
        "mixed": states.maximally_mixed(4),
        "p": states.diagonal_state([0.75, 0.25]),
        "q": states.diagonal_state([0.25, 0.75]),
        "up": states.pure_to_density([1, 0]),
        "down": states.make_pure([0, 1]),
        "qutrit": states.maximally_mixed(3),
    }.items():
        paths[name] = tmp_path / f"{name}.json"
        io.write_state(paths[name], st)
    return paths


def test_dist_examples(capsys, files):
    assert run(capsys, "dist", "qjsd", files["bell"], files["bell"])[1] == "0.000000000000\n"
    assert run(capsys, "dist", "relative-entropy", files["mixed"], files["bell"])[1] == "inf\n"
    assert run(capsys, "dist", "trace", files["p"], files["q"])[1] == "0.5\n"
    assert run(capsys, "dist", "qjsd", files["up"], files["down"])[1] == "1\n"
    code, out, _ = run(capsys, "dist", "wootters", files["up"], files["down"])
    assert code == 0 and float(out) == pytest.approx(np.pi / 2, abs=1e-11)


@pytest.mark.parametrize("measure", ["fidelity", "js-fidelity", "bures", "hellinger"])
def test_dist_other_measures(capsys, files, measure):
    code, out, _ = run(capsys, "dist", measure, files["p"], files["q"])
    assert code == 0 and float(out) >= 0


def test_dist_errors(capsys, files, tmp_path):
    code, _, err = run(capsys, "dist", "qjsd", files["p"], files["qutrit"])
    assert code == 3 and "dimension" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2, "matrix": [[[1.2, 0], [0, 0]], [[0, 0], [-0.2, 0]]]}))
    code, _, err = run(capsys, "dist", "qjsd", bad, files["p"])
    assert code == 2 and "NotPositive" in err
    code, _, err = run(capsys, "dist", "qjsd", tmp_path / "missing.json", files["p"])
    assert code == 4
    code, _, err = run(capsys, "dist", "wootters", files["p"], files["q"])
    assert code == 2
    assert run(capsys, "dist", "nosuch", files["p"], files["q"])[0] == 2


def test_werner_curve(capsys, tmp_path):
    out = tmp_path / "w.csv"
    assert run(capsys, "werner-curve", "--out", out)[0] == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# qjsd ")
    rows = [l.split(",") for l in lines if not l.startswith("#")]
    header, body = rows[0], rows[1:]
    assert header[:4] == ["F", "qjsd_spectral", "derived_closed_form", "printed_eq24_value"]
    assert len(body) == 101 and all(len(r) == len(header) for r in body)
    assert max(float(r[4]) for r in body) <= 1e-10
    row = {float(r[0]): r for r in body}
    assert float(row[0.25][1]) == pytest.approx(0.548795, abs=1e-6)
    assert float(row[0.25][3]) == pytest.approx(0.173795, abs=1e-6)
    assert float(row[1.0][1]) == 0 and float(row[1.0][3]) == 0
    assert run(capsys, "werner-curve", "--points", 1)[0] == 2


def test_werner_curve_io_failure(capsys, tmp_path):
    assert run(capsys, "werner-curve", "--out", tmp_path / "nodir" / "w.csv")[0] == 4


def test_entangle(capsys, files, tmp_path):
    code, out, _ = run(capsys, "entangle", files["mixed"], "--dims", 2, 2)
    assert code == 0
    fields = dict(line.split(": ") for line in out.splitlines())
    assert float(fields["value"]) <= 1e-3
    assert fields["ppt_verdict"] == "separable-compatible"

    traces = tmp_path / "t.csv"
    sigma = tmp_path / "s.json"
    args = ("entangle", files["bell"], "--dims", 2, 2, "--restarts", 2, "--max-iterations", 3000, "--seed", 4)
    code, out1, _ = run(capsys, *args, "--out", traces, "--dump-sigma", sigma)
    fields = dict(line.split(": ") for line in out1.splitlines())
    assert fields["ppt_verdict"] == "entangled"
    assert fields["ppt_min_eigenvalue"] == "-0.5"
    report1 = traces.read_text()
    assert "# seed: 4" in report1
    states_sigma = io.read_state(sigma)
    assert states_sigma.dim == 4
    _, out2, _ = run(capsys, *args, "--out", traces)
    assert out1 == out2 and traces.read_text() == report1

    assert run(capsys, "entangle", files["mixed"], "--dims", 2, 3)[0] == 3


def test_holevo(capsys, tmp_path, files):
    manifest = tmp_path / "ens.json"
    manifest.write_text(json.dumps({"states": [{"file": "up.json", "probability": 0.5},
                                               {"file": "down.json", "probability": 0.5}]}))
    code, out, _ = run(capsys, "holevo", manifest)
    assert code == 0 and out == "chi: 1\n"

    same = tmp_path / "same.json"
    same.write_text(json.dumps({"states": [{"file": "p.json", "probability": 0.4},
                                           {"file": "p.json", "probability": 0.6}]}))
    assert run(capsys, "holevo", same)[1] == "chi: 0.000000000000\n"

    rng = np.random.default_rng(3)
    ens_files = []
    for i in range(3):
        io.write_state(tmp_path / f"r{i}.json", states.random_density(3, rng))
        ens_files.append({"file": f"r{i}.json", "probability": 1 / 3})
    (tmp_path / "rand.json").write_text(json.dumps({"states": ens_files}))
    povm = tmp_path / "povm.json"
    assert run(capsys, "dump", "random-povm", 3, 4, "--out", povm)[0] == 0
    code, out, _ = run(capsys, "holevo", tmp_path / "rand.json", "--povm", povm)
    fields = dict(line.split(": ") for line in out.splitlines())
    assert code == 0 and float(fields["slack"]) >= -1e-9

    bad = tmp_path / "badens.json"
    bad.write_text(json.dumps({"states": [{"file": "up.json", "probability": 0.7},
                                          {"file": "down.json", "probability": 0.7}]}))
    assert run(capsys, "holevo", bad)[0] == 2


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "holevo", "--trials", 20, "--seed", 2)
    assert code == 0
    assert "# seed: 2" in out and "# result: pass" in out
    code2, out2, _ = run(capsys, "verify", "holevo", "--trials", 20, "--seed", 2)
    assert out == out2
    assert run(capsys, "verify", "qjsd", "--trials", 0)[0] == 2
    assert run(capsys, "verify", "bogus")[0] == 2
    code, out, _ = run(capsys, "verify", "classical", "--trials", 5, "--tol", "classical.kl-bound=-1e6")
    assert code == 1 and "failed: classical.kl-bound first failing seed 0" in out
    assert run(capsys, "verify", "classical", "--tol", "junk")[0] == 2


def test_neighbor_scan(capsys, tmp_path, files):
    code, out, _ = run(capsys, "neighbor-scan", "--random", 3, "--eps", 1e-2, 1e-3)
    assert code == 0
    rows = [l.split(",") for l in out.splitlines() if not l.startswith("#")]
    assert rows[0] == ["eps", "qjsd", "bures_sq", "ratio", "predicted_limit"]
    r2, r3 = float(rows[1][3]), float(rows[2][3])
    lim = float(rows[1][4])
    assert abs(r3 - lim) < abs(r2 - lim)
    assert run(capsys, "neighbor-scan", "--random", 3, "--eps", 0)[0] == 2
    assert run(capsys, "neighbor-scan", "--random", 3, "--eps", 0.5)[0] == 2
    assert run(capsys, "neighbor-scan", files["mixed"])[0] == 0
    assert run(capsys, "neighbor-scan")[0] == 2


@pytest.mark.parametrize("kind,params", [
    ("bell", ["phi+"]), ("werner", [0.3]), ("maximally-mixed", [3]), ("diag", [0.2, 0.8]),
    ("random-density", [4]), ("random-pure", [3]), ("random-separable", [2, 3]),
])
def test_dump_round_trip(capsys, tmp_path, kind, params):
    path = tmp_path / "s.json"
    assert run(capsys, "dump", kind, *params, "--seed", 9, "--out", path)[0] == 0
    first = path.read_text()
    st = io.read_state(path)
    again = tmp_path / "again.json"
    io.write_state(again, st)
    m1 = io.parse_state(json.loads(first))
    m2 = io.read_state(again)
    a = getattr(m1, "matrix", getattr(m1, "amplitudes", None))
    b = getattr(m2, "matrix", getattr(m2, "amplitudes", None))
    assert np.max(np.abs(a - b)) <= 1e-15


def test_dump_errors(capsys):
    assert run(capsys, "dump", "bell", "xx")[0] == 2
    assert run(capsys, "dump", "diag", 0.5, 0.6)[0] == 2
    assert run(capsys, "dump", "random-density")[0] == 2


def test_console_script_and_module():
    res = subprocess.run([sys.executable, "-m", "qjsd", "dump", "bell", "psi-"], capture_output=True, text=True)
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["dim"] == 4
    res = subprocess.run(["qjsd", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "0.1.0" in res.stdout


def test_verify_qjsd_500_seed_7(capsys):
    code, out, _ = run(capsys, "verify", "qjsd", "--trials", 500, "--seed", 7)
    assert code == 0, out
    assert "# result: pass" in out


def test_verify_all_small_deterministic(capsys):
    a = run(capsys, "verify", "all", "--trials", 10, "--seed", 1)
    b = run(capsys, "verify", "all", "--trials", 10, "--seed", 1)
    assert a == b and a[0] == 0
