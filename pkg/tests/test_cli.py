import json
import math
import subprocess
import sys

import numpy as np
import pytest

from xygates import schedule_file
from xygates.cli import main, parse_complex, parse_matrix
from xygates.pulse import Schedule, p3


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def empty(tmp_path):
    path = tmp_path / "empty.json"
    schedule_file.write(Schedule(3), path)
    return path


def compiled(capsys, tmp_path, *target):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "compile", "-o", path, *target)
    assert code == 0, out
    return path, out


def test_parse_complex():
    assert parse_complex("0.6") == 0.6
    assert parse_complex("0.8i") == 0.8j
    assert parse_complex("-i") == -1j
    assert parse_complex("1-2i") == 1 - 2j
    assert parse_complex("0.5+0.5I") == 0.5 + 0.5j
    assert parse_matrix("1,0\n0,-1").tolist() == [[1, 0], [0, -1]]
    with pytest.raises(ValueError):
        parse_matrix("1,0,0")
    with pytest.raises(ValueError):
        parse_complex("1+zi")


TARGETS = [
    ("su2", "--euler", "0.3", "1.1", "-0.4"),
    ("su2", "--identity"),
    ("su2", "--matrix", "0.6,0.8i,0.8i,0.6"),
    ("encoded-x", "--phi", "0.7"),
    ("encoded-z", "--phi", "90", "--degrees"),
    ("p3", "--phi", "1.0"),
    ("p3", "--phi", "1.0", "--qubits", "2,0,3", "--num-qubits", "5"),
    ("sqrt-zz",),
    ("sqrt-zz", "--variant", "124"),
    ("sqrt-zz", "--no-ancilla"),
    ("cz",),
    ("cnot",),
    ("qutrit-z", "--phi", "-0.9"),
    ("qutrit-su2", "--pair", "0,2", "--matrix", "0,1,1,0"),
    ("qutrit-su3", "--matrix", "0,1,0,0,0,1,1,0,0"),
    ("qutrit-entangler", "--variant", "serial"),
    ("qutrit-entangler", "--variant", "swap"),
    ("shift", "--from", "0", "--to", "2"),
]


@pytest.mark.parametrize("target", TARGETS, ids=lambda t: " ".join(t))
def test_compiled_output_verifies_against_own_target(target, capsys, tmp_path):
    path, out = compiled(capsys, tmp_path, *target)
    assert "pulses" in out and "fidelity" in out
    code, out, _ = run(capsys, "verify", path, *target)
    assert code == 0, out
    assert json.loads(out)["pass"] is True


@pytest.mark.parametrize(
    "target,count",
    [(("sqrt-zz",), 5), (("su2", "--identity"), 0), (("qutrit-entangler", "--variant", "serial"), 8),
     (("qutrit-entangler", "--variant", "swap"), 10), (("cz",), 13), (("cnot",), 20)],
)
def test_compile_pulse_counts(target, count, capsys, tmp_path):
    path, out = compiled(capsys, tmp_path, *target)
    assert len(schedule_file.read(path)) == count
    assert f": {count} pulses" in out


def test_compile_rejects_non_unitary(capsys, tmp_path):
    code, _, err = run(capsys, "compile", "-o", tmp_path / "x.json", "su2", "--matrix", "1,1,0,1")
    assert code == 2 and "not unitary" in err
    assert not (tmp_path / "x.json").exists()


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compile", "-o", "x", "toffoli"])
    assert exc.value.code == 2


def test_simulate_p3(capsys, tmp_path):
    phi = 1.0
    path = tmp_path / "p3.json"
    schedule_file.write(p3(0, 1, 2, phi), path)
    code, out, _ = run(capsys, "simulate", path, "--state", "010")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 1
    assert lines[0].startswith("|010>")
    assert float(lines[0].split()[-1]) == pytest.approx(phi / 2, abs=1e-12)
    assert float(lines[0].split()[2]) == pytest.approx(1, abs=1e-12)


def test_simulate_empty_echoes(capsys, empty, tmp_path):
    code, out, _ = run(capsys, "simulate", empty, "--state", "101")
    assert code == 0 and out.split()[0] == "|101>"
    amps = tmp_path / "amps.txt"
    amps.write_text("0.6, 0, 0, 0, 0.8i, 0, 0, 0")
    code, out, _ = run(capsys, "simulate", empty, "--amplitudes", amps)
    lines = out.strip().splitlines()
    assert [l.split()[0] for l in lines] == ["|000>", "|100>"]
    assert float(lines[1].split()[-1]) == pytest.approx(math.pi / 2)


def test_simulate_sqrt_zz_phase(capsys, tmp_path):
    path, _ = compiled(capsys, tmp_path, "sqrt-zz", "--no-ancilla")
    code, out, _ = run(capsys, "simulate", path, "--state", "1001")
    assert code == 0
    assert float(out.split()[-1]) == pytest.approx(math.pi / 4, abs=1e-12)


def test_simulate_bad_state(capsys, empty, tmp_path):
    assert run(capsys, "simulate", empty, "--state", "01")[0] == 2
    assert run(capsys, "simulate", empty, "--state", "0a1")[0] == 2
    amps = tmp_path / "amps.txt"
    amps.write_text("1, 0")
    assert run(capsys, "simulate", empty, "--amplitudes", amps)[0] == 2
    amps.write_text("1, 1, 0, 0, 0, 0, 0, 0")
    assert run(capsys, "simulate", empty, "--amplitudes", amps)[0] == 2


def test_simulate_unparseable_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "simulate", bad, "--state", "0")
    assert code == 2 and "not valid JSON" in err


def test_verify_cz_against_matrices(capsys, tmp_path):
    path, _ = compiled(capsys, tmp_path, "cz")
    code, out, _ = run(capsys, "verify", path, "matrix", "--matrix", "1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,-1")
    report = json.loads(out)
    assert code == 0 and report["fidelity"] >= 1 - 1e-9
    code, out, _ = run(capsys, "verify", path, "cnot")
    assert code == 1
    assert json.loads(out)["fidelity"] == pytest.approx(0.5, abs=1e-9)


def test_verify_empty_against_identity(capsys, empty):
    code, out, _ = run(capsys, "verify", empty, "identity")
    report = json.loads(out)
    assert code == 0 and report["fidelity"] == pytest.approx(1, abs=1e-15)
    code, out, _ = run(capsys, "verify", empty, "identity", "--encoding", "qutrit", "--blocks", "2")
    assert code == 0


def test_verify_reports_leakage(capsys, tmp_path):
    path = tmp_path / "leak.json"
    schedule_file.write(Schedule(3, ((1, 2, 0.8),)), path)
    code, out, _ = run(capsys, "verify", path, "su2", "--identity")
    report = json.loads(out)
    assert code == 1 and report["pass"] is False
    assert report["leakage"] > 0.1


def test_verify_tolerance_flag(capsys, tmp_path):
    path = tmp_path / "near.json"
    schedule_file.write(Schedule(3, ((0, 1, 1e-4),)), path)
    assert run(capsys, "verify", path, "su2", "--identity")[0] == 1
    assert run(capsys, "verify", path, "--tol", "1e-6", "su2", "--identity")[0] == 0


def test_layout_check(capsys, tmp_path, empty):
    path, _ = compiled(capsys, tmp_path, "qutrit-entangler", "--variant", "swap")
    code, out, _ = run(capsys, "layout-check", path, "--layout", "triangular")
    assert code == 0 and out.startswith("ok")
    line = tmp_path / "p3.json"
    schedule_file.write(p3(0, 1, 2, 0.5), line)
    code, out, _ = run(capsys, "layout-check", line, "--layout", "linear")
    assert code == 1 and out.strip().splitlines() == ["gate 2: no coupling between sites 0 and 2"]
    assert run(capsys, "layout-check", line, "--layout", "linear-nnn")[0] == 0
    assert run(capsys, "layout-check", empty, "--layout", "linear")[0] == 0


def test_layout_check_mobile(capsys, tmp_path):
    from xygates import compiler

    path = tmp_path / "zz.json"
    sched = compiler.encoded_z(0.3, (0, 1, 4), 5) + compiler.encoded_z(0.3, (2, 3, 4), 5)
    schedule_file.write(sched, path)
    code, out, _ = run(capsys, "layout-check", path, "--layout", "two-plane", "--blocks", "2", "--ancilla-mode", "mobile")
    assert code == 0 and "ancilla relocations: 1" in out


def test_module_entry_point(tmp_path):
    path = tmp_path / "cz.json"
    proc = subprocess.run([sys.executable, "-m", "xygates", "compile", "-o", str(path), "cz"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert path.exists()
