import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from matrix_model_vqe.cli import main, parse_real
from matrix_model_vqe.pauli import PauliSum
from matrix_model_vqe.potentials import ModelSpec, su2_density, su2_vacuum, su3_vacuum
from matrix_model_vqe.vqe import read_trace_csv


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def parse_kv(text):
    return dict(line.split(": ", 1) for line in text.strip().splitlines())


def read_csv(text):
    return list(csv.reader(io.StringIO(text)))


def test_parse_real():
    assert parse_real("pi/100") == math.pi / 100
    assert parse_real("4pi") == 4 * math.pi
    assert parse_real("-0.5") == -0.5
    with pytest.raises(Exception):
        parse_real("banana")


def test_potential_su2_vacuum_grid():
    code, out, _ = run("potential", "--start", "0", "--stop", "4pi", "--step", "pi/100")
    assert code == 0
    rows = read_csv(out)
    assert rows[0] == ["phi", "V"]
    assert len(rows) == 1 + 401
    assert float(rows[1][1]) == pytest.approx(0.2193245, abs=1e-7)
    phis = np.array([float(r[0]) for r in rows[1:]])
    values = np.array([float(r[1]) for r in rows[1:]])
    np.testing.assert_array_equal(values, su2_vacuum(phis, ModelSpec()))
    assert "\r" not in out


def test_potential_su3_grid():
    code, out, _ = run("potential", "--group", "su3", "--start", "0", "--stop", "2pi", "--step", "pi/50")
    assert code == 0
    rows = read_csv(out)
    assert rows[0] == ["phi1", "phi2", "V"]
    assert len(rows) == 1 + 101 * 101
    a, b, v = (np.array([float(r[i]) for r in rows[1:]]) for i in range(3))
    np.testing.assert_array_equal(v, su3_vacuum(a, b, ModelSpec(group="su3")))


def test_potential_density_seams():
    code, out, _ = run("potential", "--scenario", "density", "--mu", "pi/2",
                       "--start", "0", "--stop", "2pi", "--step", "pi/1000")
    assert code == 0
    spec = ModelSpec(scenario="density", mu=math.pi / 2)
    for seam in (math.pi / 2, 3 * math.pi / 2):
        assert su2_density(seam - 1e-11, spec) == pytest.approx(su2_density(seam + 1e-11, spec), abs=1e-9)


def test_potential_csv_round_trip(tmp_path):
    path = tmp_path / "v.csv"
    assert run("potential", "--step", "0.1", "--out", str(path))[0] == 0
    rows = read_csv(path.read_text())[1:]
    phis = np.array([float(r[0]) for r in rows])
    assert [repr(float(x)) for x in su2_vacuum(phis, ModelSpec())] == [r[1] for r in rows]


def test_potential_bad_range():
    code, _, err = run("potential", "--start", "1", "--stop", "0")
    assert code == 2 and "error" in err


def test_exact_default(tmp_path):
    path = tmp_path / "exact.json"
    code, out, _ = run("exact", "--out", str(path))
    assert code == 0
    kv = parse_kv(out)
    assert kv["n_qubits"] == "4"
    record = json.loads(path.read_text())
    assert record["exact_energy"] == float(kv["exact_energy"])
    assert record["spec"]["group"] == "su2" and record["n_qubits"] == 4


def test_exact_invalid_configuration():
    assert run("exact", "--scenario", "density", "--mu", "4")[0] == 2
    assert run("exact", "--levels", "12")[0] == 2
    assert run("exact", "--scenario", "thermal", "--beta", "0")[0] == 2


def test_paulis_output(tmp_path):
    code, out, _ = run("paulis")
    assert code == 0
    assert out.splitlines()[0].startswith("# n_qubits=4 n_terms=71")
    paulis = PauliSum.from_text(out)
    assert len(paulis) == 71
    path = tmp_path / "p.txt"
    code, out, _ = run("paulis", "--group", "su3", "--out", str(path))
    assert parse_kv(out)["pauli_term_count"] == "9137"
    assert len(PauliSum.from_text(path.read_text())) == 9137


def test_vqe_command(tmp_path):
    record_path, trace_path = tmp_path / "run.json", tmp_path / "trace.csv"
    code, out, _ = run("vqe", "--restarts", "3", "--seed", "4",
                       "--out", str(record_path), "--trace", str(trace_path))
    assert code == 0
    record = json.loads(record_path.read_text())
    assert record["vqe_gap"] >= -1e-9
    assert record["vqe_gap"] < 1e-3
    assert record["pauli_term_count"] == 71
    assert record["restarts"] == 3 and record["seed"] == 4
    trace = read_trace_csv(trace_path)
    assert min(e for _, e in trace) == record["vqe_energy"]
    assert all(e >= record["exact_energy"] - 1e-9 for _, e in trace)


def test_vqe_reproducible(tmp_path):
    outputs = []
    for k in range(2):
        rec, tr = tmp_path / f"r{k}.json", tmp_path / f"t{k}.csv"
        run("vqe", "--restarts", "2", "--seed", "9", "--max-iterations", "20",
            "--out", str(rec), "--trace", str(tr))
        record = json.loads(rec.read_text())
        record.pop("wall_time_seconds")
        outputs.append((record, tr.read_bytes()))
    assert outputs[0] == outputs[1]


def test_calibrate_command(tmp_path):
    path = tmp_path / "cal.md"
    code, _, _ = run("calibrate", "--reference", "su2_vacuum", "--out", str(path))
    assert code == 0
    assert "su2_vacuum" in path.read_text()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "matrix_model_vqe", "exact"],
                          capture_output=True, text=True, check=True)
    assert "exact_energy" in proc.stdout
    bad = subprocess.run([sys.executable, "-m", "matrix_model_vqe", "exact", "--group", "su4"],
                         capture_output=True, text=True)
    assert bad.returncode == 2
