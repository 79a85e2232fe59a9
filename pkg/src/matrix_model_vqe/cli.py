"""Command-line interface.

    matrix-model-vqe exact --scenario thermal --beta 1
    matrix-model-vqe paulis --group su3 --out su3.paulis
    matrix-model-vqe vqe --restarts 10 --seed 7 --out run.json --trace trace.csv
    matrix-model-vqe potential --start 0 --stop 4pi --step pi/100 --out fig1.csv

Exit codes: 0 success, 2 invalid configuration, 3 numerical contract violation.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import re
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import calibration
from .exceptions import ConfigurationError, NumericalContractError
from .hamiltonian import build_hamiltonian, ground_energy
from .oscillator import DEFAULT_LEVELS
from .pauli import DEFAULT_THRESHOLD, decompose
from .potentials import Group, ModelSpec, potential
from .vqe import AnsatzSpec, run_vqe, write_trace_csv

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

_REAL = re.compile(r"^([+-]?)(\d+\.?\d*(?:e[+-]?\d+)?|\.\d+(?:e[+-]?\d+)?)?\*?(pi)?$", re.I)


def parse_real(text: str) -> float:
    """Parse ``1.5``, ``4pi``, ``2*pi``, ``pi/100`` or ``-3pi/2``."""
    num, _, den = str(text).replace(" ", "").partition("/")
    m = _REAL.match(num)
    if not m or not (m.group(2) or m.group(3)):
        raise argparse.ArgumentTypeError(f"cannot parse {text!r} as a real number")
    value = float(m.group(2)) if m.group(2) else 1.0
    if m.group(3):
        value *= math.pi
    if m.group(1) == "-":
        value = -value
    if den:
        value /= parse_real(den)
    return value


@dataclass
class RunRecord:
    spec: dict
    levels: int
    n_qubits: int
    pauli_term_count: int | None = None
    exact_energy: float | None = None
    vqe_energy: float | None = None
    vqe_gap: float | None = None
    restarts: int | None = None
    seed: int | None = None
    depth: int | None = None
    entanglement: str | None = None
    wall_time_seconds: float | None = None

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True) + "\n"


def _add_model_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("model")
    g.add_argument("--group", choices=["su2", "su3"], default="su2")
    g.add_argument("--scenario", choices=["vacuum", "thermal", "density"], default="vacuum")
    g.add_argument("--nf", type=int, default=1, help="fermion flavors")
    g.add_argument("--L", type=parse_real, default=1.0, help="circle radius")
    g.add_argument("--V", type=parse_real, default=1.0, help="spatial volume factor")
    g.add_argument("--beta", type=parse_real, default=None, help="inverse temperature")
    g.add_argument("--mu", type=parse_real, default=None, help="chemical potential")
    g.add_argument("--levels", type=int, default=DEFAULT_LEVELS, help="oscillator levels per mode")
    g.add_argument("--lmax", type=int, default=1000, help="winding-sum cutoff")
    g.add_argument("--mcut", type=int, default=200, help="Matsubara-sum cutoff")
    g.add_argument("--thermal-form", choices=["double_sum", "high_T"], default="double_sum")
    g.add_argument("--include-m-zero", action="store_true")
    g.add_argument("--include-constants", action="store_true")
    g.add_argument("--density-domain", choices=["mod_2pi", "raw"], default="mod_2pi")


def _spec_from(args) -> ModelSpec:
    beta = args.beta
    if args.scenario == "thermal" and beta is None:
        beta = 1.0
    mu = args.mu
    if args.scenario == "density" and mu is None:
        mu = math.pi / 2
    return ModelSpec(
        group=args.group, scenario=args.scenario, n_flavors=args.nf, radius=args.L,
        volume=args.V, beta=beta, mu=mu, lmax=args.lmax, mcut=args.mcut,
        thermal_form=args.thermal_form, include_m_zero=args.include_m_zero,
        include_constant_terms=args.include_constants, density_domain=args.density_domain,
    )


def _emit(text: str, out: str | None, stdout) -> None:
    if out:
        Path(out).write_text(text)
    else:
        stdout.write(text)


def _kv(stdout, **items) -> None:
    for k, v in items.items():
        stdout.write(f"{k}: {v!r}\n" if isinstance(v, float) else f"{k}: {v}\n")


def _grid(start: float, stop: float, step: float) -> np.ndarray:
    if not step > 0 or not stop >= start:
        raise ConfigurationError("need step > 0 and stop >= start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def cmd_potential(args, stdout) -> int:
    spec = _spec_from(args)
    fn = potential(spec)
    grid = _grid(args.start, args.stop, args.step)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if spec.group is Group.SU3:
        g1, g2 = np.meshgrid(grid, grid, indexing="ij")
        values = np.asarray(fn(g1, g2))
        w.writerow(["phi1", "phi2", "V"])
        for a, b, v in zip(g1.ravel(), g2.ravel(), values.ravel()):
            w.writerow([repr(float(a)), repr(float(b)), repr(float(v))])
    else:
        values = np.asarray(fn(grid))
        w.writerow(["phi", "V"])
        for a, v in zip(grid, values):
            w.writerow([repr(float(a)), repr(float(v))])
    _emit(buf.getvalue(), args.out, stdout)
    return EXIT_OK


def cmd_exact(args, stdout) -> int:
    spec = _spec_from(args)
    h = build_hamiltonian(spec, args.levels)
    e0, _ = ground_energy(h)
    _kv(stdout, exact_energy=e0, n_qubits=h.n_qubits)
    if args.out:
        record = RunRecord(spec.to_dict(), h.levels, h.n_qubits, exact_energy=e0)
        Path(args.out).write_text(record.to_json())
    return EXIT_OK


def cmd_paulis(args, stdout) -> int:
    spec = _spec_from(args)
    h = build_hamiltonian(spec, args.levels)
    ps = decompose(h.operator, args.threshold)
    text = f"# n_qubits={ps.n_qubits} n_terms={len(ps)} threshold={args.threshold!r}\n" + ps.to_text()
    if args.out:
        Path(args.out).write_text(text)
        _kv(stdout, pauli_term_count=len(ps), n_qubits=ps.n_qubits)
    else:
        stdout.write(text)
    return EXIT_OK


def cmd_vqe(args, stdout) -> int:
    spec = _spec_from(args)
    t0 = time.perf_counter()
    h = build_hamiltonian(spec, args.levels)
    ps = decompose(h.operator, args.threshold)
    ansatz = AnsatzSpec(h.n_qubits, args.depth, args.entanglement)
    result = run_vqe(h, ansatz, args.restarts, args.seed, args.max_iterations)
    if result.gap < -1e-9:
        raise NumericalContractError(f"VQE energy below exact ground energy by {-result.gap:.3e}")
    record = RunRecord(
        spec.to_dict(), h.levels, h.n_qubits, len(ps), result.exact_reference,
        result.best_energy, result.gap, args.restarts, args.seed, args.depth,
        args.entanglement, time.perf_counter() - t0,
    )
    _kv(stdout, exact_energy=record.exact_energy, vqe_energy=record.vqe_energy,
        vqe_gap=record.vqe_gap, n_qubits=record.n_qubits,
        pauli_term_count=record.pauli_term_count)
    if args.out:
        Path(args.out).write_text(record.to_json())
    if args.trace:
        write_trace_csv(result.trace, args.trace)
    return EXIT_OK


def cmd_calibrate(args, stdout) -> int:
    names = args.reference or list(calibration.REFERENCES)
    results = {name: calibration.calibrate(name, args.levels, args.threshold) for name in names}
    sens = {name: calibration.threshold_sensitivity(name, levels=args.levels) for name in names}
    _emit(calibration.render_report(results, sens), args.out, stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matrix-model-vqe",
        description="Effective matrix-model Hamiltonians: exact and VQE ground states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("potential", help="potential on a grid as CSV")
    _add_model_args(p)
    p.add_argument("--start", type=parse_real, default=0.0)
    p.add_argument("--stop", type=parse_real, default=None,
                   help="default 4pi for SU(2), 2pi for SU(3)")
    p.add_argument("--step", type=parse_real, default=None,
                   help="default pi/100 for SU(2), pi/50 for SU(3)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("exact", help="exact ground energy by dense diagonalization")
    _add_model_args(p)
    p.add_argument("--out", help="write a JSON run record")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("paulis", help="Pauli-string decomposition")
    _add_model_args(p)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--out")
    p.set_defaults(func=cmd_paulis)

    p = sub.add_parser("vqe", help="variational ground energy")
    _add_model_args(p)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--entanglement", choices=["full", "linear"], default="full")
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iterations", type=int, default=600)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--out", help="write a JSON run record")
    p.add_argument("--trace", help="write the convergence trace as CSV")
    p.set_defaults(func=cmd_vqe)

    p = sub.add_parser("calibrate", help="sweep convention flags against the reference energies")
    p.add_argument("--reference", action="append", choices=list(calibration.REFERENCES))
    p.add_argument("--levels", type=int, default=DEFAULT_LEVELS)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--out")
    p.set_defaults(func=cmd_calibrate)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "potential":
        su3 = args.group == "su3"
        if args.stop is None:
            args.stop = 2 * math.pi if su3 else 4 * math.pi
        if args.step is None:
            args.step = math.pi / 50 if su3 else math.pi / 100
    try:
        return args.func(args, stdout)
    except ConfigurationError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except NumericalContractError as exc:
        stderr.write(f"numerical error: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
