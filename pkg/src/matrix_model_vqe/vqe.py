"""Statevector VQE with a hardware-efficient Ry ansatz.

The ansatz is one Ry layer followed by ``depth`` repetitions of
[CX entangler block, Ry layer]. Qubit 0 is the most significant bit of the
amplitude index, matching the Pauli-string convention.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .exceptions import InvalidParameterError, MappingError, NonFiniteObjectiveError
from .hamiltonian import ModelHamiltonian, ground_energy
from .pauli import PauliSum, expectation

FD_STEP = 1e-6
DEFAULT_MAX_ITERATIONS = 600
DEFAULT_RESTARTS = 10


class Entanglement(str, enum.Enum):
    FULL = "full"
    LINEAR = "linear"


@dataclass(frozen=True)
class AnsatzSpec:
    n_qubits: int
    depth: int = 3
    entanglement: Entanglement = Entanglement.FULL

    def __post_init__(self):
        object.__setattr__(self, "entanglement", Entanglement(self.entanglement))
        if self.n_qubits < 1 or self.depth < 0:
            raise InvalidParameterError("need n_qubits >= 1 and depth >= 0")

    @property
    def n_params(self) -> int:
        return self.n_qubits * (self.depth + 1)

    def cx_pairs(self) -> list[tuple[int, int]]:
        n = self.n_qubits
        if self.entanglement is Entanglement.FULL:
            return [(i, j) for i in range(n) for j in range(i + 1, n)]
        return [(i, i + 1) for i in range(n - 1)]


@lru_cache(maxsize=32)
def _entangler_permutation(n_qubits: int, pairs: tuple[tuple[int, int], ...]) -> np.ndarray:
    # A CX block only permutes basis states: |s> -> |g(s)>, so new_psi = psi[perm]
    # with perm[g(s)] = s.
    perm = np.empty(1 << n_qubits, dtype=np.int64)
    for s in range(1 << n_qubits):
        t = s
        for control, target in pairs:
            if t & (1 << (n_qubits - 1 - control)):
                t ^= 1 << (n_qubits - 1 - target)
        perm[t] = s
    return perm


def _ry_layer(psi: np.ndarray, angles: np.ndarray, n_qubits: int) -> np.ndarray:
    psi = psi.reshape((2,) * n_qubits)
    for q, theta in enumerate(angles):
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        psi = np.moveaxis(psi, q, 0)
        a0, a1 = psi[0], psi[1]
        psi = np.stack([c * a0 - s * a1, s * a0 + c * a1])
        psi = np.moveaxis(psi, 0, q)
    return psi.reshape(-1)


def apply_ansatz(spec: AnsatzSpec, params) -> np.ndarray:
    """Statevector produced from ``|0...0>`` by the Ry ansatz.

    Every gate is real, so the returned amplitudes are real floats.
    """
    params = np.asarray(params, dtype=float)
    if params.shape != (spec.n_params,):
        raise InvalidParameterError(
            f"expected {spec.n_params} angles, got shape {params.shape}"
        )
    n = spec.n_qubits
    perm = _entangler_permutation(n, tuple(spec.cx_pairs()))
    psi = np.zeros(1 << n)
    psi[0] = 1.0
    layers = params.reshape(spec.depth + 1, n)
    psi = _ry_layer(psi, layers[0], n)
    for layer in layers[1:]:
        psi = psi[perm]
        psi = _ry_layer(psi, layer, n)
    return psi


def _operator_of(h):
    if isinstance(h, ModelHamiltonian):
        return h.operator
    return h


def energy(spec: AnsatzSpec, params, h) -> float:
    """Expectation of ``h`` (``PauliSum``, ``ModelHamiltonian`` or dense matrix) in the ansatz state."""
    psi = apply_ansatz(spec, params)
    if isinstance(h, PauliSum):
        if h.n_qubits != spec.n_qubits:
            raise MappingError("Pauli sum and ansatz act on different qubit counts")
        return expectation(h, psi)
    op = np.asarray(_operator_of(h))
    if op.shape != (psi.size, psi.size):
        raise MappingError(f"operator shape {op.shape} does not match {psi.size} amplitudes")
    return float(np.vdot(psi, op @ psi).real)


def parameter_shift_gradient(spec: AnsatzSpec, params, h) -> np.ndarray:
    """Exact gradient from ``(E(t + pi/2) - E(t - pi/2)) / 2``, valid for Ry generators."""
    params = np.asarray(params, dtype=float)
    grad = np.empty_like(params)
    for i in range(params.size):
        shift = np.zeros_like(params)
        shift[i] = np.pi / 2
        grad[i] = 0.5 * (energy(spec, params + shift, h) - energy(spec, params - shift, h))
    return grad


@dataclass
class OptimizeResult:
    fun: float
    x: np.ndarray
    trace: list[float]
    n_iterations: int
    message: str = ""


def minimize(objective, initial, max_iterations: int = DEFAULT_MAX_ITERATIONS,
             tolerance: float = 1e-10, method: str = "SLSQP",
             step: float = FD_STEP) -> OptimizeResult:
    """Local SQP minimization with central finite-difference gradients.

    Every objective evaluation, gradient probes included, is appended to the
    trace. The returned point is the best one seen, which need not be the
    optimizer's last iterate. ``tolerance`` is passed as SLSQP's ``ftol`` or
    BFGS's ``gtol``.
    """
    if max_iterations < 1:
        raise InvalidParameterError("max_iterations must be >= 1")
    trace: list[float] = []
    best = {"f": math.inf, "x": None}

    def f(theta):
        value = float(objective(theta))
        if not math.isfinite(value):
            raise NonFiniteObjectiveError(
                f"objective returned {value} at evaluation {len(trace)}, theta={theta!r}"
            )
        trace.append(value)
        if value < best["f"]:
            best["f"], best["x"] = value, np.array(theta, dtype=float)
        return value

    def grad(theta):
        theta = np.asarray(theta, dtype=float)
        g = np.empty_like(theta)
        for i in range(theta.size):
            e = np.zeros_like(theta)
            e[i] = step
            g[i] = (f(theta + e) - f(theta - e)) / (2 * step)
        return g

    x0 = np.asarray(initial, dtype=float)
    if method.upper() == "SLSQP":
        options = {"maxiter": max_iterations, "ftol": tolerance}
    elif method.upper() == "BFGS":
        options = {"maxiter": max_iterations, "gtol": tolerance}
    else:
        raise InvalidParameterError(f"unsupported method {method!r}")
    res = _scipy_minimize(f, x0, jac=grad, method=method, options=options)
    return OptimizeResult(best["f"], best["x"], trace, int(res.nit), str(res.message))


@dataclass
class VqeResult:
    best_energy: float
    best_angles: np.ndarray
    trace: list[tuple[int, float]]
    restarts: int
    iterations_used: int
    exact_reference: float | None = None
    traces: list[list[float]] = field(default_factory=list, repr=False)
    best_restart: int = 0

    @property
    def gap(self) -> float | None:
        if self.exact_reference is None:
            return None
        return self.best_energy - self.exact_reference


def initial_angles(ansatz: AnsatzSpec, restarts: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.uniform(-np.pi, np.pi, size=(restarts, ansatz.n_params))


def run_vqe(h, ansatz: AnsatzSpec | None = None, restarts: int = DEFAULT_RESTARTS,
            seed: int = 0, max_iterations: int = DEFAULT_MAX_ITERATIONS,
            tolerance: float = 1e-10, method: str = "SLSQP",
            exact_reference: float | None | bool = True) -> VqeResult:
    """Multi-start VQE; the lowest energy over all restarts wins (ties go to the earlier restart).

    ``h`` may be a ``ModelHamiltonian``, a dense matrix or a ``PauliSum``.
    With ``exact_reference=True`` the dense ground energy is computed for
    comparison (not available for a ``PauliSum``).
    """
    if isinstance(h, PauliSum):
        n_qubits = h.n_qubits
    else:
        op = np.asarray(_operator_of(h))
        n_qubits = op.shape[0].bit_length() - 1
    if ansatz is None:
        ansatz = AnsatzSpec(n_qubits)
    if ansatz.n_qubits != n_qubits:
        raise MappingError(f"ansatz has {ansatz.n_qubits} qubits, Hamiltonian needs {n_qubits}")
    if restarts < 1:
        raise InvalidParameterError("restarts must be >= 1")

    if exact_reference is True:
        exact_reference = None if isinstance(h, PauliSum) else ground_energy(h)[0]
    elif exact_reference is False:
        exact_reference = None

    starts = initial_angles(ansatz, restarts, seed)
    runs = [
        minimize(lambda t: energy(ansatz, t, h), x0, max_iterations, tolerance, method)
        for x0 in starts
    ]
    best_idx = min(range(restarts), key=lambda i: (runs[i].fun, i))
    best = runs[best_idx]
    return VqeResult(
        best_energy=best.fun,
        best_angles=best.x,
        trace=list(enumerate(best.trace)),
        restarts=restarts,
        iterations_used=sum(r.n_iterations for r in runs),
        exact_reference=exact_reference,
        traces=[r.trace for r in runs],
        best_restart=best_idx,
    )


def write_trace_csv(trace, path) -> None:
    """Write ``evaluation,energy`` rows; accepts ``(index, energy)`` pairs or bare energies."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["evaluation", "energy"])
        for i, item in enumerate(trace):
            idx, value = item if isinstance(item, tuple) else (i, item)
            w.writerow([idx, repr(float(value))])


def read_trace_csv(path) -> list[tuple[int, float]]:
    with Path(path).open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [(int(r["evaluation"]), float(r["energy"])) for r in rows]
