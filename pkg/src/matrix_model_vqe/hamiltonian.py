"""Dense Hamiltonians ``p^2/2 + V`` in the truncated oscillator basis and their exact ground states."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import SpecMismatchError
from .oscillator import (
    DEFAULT_LEVELS,
    apply_scalar_function,
    check_hermitian,
    check_levels,
    momentum_op,
    position_op,
    tensor_product,
)
from .potentials import Group, ModelSpec, potential


@dataclass(frozen=True)
class ModelHamiltonian:
    operator: np.ndarray
    n_qubits: int
    spec: ModelSpec
    levels: int

    @property
    def dim(self) -> int:
        return self.operator.shape[0]


def _kinetic(levels: int) -> np.ndarray:
    p = momentum_op(levels)
    # p is purely imaginary, so p @ p is real
    return 0.5 * (p @ p).real


def build_su2(spec: ModelSpec, levels: int = DEFAULT_LEVELS,
              potential_fn: Callable | None = None) -> ModelHamiltonian:
    """Assemble ``p^2/2 + V(phi)`` for a single Wilson line.

    ``potential_fn`` overrides the potential selected by ``spec``; it must be
    vectorized over eigenvalues of the position operator.
    """
    if spec.group is not Group.SU2:
        raise SpecMismatchError("build_su2 needs an SU(2) spec")
    levels = check_levels(levels)
    fn = potential(spec) if potential_fn is None else potential_fn
    op = _kinetic(levels) + apply_scalar_function(position_op(levels), fn)
    op = check_hermitian(op)
    return ModelHamiltonian(op, levels.bit_length() - 1, spec, levels)


def build_su3(spec: ModelSpec, levels: int = DEFAULT_LEVELS,
              potential_fn: Callable | None = None) -> ModelHamiltonian:
    """Assemble ``p1^2/2 + p2^2/2 + V(phi1, phi2)`` on the two-mode tensor space.

    ``phi1 = phi (x) I`` and ``phi2 = I (x) phi`` commute and are both diagonal
    in the product of single-mode eigenbases, so the two-variable potential is
    evaluated on eigenvalue pairs and rotated back.
    """
    if spec.group is not Group.SU3:
        raise SpecMismatchError("build_su3 needs an SU(3) spec")
    levels = check_levels(levels)
    fn = potential(spec) if potential_fn is None else potential_fn
    eye = np.eye(levels)
    kin = _kinetic(levels)
    kinetic = tensor_product(kin, eye) + tensor_product(eye, kin)

    w, v = np.linalg.eigh(position_op(levels))
    grid1, grid2 = np.meshgrid(w, w, indexing="ij")
    diag = np.asarray(fn(grid1, grid2), dtype=float).reshape(-1)
    basis = tensor_product(v, v)
    pot = (basis * diag) @ basis.T
    op = check_hermitian(kinetic + pot)
    return ModelHamiltonian(op, 2 * (levels.bit_length() - 1), spec, levels)


def build_hamiltonian(spec: ModelSpec, levels: int = DEFAULT_LEVELS) -> ModelHamiltonian:
    if spec.group is Group.SU3:
        return build_su3(spec, levels)
    return build_su2(spec, levels)


def ground_energy(h) -> tuple[float, np.ndarray]:
    """Lowest eigenvalue and a unit eigenvector of a Hermitian matrix or ``ModelHamiltonian``."""
    op = h.operator if isinstance(h, ModelHamiltonian) else check_hermitian(h)
    w, v = np.linalg.eigh(op)
    return float(w[0]), v[:, 0]
