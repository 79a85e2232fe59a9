"""Effective matrix models of SU(2)/SU(3) gauge theory: Hamiltonians, Pauli maps and VQE."""

from .estimators import VQE, ExactEigensolver, MatrixModel, PauliDecomposer
from .hamiltonian import ModelHamiltonian, build_hamiltonian, build_su2, build_su3, ground_energy
from .oscillator import apply_scalar_function, momentum_op, position_op, tensor_product
from .pauli import PauliString, PauliSum, decompose, expectation, reconstruct
from .potentials import (
    ModelSpec,
    series_tail_bound,
    su2_density,
    su2_thermal,
    su2_vacuum,
    su3_vacuum,
    truncation_error,
)
from .vqe import AnsatzSpec, VqeResult, apply_ansatz, energy, minimize, run_vqe

__version__ = "0.1.0"

__all__ = [
    "AnsatzSpec", "ExactEigensolver", "MatrixModel", "ModelHamiltonian", "ModelSpec",
    "PauliDecomposer", "PauliString", "PauliSum", "VQE", "VqeResult", "apply_ansatz",
    "apply_scalar_function", "build_hamiltonian", "build_su2", "build_su3", "decompose",
    "energy", "expectation", "ground_energy", "minimize", "momentum_op", "position_op",
    "reconstruct", "run_vqe", "series_tail_bound", "su2_density", "su2_thermal",
    "su2_vacuum", "su3_vacuum", "tensor_product", "truncation_error",
]
