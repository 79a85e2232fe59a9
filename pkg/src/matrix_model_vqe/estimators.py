"""scikit-learn style estimators over the functional core.

Each class only stores constructor arguments (so ``get_params``/``set_params``
and ``clone`` work) and learns trailing-underscore attributes in ``fit``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .hamiltonian import ModelHamiltonian, build_hamiltonian, ground_energy
from .oscillator import DEFAULT_LEVELS, check_hermitian
from .pauli import DEFAULT_THRESHOLD, PauliSum, decompose, reconstruct
from .potentials import Group, ModelSpec, potential
from .vqe import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_RESTARTS,
    AnsatzSpec,
    apply_ansatz,
    energy,
    run_vqe,
)


def check_hamiltonian(H):
    """Accept a fitted ``MatrixModel``, a ``ModelHamiltonian`` or a dense Hermitian matrix."""
    if isinstance(H, MatrixModel):
        check_is_fitted(H, "hamiltonian_")
        return H.hamiltonian_
    if isinstance(H, ModelHamiltonian):
        return H
    return check_hermitian(H)


def _dense(H) -> np.ndarray:
    return H.operator if isinstance(H, ModelHamiltonian) else H


class MatrixModel(BaseEstimator):
    """Effective matrix-model Hamiltonian builder.

    ``fit`` assembles the truncated Hamiltonian; ``predict`` evaluates the
    potential at Wilson-line values (one column for SU(2), two for SU(3)).
    """

    def __init__(self, group="su2", scenario="vacuum", n_flavors=1, radius=1.0,
                 volume=1.0, beta=None, mu=None, lmax=1000, mcut=200,
                 thermal_form="double_sum", include_m_zero=False,
                 include_constant_terms=False, density_domain="mod_2pi",
                 levels=DEFAULT_LEVELS):
        self.group = group
        self.scenario = scenario
        self.n_flavors = n_flavors
        self.radius = radius
        self.volume = volume
        self.beta = beta
        self.mu = mu
        self.lmax = lmax
        self.mcut = mcut
        self.thermal_form = thermal_form
        self.include_m_zero = include_m_zero
        self.include_constant_terms = include_constant_terms
        self.density_domain = density_domain
        self.levels = levels

    def _spec(self) -> ModelSpec:
        params = self.get_params()
        params.pop("levels")
        return ModelSpec(**params)

    def fit(self, X=None, y=None):
        self.spec_ = self._spec()
        self.hamiltonian_ = build_hamiltonian(self.spec_, self.levels)
        self.n_qubits_ = self.hamiltonian_.n_qubits
        return self

    def predict(self, X):
        check_is_fitted(self, "spec_")
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        fn = potential(self.spec_)
        width = 2 if self.spec_.group is Group.SU3 else 1
        if X.ndim != 2 or X.shape[1] != width:
            raise ValueError(f"expected X of shape (n_samples, {width}), got {X.shape}")
        return np.asarray(fn(*X.T), dtype=float)


class PauliDecomposer(TransformerMixin, BaseEstimator):
    """Dense Hermitian matrix <-> ``PauliSum``."""

    def __init__(self, threshold=DEFAULT_THRESHOLD):
        self.threshold = threshold

    def fit(self, X=None, y=None):
        return self

    def transform(self, X) -> PauliSum:
        return decompose(_dense(check_hamiltonian(X)), self.threshold)

    def inverse_transform(self, X: PauliSum) -> np.ndarray:
        return reconstruct(X)


class ExactEigensolver(BaseEstimator):
    """Dense diagonalization; the reference every VQE run is compared against."""

    def fit(self, X, y=None):
        self.ground_energy_, self.ground_state_ = ground_energy(_dense(check_hamiltonian(X)))
        return self


class VQE(BaseEstimator):
    """Multi-start variational eigensolver with the Ry ansatz.

    Attributes
    ----------
    result_ : VqeResult
    energy_ : float
        Best energy over all restarts.
    params_ : ndarray of shape (n_qubits * (depth + 1),)
    trace_ : list of (int, float)
        Every objective evaluation of the winning restart.
    gap_ : float
        ``energy_`` minus the exact ground energy.
    """

    def __init__(self, depth=3, entanglement="full", restarts=DEFAULT_RESTARTS,
                 max_iter=DEFAULT_MAX_ITERATIONS, tol=1e-10, method="SLSQP",
                 random_state=0):
        self.depth = depth
        self.entanglement = entanglement
        self.restarts = restarts
        self.max_iter = max_iter
        self.tol = tol
        self.method = method
        self.random_state = random_state

    def fit(self, X, y=None):
        if isinstance(X, PauliSum):
            # optimize on the Pauli sum itself; the dense form only supplies the reference
            H, n_qubits = X, X.n_qubits
            reference = ground_energy(reconstruct(X))[0]
        else:
            H = check_hamiltonian(X)
            n_qubits = _dense(H).shape[0].bit_length() - 1
            reference = True
        self.ansatz_ = AnsatzSpec(n_qubits, self.depth, self.entanglement)
        self.result_ = run_vqe(H, self.ansatz_, self.restarts, self.random_state,
                               self.max_iter, self.tol, self.method, exact_reference=reference)
        self.energy_ = self.result_.best_energy
        self.params_ = self.result_.best_angles
        self.trace_ = self.result_.trace
        self.gap_ = self.result_.gap
        return self

    def transform(self, X=None) -> np.ndarray:
        """Statevector of the fitted ansatz."""
        check_is_fitted(self, "params_")
        return apply_ansatz(self.ansatz_, self.params_)

    def score(self, X, y=None) -> float:
        """Negative energy of the fitted state on ``X``, so that larger is better."""
        check_is_fitted(self, "params_")
        H = X if isinstance(X, PauliSum) else _dense(check_hamiltonian(X))
        return -energy(self.ansatz_, self.params_, H)
