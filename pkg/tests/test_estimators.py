import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from matrix_model_vqe import VQE, ExactEigensolver, MatrixModel, PauliDecomposer
from matrix_model_vqe.exceptions import ConfigurationError
from matrix_model_vqe.hamiltonian import build_hamiltonian, ground_energy
from matrix_model_vqe.potentials import ModelSpec, su2_vacuum, su3_vacuum


def test_matrix_model_params_and_clone():
    model = MatrixModel(scenario="thermal", beta=2.0)
    params = model.get_params()
    assert params["beta"] == 2.0 and params["levels"] == 16
    twin = clone(model).set_params(beta=3.0)
    assert twin.beta == 3.0 and model.beta == 2.0


def test_matrix_model_fit_predict():
    model = MatrixModel().fit()
    assert model.n_qubits_ == 4
    expected = build_hamiltonian(ModelSpec()).operator
    np.testing.assert_array_equal(model.hamiltonian_.operator, expected)
    phis = np.linspace(0, 4 * np.pi, 7)
    np.testing.assert_array_equal(model.predict(phis[:, None]), su2_vacuum(phis, ModelSpec()))


def test_matrix_model_su3_predict():
    model = MatrixModel(group="su3").fit()
    X = np.array([[0.1, 0.2], [1.0, -0.5]])
    np.testing.assert_array_equal(model.predict(X), su3_vacuum(X[:, 0], X[:, 1], ModelSpec(group="su3")))
    with pytest.raises(ValueError):
        model.predict(np.zeros((3, 1)))


def test_matrix_model_invalid_config():
    with pytest.raises(ConfigurationError):
        MatrixModel(scenario="density", mu=4.0).fit()
    with pytest.raises(NotFittedError):
        MatrixModel().predict([0.0])


def test_pauli_decomposer_round_trip():
    model = MatrixModel().fit()
    dec = PauliDecomposer()
    paulis = dec.fit_transform(model)
    assert len(paulis) == 71
    assert np.max(np.abs(dec.inverse_transform(paulis) - model.hamiltonian_.operator)) < 1e-12


def test_exact_eigensolver():
    model = MatrixModel().fit()
    solver = ExactEigensolver().fit(model)
    assert solver.ground_energy_ == ground_energy(model.hamiltonian_)[0]


def test_vqe_estimator():
    model = MatrixModel().fit()
    vqe = VQE(restarts=3, random_state=1).fit(model)
    assert vqe.gap_ >= -1e-9
    assert vqe.params_.shape == (16,)
    psi = vqe.transform()
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)
    assert vqe.score(model) == pytest.approx(-vqe.energy_, abs=1e-12)
    assert vqe.score(PauliDecomposer().transform(model)) == pytest.approx(-vqe.energy_, abs=1e-10)
    assert clone(vqe).get_params()["restarts"] == 3


def test_vqe_accepts_raw_matrix():
    h = np.diag([0.5, -1.0, 2.0, 0.0])
    vqe = VQE(depth=1, restarts=2).fit(h)
    assert vqe.energy_ == pytest.approx(-1.0, abs=1e-8)


def test_vqe_not_fitted():
    with pytest.raises(NotFittedError):
        VQE().transform()


def test_vqe_fits_pauli_sum():
    model = MatrixModel().fit()
    paulis = PauliDecomposer().transform(model)
    a = VQE(restarts=2, max_iter=40).fit(paulis)
    b = VQE(restarts=2, max_iter=40).fit(model)
    assert a.energy_ == pytest.approx(b.energy_, abs=1e-8)
    assert a.gap_ == pytest.approx(b.gap_, abs=1e-8)
