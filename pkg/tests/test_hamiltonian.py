import time

import numpy as np
import pytest

from matrix_model_vqe.exceptions import InvalidTruncationError, SpecMismatchError
from matrix_model_vqe.hamiltonian import build_hamiltonian, build_su2, build_su3, ground_energy
from matrix_model_vqe.oscillator import momentum_op, position_op, tensor_product
from matrix_model_vqe.potentials import ModelSpec, su3_vacuum

SU2 = ModelSpec()
SU3 = ModelSpec(group="su3")
SPECS = [SU2, ModelSpec(scenario="thermal", beta=1.0),
         ModelSpec(scenario="density", mu=np.pi / 2),
         ModelSpec(scenario="density", mu=np.pi / 2, density_domain="raw"), SU3]


def test_harmonic_debug_potential():
    h = build_su2(SU2, 16, potential_fn=lambda x: x**2 / 2)
    assert ground_energy(h)[0] == pytest.approx(0.5, abs=1e-10)


def test_vacuum_shape():
    h = build_su2(SU2, 16)
    assert h.operator.shape == (16, 16)
    assert h.n_qubits == 4
    assert np.max(np.abs(h.operator - h.operator.conj().T)) < 1e-10


def test_free_particle_psd():
    h = build_su2(SU2, 16, potential_fn=lambda x: np.zeros_like(x))
    assert np.linalg.eigvalsh(h.operator)[0] >= -1e-12


def test_su3_shape():
    h = build_su3(SU3, 16)
    assert h.operator.shape == (256, 256)
    assert h.n_qubits == 8


def test_su3_free_spectrum_is_kronecker_sum():
    h = build_su3(SU3, 8, potential_fn=lambda a, b: np.zeros_like(a))
    p = momentum_op(8)
    single = np.linalg.eigvalsh(0.5 * (p @ p).real)
    expected = np.sort(np.add.outer(single, single).ravel())
    np.testing.assert_allclose(np.linalg.eigvalsh(h.operator), expected, atol=1e-10)


def test_su3_two_oscillators():
    h = build_su3(SU3, 16, potential_fn=lambda a, b: (a**2 + b**2) / 2)
    assert ground_energy(h)[0] == pytest.approx(1.0, abs=1e-10)


def test_su3_potential_matches_operator_function():
    # cross-check the joint-eigenbasis shortcut against the commuting tensor operators
    levels = 4
    spec = SU3.replace(lmax=20)
    h = build_su3(spec, levels)
    phi, eye = position_op(levels), np.eye(levels)
    p = momentum_op(levels)
    phi1, phi2 = tensor_product(phi, eye), tensor_product(eye, phi)
    # phi1 and phi2 commute; diagonalize a generic combination to get the joint basis
    w, v = np.linalg.eigh(phi1 + np.sqrt(2) * phi2)
    a = np.diag(v.T @ phi1 @ v)
    b = np.diag(v.T @ phi2 @ v)
    pot = (v * su3_vacuum(a, b, spec)) @ v.T
    kin = 0.5 * (tensor_product(p @ p, eye) + tensor_product(eye, p @ p)).real
    assert np.max(np.abs(h.operator - (kin + pot))) < 1e-10


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"{s.group.value}-{s.scenario.value}-{s.density_domain.value}")
def test_hermitian_and_shift(spec):
    h = build_hamiltonian(spec)
    op = h.operator
    assert np.max(np.abs(op - op.conj().T)) < 1e-10
    e0, v = ground_energy(h)
    assert np.linalg.norm(op @ v - e0 * v) < 1e-8
    assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
    shift = 3.7
    assert ground_energy(op + shift * np.eye(op.shape[0]))[0] == pytest.approx(e0 + shift, abs=1e-10)


@pytest.mark.parametrize("spec", SPECS[:3], ids=["vacuum", "thermal", "density"])
def test_variational_bound_random_vectors(spec):
    h = build_hamiltonian(spec)
    e0, _ = ground_energy(h)
    rng = np.random.default_rng(0)
    for _ in range(100):
        v = rng.normal(size=h.dim) + 1j * rng.normal(size=h.dim)
        v /= np.linalg.norm(v)
        assert np.vdot(v, h.operator @ v).real >= e0 - 1e-12


def test_su3_swap_invariance():
    h = build_su3(SU3, 16)
    swap = np.eye(256)[np.arange(256).reshape(16, 16).T.ravel()]
    swapped = swap @ h.operator @ swap.T
    # swapping the tensor factors equals building with phi1 <-> phi2
    assert np.max(np.abs(swapped - h.operator)) < 1e-10
    assert ground_energy(swapped)[0] == pytest.approx(ground_energy(h)[0], abs=1e-10)


def test_pauli_z_ground_state():
    e, v = ground_energy(np.diag([1.0, -1.0]))
    assert e == -1.0
    np.testing.assert_allclose(np.abs(v), [0.0, 1.0])


def test_su3_exact_is_fast():
    t0 = time.perf_counter()
    ground_energy(build_su3(SU3, 16))
    assert time.perf_counter() - t0 < 1.0


def test_group_checks():
    with pytest.raises(SpecMismatchError):
        build_su2(SU3)
    with pytest.raises(SpecMismatchError):
        build_su3(SU2)
    with pytest.raises(InvalidTruncationError):
        build_su2(SU2, 12)
