"""Pauli-string decomposition of Hermitian operators.

A string is stored as two bitmasks: ``x`` marks letters X or Y, ``z`` marks
Z or Y. Letter 0 of a string acts on the most significant bit of the
amplitude index. On a basis state ``|s>`` the string acts as::

    P |s> = i**popcount(x & z) * (-1)**popcount(s & z) * |s ^ x>
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import MappingError, NumericalContractError
from .oscillator import check_hermitian

DEFAULT_THRESHOLD = 1e-10
_LETTERS = "IXYZ"
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


def _popcount(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    out = np.zeros(a.shape, dtype=np.int64)
    while np.any(a):
        out += a & 1
        a = a >> 1
    return out


def n_qubits_for(dim: int) -> int:
    if dim < 1 or dim & (dim - 1):
        raise MappingError(f"dimension {dim} is not a power of two")
    return dim.bit_length() - 1


@dataclass(frozen=True)
class PauliString:
    letters: str

    def __post_init__(self):
        if not self.letters or set(self.letters) - set(_LETTERS):
            raise ValueError(f"invalid Pauli string {self.letters!r}")

    @property
    def n_qubits(self) -> int:
        return len(self.letters)

    @property
    def masks(self) -> tuple[int, int]:
        x = z = 0
        for ch in self.letters:
            bx, bz = _LETTER_BITS[ch]
            x = (x << 1) | bx
            z = (z << 1) | bz
        return x, z

    @classmethod
    def from_masks(cls, x: int, z: int, n_qubits: int) -> PauliString:
        letters = []
        for q in range(n_qubits):
            bit = n_qubits - 1 - q
            letters.append("IXZY"[((x >> bit) & 1) + 2 * ((z >> bit) & 1)])
        return cls("".join(letters))

    def to_matrix(self) -> np.ndarray:
        mats = {
            "I": np.eye(2),
            "X": np.array([[0, 1], [1, 0]], dtype=complex),
            "Y": np.array([[0, -1j], [1j, 0]]),
            "Z": np.diag([1.0, -1.0]),
        }
        out = np.ones((1, 1), dtype=complex)
        for ch in self.letters:
            out = np.kron(out, mats[ch])
        return out

    def __str__(self) -> str:
        return self.letters


@dataclass(frozen=True)
class PauliSum:
    """Real-weighted sum of Pauli strings over ``n_qubits`` qubits.

    Terms are kept in lexicographic ``IXYZ`` order with no duplicates.
    """

    n_qubits: int
    xmask: np.ndarray
    zmask: np.ndarray
    coeffs: np.ndarray
    zero_threshold: float = DEFAULT_THRESHOLD
    _order: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        x = np.asarray(self.xmask, dtype=np.int64)
        z = np.asarray(self.zmask, dtype=np.int64)
        c = np.asarray(self.coeffs, dtype=float)
        if not (x.shape == z.shape == c.shape) or x.ndim != 1:
            raise ValueError("xmask, zmask and coeffs must be 1-d arrays of equal length")
        key = _sort_key(x, z, self.n_qubits)
        if np.unique(key).size != key.size:
            raise ValueError("duplicate Pauli strings")
        order = np.argsort(key, kind="stable")
        object.__setattr__(self, "xmask", x[order])
        object.__setattr__(self, "zmask", z[order])
        object.__setattr__(self, "coeffs", c[order])

    def __len__(self) -> int:
        return self.coeffs.size

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def strings(self) -> list[PauliString]:
        return [PauliString.from_masks(int(x), int(z), self.n_qubits)
                for x, z in zip(self.xmask, self.zmask)]

    def terms(self) -> list[tuple[PauliString, float]]:
        return list(zip(self.strings(), self.coeffs.tolist()))

    @classmethod
    def from_terms(cls, terms, threshold: float = DEFAULT_THRESHOLD) -> PauliSum:
        """Build from ``(string, coefficient)`` pairs; strings may be ``str`` or ``PauliString``."""
        terms = [(PauliString(str(s)), float(c)) for s, c in terms]
        if not terms:
            raise ValueError("need at least one term to infer the qubit count")
        n = terms[0][0].n_qubits
        if any(s.n_qubits != n for s, _ in terms):
            raise ValueError("all strings must have the same length")
        masks = [s.masks for s, _ in terms]
        return cls(n, [m[0] for m in masks], [m[1] for m in masks],
                   [c for _, c in terms], threshold)

    def to_text(self) -> str:
        """One ``<string> <coefficient>`` line per term; ``repr`` floats round-trip exactly."""
        return "".join(f"{s} {c!r}\n" for s, c in self.terms())

    @classmethod
    def from_text(cls, text: str, threshold: float = DEFAULT_THRESHOLD) -> PauliSum:
        terms = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            s, c = line.split()
            terms.append((s, float(c)))
        return cls.from_terms(terms, threshold)


def _sort_key(x, z, n_qubits):
    # base-4 digit per qubit with I=0, X=1, Y=2, Z=3, most significant qubit first
    digit_of = np.array([0, 1, 3, 2])  # index bx + 2*bz -> IXYZ rank
    key = np.zeros(np.shape(x), dtype=np.int64)
    for q in range(n_qubits):
        bit = n_qubits - 1 - q
        d = digit_of[((x >> bit) & 1) + 2 * ((z >> bit) & 1)]
        key = key * 4 + d
    return key


def _walsh_hadamard(a: np.ndarray) -> np.ndarray:
    """Unnormalized transform along the last axis: ``out[z] = sum_s (-1)**popcount(s & z) a[s]``."""
    a = np.array(a, dtype=complex)
    d = a.shape[-1]
    h = 1
    lead = a.shape[:-1]
    while h < d:
        a = a.reshape(*lead, -1, 2, h)
        top = a[..., 0, :] + a[..., 1, :]
        bottom = a[..., 0, :] - a[..., 1, :]
        a = np.stack([top, bottom], axis=-2)
        h *= 2
    return a.reshape(*lead, d)


def pauli_coefficients(h) -> np.ndarray:
    """All ``4**n`` coefficients ``Tr(P H) / 2**n`` as a ``(2**n, 2**n)`` array indexed ``[x, z]``.

    Rows of ``H`` shifted by each X-mask are fed through a Walsh-Hadamard
    transform, giving every Z-mask at once in ``O(4**n n)`` operations.
    """
    h = check_hermitian(h)
    d = h.shape[0]
    n_qubits_for(d)
    s = np.arange(d)
    x = s[:, None]
    shifted = h[s[None, :], s[None, :] ^ x]  # shifted[x, s] = H[s, s ^ x]
    transformed = _walsh_hadamard(shifted)
    ny = _popcount(x & s[None, :])  # z runs along axis 1
    coeffs = (1j ** ny) * transformed / d
    return coeffs.real


def decompose(h, threshold: float = DEFAULT_THRESHOLD) -> PauliSum:
    """Pauli expansion of a Hermitian ``2**n x 2**n`` matrix, dropping ``|c| <= threshold``."""
    h = check_hermitian(h)
    n = n_qubits_for(h.shape[0])
    c = pauli_coefficients(h)
    xs, zs = np.nonzero(np.abs(c) > threshold)
    return PauliSum(n, xs, zs, c[xs, zs], threshold)


def reconstruct(s: PauliSum) -> np.ndarray:
    d = s.dim
    out = np.zeros((d, d), dtype=complex)
    idx = np.arange(d)
    for x, z, c in zip(s.xmask, s.zmask, s.coeffs):
        phase = (1j ** _popcount(x & z)) * (1 - 2 * (_popcount(idx & z) & 1))
        out[idx ^ x, idx] += c * phase
    return out


def expectation(s: PauliSum, state, *, norm_tol: float = 1e-10) -> float:
    """``<state| S |state>`` evaluated string by string on amplitudes, never forming the matrix."""
    psi = np.asarray(state)
    if psi.shape != (s.dim,):
        raise MappingError(f"state has shape {psi.shape}, expected ({s.dim},)")
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > norm_tol:
        raise NumericalContractError(f"state is not normalized (norm^2 = {norm:.12g})")
    idx = np.arange(s.dim)
    x = s.xmask[:, None]
    z = s.zmask[:, None]
    signs = 1 - 2 * (_popcount(idx[None, :] & z) & 1)
    # <psi| P |psi> = i^ny sum_s conj(psi[s ^ x]) (-1)^{s.z} psi[s]
    per_term = np.sum(psi.conj()[idx[None, :] ^ x] * signs * psi[None, :], axis=1)
    per_term = per_term * (1j ** _popcount(s.xmask & s.zmask))
    # ordered reduction keeps the result bit-reproducible
    return float(np.sum(s.coeffs * per_term.real))
