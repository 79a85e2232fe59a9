"""Truncated harmonic-oscillator operators and Hermitian matrix functions."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .exceptions import InvalidTruncationError, NotHermitianError

HERMITIAN_TOL = 1e-10
DEFAULT_LEVELS = 16


def check_levels(levels, *, power_of_two: bool = True) -> int:
    """Validate a basis truncation size.

    Qubit mappings need ``levels`` to be an exact power of two; padding would
    change the spectrum, so other sizes are rejected instead.
    """
    if isinstance(levels, (bool, np.bool_)) or int(levels) != levels:
        raise InvalidTruncationError(f"levels must be an integer, got {levels!r}")
    levels = int(levels)
    if levels < 2:
        raise InvalidTruncationError(f"levels must be >= 2, got {levels}")
    if power_of_two and levels & (levels - 1):
        raise InvalidTruncationError(f"levels must be a power of two, got {levels}")
    return levels


def check_hermitian(op, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``op`` as a square complex array, raising if it is not Hermitian."""
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {op.shape}")
    if not np.all(np.isfinite(op)):
        raise NotHermitianError("matrix has non-finite entries")
    dev = np.max(np.abs(op - op.conj().T)) if op.size else 0.0
    if dev > tol:
        raise NotHermitianError(f"matrix deviates from Hermitian by {dev:.3e} > {tol:g}")
    return op


def _ladder_weights(levels: int) -> np.ndarray:
    return np.sqrt(np.arange(1, levels)) / np.sqrt(2.0)


def position_op(levels: int = DEFAULT_LEVELS) -> np.ndarray:
    """Position operator ``(a + a^dagger)/sqrt(2)`` in the first ``levels`` oscillator states.

    Real symmetric, with ``sqrt(k)/sqrt(2)`` on the first off-diagonals.
    """
    levels = check_levels(levels, power_of_two=False)
    w = _ladder_weights(levels)
    return np.diag(w, 1) + np.diag(w, -1)


def momentum_op(levels: int = DEFAULT_LEVELS) -> np.ndarray:
    """Momentum operator ``i (a^dagger - a)/sqrt(2)``; purely imaginary and Hermitian."""
    levels = check_levels(levels, power_of_two=False)
    w = _ladder_weights(levels)
    return 1j * (np.diag(-w, 1) + np.diag(w, -1))


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product; the first factor owns the most significant index."""
    return np.kron(np.asarray(a), np.asarray(b))


def apply_scalar_function(op, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Evaluate ``f(op)`` through the spectral decomposition ``U diag(f(w)) U^dagger``.

    ``f`` is called once with the full eigenvalue array and must be vectorized.
    Degenerate eigenvalues need no special care: any orthonormal eigenbasis
    yields the same matrix for a scalar function.
    """
    op = check_hermitian(op)
    w, v = np.linalg.eigh(op)
    fw = np.asarray(f(w))
    if fw.shape == ():
        fw = np.full_like(w, fw, dtype=np.result_type(fw, float))
    out = (v * fw) @ v.conj().T
    if np.isrealobj(op) and np.isrealobj(fw):
        return out.real
    return out
