"""Small dense complex linear algebra.

Everything here works on plain ``numpy`` arrays of shape ``(d, d)``.  Qubit 0
is the most significant bit of a computational-basis index, so the basis state
``|q0 q1 ... q_{n-1}>`` sits at row ``q0 * 2**(n-1) + ... + q_{n-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BadDimension, BadIndex, NoConvergence, NotHermitian, NotPositive

HERMITIAN_TOL = 1e-9
NEGATIVE_EIG_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in ascending order with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a square complex array, rejecting non-finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise BadDimension(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise BadDimension("matrix has non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(mats: Sequence) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def hermiticity_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - dagger(m))))


def eigh(m) -> EigenDecomposition:
    """Hermitian eigendecomposition.

    The input is checked against ``HERMITIAN_TOL`` and then symmetrised as
    ``(m + m^dagger) / 2`` so that round-off asymmetry cannot change the result.

    Raises:
        NotHermitian: if ``max |m - m^dagger|`` exceeds ``HERMITIAN_TOL``.
        NoConvergence: if LAPACK fails to converge.
    """
    a = as_matrix(m)
    err = hermiticity_error(a)
    if err > HERMITIAN_TOL:
        raise NotHermitian(f"max |m - m^dagger| = {err:.3e} exceeds {HERMITIAN_TOL:g}")
    a = 0.5 * (a + dagger(a))
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return EigenDecomposition(w, v)


def sqrt_from_eig(dec: EigenDecomposition, noise_floor: bool = False) -> np.ndarray:
    w = dec.eigenvalues
    if w[0] < -NEGATIVE_EIG_TOL:
        raise NotPositive(f"eigenvalue {w[0]:.3e} below -{NEGATIVE_EIG_TOL:g}")
    v = dec.eigenvectors
    if noise_floor:
        floor = len(w) * np.finfo(float).eps * max(abs(w[-1]), abs(w[0]))
        w = np.where(w > floor, w, 0.0)
    else:
        w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ dagger(v)


def matrix_sqrt(rho, noise_floor: bool = False) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-1e-9, 0)`` are treated as round-off and clamped to zero.

    With ``noise_floor=True`` eigenvalues below ``d * eps * max|lambda|`` are
    zeroed as well. Such values cannot be resolved from round-off, and the
    square root would lift noise of order 1e-17 (e.g. in a computed pure-state
    projector) to order 1e-9. Leave it off when genuinely tiny eigenvalues
    matter, as they do for the concurrence of nearly decayed states.
    """
    return sqrt_from_eig(eigh(rho), noise_floor)


def n_qubits_of(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim != 1 << n:
        raise BadDimension(f"dimension {dim} is not a power of two")
    return n


def _check_indices(indices: Sequence[int], n_qubits: int) -> list[int]:
    idx = [int(i) for i in indices]
    if len(set(idx)) != len(idx):
        raise BadIndex(f"duplicate qubit indices in {list(indices)}")
    for i in idx:
        if not 0 <= i < n_qubits:
            raise BadIndex(f"qubit index {i} out of range for {n_qubits} qubits")
    return idx


def partial_trace(rho, n_qubits: int, keep: Sequence[int]) -> np.ndarray:
    """Trace out every qubit not listed in ``keep``.

    The kept qubits appear in the result in the order given by ``keep``, so
    ``keep=[1, 0]`` also swaps them.
    """
    a = as_matrix(rho)
    if a.shape[0] != 1 << n_qubits:
        raise BadDimension(f"matrix of size {a.shape[0]} is not {n_qubits} qubits")
    keep = _check_indices(keep, n_qubits)
    if not keep:
        raise BadIndex("keep must name at least one qubit")
    traced = [q for q in range(n_qubits) if q not in keep]
    t = a.reshape((2,) * (2 * n_qubits))
    # bra axes sit at offset n_qubits; moving traced pairs to the end lets one
    # reshape + trace do the contraction
    order = keep + [q + n_qubits for q in keep] + traced + [q + n_qubits for q in traced]
    t = np.transpose(t, order)
    dk, dt = 1 << len(keep), 1 << len(traced)
    t = t.reshape(dk, dk, dt, dt)
    return np.trace(t, axis1=2, axis2=3)


def embed(op: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    """Place a single-qubit operator on ``qubit`` with identities elsewhere."""
    _check_indices([qubit], n_qubits)
    return kron_all([op if q == qubit else I2 for q in range(n_qubits)])


def permutation_matrix(order: Sequence[int]) -> np.ndarray:
    """Unitary ``P`` with ``P |q_0 ... q_{n-1}> = |q_{order[0]} ... q_{order[n-1]}>``.

    Conjugating a state by ``P`` reorders its qubits so that new qubit ``k``
    is old qubit ``order[k]``.
    """
    n = len(order)
    order = _check_indices(order, n)
    dim = 1 << n
    p = np.zeros((dim, dim), dtype=complex)
    for src in range(dim):
        bits = [(src >> (n - 1 - q)) & 1 for q in range(n)]
        dst = 0
        for k in range(n):
            dst = (dst << 1) | bits[order[k]]
        p[dst, src] = 1.0
    return p
