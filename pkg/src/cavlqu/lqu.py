"""Local quantum uncertainty (LQU) of qubit bipartitions.

For a state ``rho`` and a measured qubit ``k`` define the real symmetric matrix

    m_ij = Tr( sqrt(rho) P_i sqrt(rho) P_j ),

where ``P_i`` is the Pauli matrix ``sigma_i`` on qubit ``k`` and identity on
every other qubit. The LQU of ``k`` against the rest is ``1 - lambda_max(m)``.
For ``n`` qubits the combined value is the geometric mean of the ``n``
single-qubit LQUs, which vanishes as soon as one qubit is uncorrelated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore
from .errors import InvalidInput, NumericalError, NumericalNegative
from .states import as_density

NEGATIVE_TOL = 1e-9
ZERO_FACTOR = 1e-12
IMAG_TOL = 1e-10
DEFAULT_DIRECTIONS = 20000


@dataclass(frozen=True)
class Observable:
    """Spin component ``sigma . axis`` along a unit Bloch direction."""

    axis: tuple[float, float, float]

    def __post_init__(self):
        a = np.asarray(self.axis, dtype=float)
        if a.shape != (3,) or abs(np.linalg.norm(a) - 1.0) > 1e-12:
            raise InvalidInput(f"axis must be a unit 3-vector, got {self.axis}")
        object.__setattr__(self, "axis", tuple(float(x) for x in a))

    @classmethod
    def along(cls, direction) -> "Observable":
        d = np.asarray(direction, dtype=float)
        return cls(tuple(d / np.linalg.norm(d)))

    def matrix(self) -> np.ndarray:
        x, y, z = self.axis
        return x * matcore.SIGMA_X + y * matcore.SIGMA_Y + z * matcore.SIGMA_Z


@dataclass(frozen=True)
class LquBreakdown:
    per_qubit: tuple[tuple[str, float], ...]
    combined: float

    @property
    def values(self) -> list[float]:
        return [v for _, v in self.per_qubit]


def _measured(rho, measured_qubit: int):
    rho = as_density(rho)
    if not 0 <= measured_qubit < rho.n_qubits:
        raise InvalidInput(f"measured qubit {measured_qubit} out of range for {rho.n_qubits} qubits")
    return rho


def _lqu_matrix_from_sqrt(sq: np.ndarray, measured_qubit: int, n_qubits: int) -> np.ndarray:
    ps = [matcore.embed(p, measured_qubit, n_qubits) for p in matcore.PAULIS]
    # A_i = sqrt(rho) P_i, so m_ij = Tr(A_i A_j) = sum_ab A_i[a, b] A_j[b, a]
    a = np.stack([sq @ p for p in ps])
    m = np.einsum("iab,jba->ij", a, a)
    if np.max(np.abs(m.imag)) > IMAG_TOL:
        raise NumericalError(f"LQU matrix has imaginary part {np.max(np.abs(m.imag)):.3e}")
    m = m.real
    return 0.5 * (m + m.T)


def lqu_matrix(rho, measured_qubit: int = 0) -> np.ndarray:
    """Real symmetric 3x3 matrix whose top eigenvalue fixes the LQU."""
    rho = _measured(rho, measured_qubit)
    sq = matcore.matrix_sqrt(rho.mat, noise_floor=True)
    return _lqu_matrix_from_sqrt(sq, measured_qubit, rho.n_qubits)


def _lqu_from_matrix(m: np.ndarray) -> float:
    value = 1.0 - float(np.linalg.eigvalsh(m)[-1])
    if value < -NEGATIVE_TOL:
        raise NumericalNegative(f"LQU evaluated to {value:.3e}")
    return min(max(value, 0.0), 1.0)


def lqu_bipartite(rho, measured_qubit: int = 0) -> float:
    """LQU of ``measured_qubit`` against all remaining qubits, clamped to [0, 1]."""
    return _lqu_from_matrix(lqu_matrix(rho, measured_qubit))


def lqu_multiqubit(rho, labels=None) -> LquBreakdown:
    """Single-qubit LQUs for every qubit plus their geometric mean.

    ``sqrt(rho)`` is computed once and shared by all bipartitions. The
    geometric mean short-circuits to exactly 0 when any factor is <= 1e-12.
    """
    rho = as_density(rho)
    n = rho.n_qubits
    if n < 2:
        raise InvalidInput("multi-qubit LQU needs at least two qubits")
    labels = tuple(labels) if labels is not None else tuple(f"q{k}" for k in range(n))
    if len(labels) != n:
        raise InvalidInput(f"{len(labels)} labels given for {n} qubits")
    sq = matcore.matrix_sqrt(rho.mat, noise_floor=True)
    values = [_lqu_from_matrix(_lqu_matrix_from_sqrt(sq, k, n)) for k in range(n)]
    if min(values) <= ZERO_FACTOR:
        combined = 0.0
    else:
        combined = math.exp(sum(math.log(v) for v in values) / n)
    return LquBreakdown(tuple(zip(labels, values)), combined)


def _as_axes(obs) -> np.ndarray:
    if isinstance(obs, Observable):
        return np.asarray([obs.axis])
    return np.atleast_2d(np.asarray(obs, dtype=float))


def _skew_many(sq: np.ndarray, axes: np.ndarray, measured_qubit: int, n_qubits: int) -> np.ndarray:
    ps = np.stack([matcore.embed(p, measured_qubit, n_qubits) for p in matcore.PAULIS])
    k = np.einsum("ni,iab->nab", axes, ps)
    c = sq @ k - k @ sq
    # -1/2 Tr(C^2) for each commutator C
    return -0.5 * np.einsum("nab,nba->n", c, c).real


def skew_information(rho, obs, measured_qubit: int = 0) -> float:
    """Skew information ``-1/2 Tr([sqrt(rho), K]^2)`` for ``K = (sigma . n)`` on one qubit.

    ``obs`` is an :class:`Observable` or a unit 3-vector.
    """
    rho = _measured(rho, measured_qubit)
    if not isinstance(obs, Observable):
        obs = Observable(tuple(obs))
    sq = matcore.matrix_sqrt(rho.mat, noise_floor=True)
    return float(_skew_many(sq, _as_axes(obs), measured_qubit, rho.n_qubits)[0])


def fibonacci_sphere(n: int) -> np.ndarray:
    """``n`` deterministic, nearly uniform unit vectors (golden-angle spiral)."""
    i = np.arange(n)
    # both poles are included so z-basis product states are hit exactly
    z = 1.0 - 2.0 * i / (n - 1)
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = np.pi * (3.0 - math.sqrt(5.0)) * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def lqu_bruteforce(
    rho, measured_qubit: int = 0, n_directions: int = DEFAULT_DIRECTIONS, chunk: int = 4096
) -> float:
    """Minimum skew information over a Fibonacci grid of measurement axes.

    Independent of :func:`lqu_matrix`: each candidate is scored with the
    commutator definition. Being a grid minimum it can only overestimate the
    true LQU.
    """
    if n_directions < 1000:
        raise InvalidInput(f"n_directions must be >= 1000, got {n_directions}")
    rho = _measured(rho, measured_qubit)
    sq = matcore.matrix_sqrt(rho.mat, noise_floor=True)
    axes = fibonacci_sphere(n_directions)
    best = math.inf
    for start in range(0, n_directions, chunk):
        s = _skew_many(sq, axes[start:start + chunk], measured_qubit, rho.n_qubits)
        best = min(best, float(s.min()))
    return best
