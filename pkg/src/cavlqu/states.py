"""Density matrices and the initial cavity states used in the sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import matcore
from .errors import BadAmplitudes, InvalidInput, InvalidState

STATE_TOL = 1e-9
AMPLITUDE_TOL = 1e-12


@dataclass(frozen=True)
class Violation:
    """One failed density-matrix invariant and how badly it failed."""

    kind: str
    magnitude: float

    def __str__(self) -> str:
        return f"{self.kind}({self.magnitude:g})"


def validate(rho) -> list[Violation]:
    """Check the density-matrix invariants, reporting rather than raising.

    Returns an empty list for a valid state. Possible kinds are ``NonSquare``,
    ``NonFinite``, ``NotHermitian``, ``TraceDeviation`` and
    ``NegativeEigenvalue``. The trace deviation reported is ``|Tr rho - 1|``
    and the negative eigenvalue is reported as its (negative) value.
    """
    m = np.asarray(rho.mat if isinstance(rho, DensityMatrix) else rho, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        return [Violation("NonSquare", float("nan"))]
    if not np.all(np.isfinite(m)):
        return [Violation("NonFinite", float("nan"))]
    out = []
    herm = matcore.hermiticity_error(m)
    if herm > STATE_TOL:
        out.append(Violation("NotHermitian", herm))
    tr = np.trace(m)
    dev = abs(tr - 1.0)
    if dev > STATE_TOL:
        out.append(Violation("TraceDeviation", float(dev)))
    w = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    if w[0] < -STATE_TOL:
        out.append(Violation("NegativeEigenvalue", float(w[0])))
    return out


@dataclass(frozen=True)
class DensityMatrix:
    """A validated ``n_qubits`` state; ``mat`` is stored read-only."""

    n_qubits: int
    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = matcore.as_matrix(self.mat).copy()
        if m.shape[0] != 1 << self.n_qubits:
            raise InvalidState(
                f"matrix of size {m.shape[0]} does not describe {self.n_qubits} qubits"
            )
        problems = validate(m)
        if problems:
            raise InvalidState("invalid density matrix: " + ", ".join(map(str, problems)))
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @classmethod
    def from_matrix(cls, m) -> "DensityMatrix":
        m = matcore.as_matrix(m)
        return cls(matcore.n_qubits_of(m.shape[0]), m)

    def __array__(self, dtype=None, copy=None):
        return np.array(self.mat, dtype=dtype)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))


def as_density(rho) -> DensityMatrix:
    if isinstance(rho, DensityMatrix):
        return rho
    return DensityMatrix.from_matrix(rho)


@dataclass(frozen=True)
class PureInitialState:
    """Real amplitudes of ``alpha|00> + beta|11>``."""

    alpha: float
    beta: float

    def __post_init__(self):
        a, b = self.alpha, self.beta
        if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
            raise BadAmplitudes(f"amplitudes must lie in [0, 1], got alpha={a}, beta={b}")
        if abs(a * a + b * b - 1.0) > AMPLITUDE_TOL:
            raise BadAmplitudes(f"alpha^2 + beta^2 = {a * a + b * b!r}, expected 1")

    @classmethod
    def from_alpha(cls, alpha: float) -> "PureInitialState":
        if not 0.0 <= alpha <= 1.0:
            raise BadAmplitudes(f"alpha must lie in [0, 1], got {alpha}")
        return cls(alpha, math.sqrt(max(0.0, 1.0 - alpha * alpha)))


@dataclass(frozen=True)
class WernerParam:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise InvalidInput(f"Werner weight p must lie in [0, 1], got {self.p}")


def basis_state(bits: str) -> DensityMatrix:
    """Projector onto a computational basis state, e.g. ``basis_state("0101")``."""
    if not bits or set(bits) - {"0", "1"}:
        raise InvalidInput(f"not a bit string: {bits!r}")
    dim = 1 << len(bits)
    m = np.zeros((dim, dim), dtype=complex)
    k = int(bits, 2)
    m[k, k] = 1.0
    return DensityMatrix(len(bits), m)


def projector(psi) -> DensityMatrix:
    """Normalised projector onto the state vector ``psi``."""
    v = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(v)
    if norm == 0:
        raise InvalidInput("zero state vector")
    v = v / norm
    return DensityMatrix.from_matrix(np.outer(v, v.conj()))


def bell_state() -> DensityMatrix:
    return projector([1, 0, 0, 1])


def pure_state(s: PureInitialState | float) -> DensityMatrix:
    """Two-qubit projector onto ``alpha|00> + beta|11>``.

    A bare float is read as ``alpha`` with ``beta = sqrt(1 - alpha^2)``.
    """
    if not isinstance(s, PureInitialState):
        s = PureInitialState.from_alpha(float(s))
    psi = np.zeros(4, dtype=complex)
    psi[0], psi[3] = s.alpha, s.beta
    return DensityMatrix(2, np.outer(psi, psi))


def werner_state(w: WernerParam | float) -> DensityMatrix:
    """``p |Phi+><Phi+| + (1 - p) I/4`` with ``|Phi+> = (|00> + |11>)/sqrt(2)``."""
    if not isinstance(w, WernerParam):
        w = WernerParam(float(w))
    phi = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
    m = w.p * np.outer(phi, phi) + (1 - w.p) / 4 * np.eye(4)
    return DensityMatrix(2, m)


def random_density(n_qubits: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Random mixed state ``A A^dagger / Tr(A A^dagger)`` with Gaussian ``A``."""
    dim = 1 << n_qubits
    rank = dim if rank is None else rank
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = a @ a.conj().T
    return DensityMatrix(n_qubits, m / np.trace(m).real)
