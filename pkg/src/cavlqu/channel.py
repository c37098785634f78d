"""Excitation transfer from two cavities into their own vacuum reservoirs.

Each cavity qubit ``c`` is paired with a reservoir qubit ``r`` that starts in
``|0>``. After a dimensionless time ``kappa_t`` the pair has evolved as

    |0>_c |0>_r  ->  |0>_c |0>_r
    |1>_c |0>_r  ->  xi |1>_c |0>_r + chi |0>_c |1>_r

with ``xi = exp(-kappa_t / 2)`` and ``chi = sqrt(1 - exp(-kappa_t))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from . import matcore
from .errors import BadDimension, BadIndex, InvalidInput
from .states import DensityMatrix, as_density

LABELS = ("c1", "c2", "r1", "r2")
KT_INFINITY = 50.0


@dataclass(frozen=True)
class AmplitudeChannel:
    kappa_t: float

    def __post_init__(self):
        if not (self.kappa_t >= 0.0 and math.isfinite(self.kappa_t)):
            raise InvalidInput(f"kappa_t must be finite and >= 0, got {self.kappa_t}")

    @property
    def xi(self) -> float:
        return math.exp(-0.5 * self.kappa_t)

    @property
    def chi(self) -> float:
        # expm1 keeps chi accurate for small kappa_t
        return math.sqrt(-math.expm1(-self.kappa_t))


def mirror_time(kappa_t: float) -> float:
    """Time at which the roles of ``xi^2`` and ``chi^2`` are exchanged.

    Solves ``exp(-t') = 1 - exp(-t)``; diverges as ``kappa_t -> 0``.
    """
    if kappa_t <= 0:
        return math.inf
    return -math.log(-math.expm1(-kappa_t))


def isometry(ch: AmplitudeChannel | float) -> np.ndarray:
    """4x2 map from a cavity qubit to the (cavity, reservoir) pair."""
    if not isinstance(ch, AmplitudeChannel):
        ch = AmplitudeChannel(float(ch))
    v = np.zeros((4, 2), dtype=complex)
    v[0, 0] = 1.0  # |0> -> |00>
    v[2, 1] = ch.xi  # |1> -> xi|10> + chi|01>
    v[1, 1] = ch.chi
    return v


@lru_cache(maxsize=None)
def _pair_to_label_order() -> np.ndarray:
    # kron(V, V) yields qubits ordered (c1, r1, c2, r2); relabel to (c1, c2, r1, r2)
    p = matcore.permutation_matrix([0, 2, 1, 3])
    p.setflags(write=False)
    return p


@dataclass(frozen=True)
class JointState:
    """Four-qubit state with qubits ordered ``c1, c2, r1, r2``."""

    rho: DensityMatrix
    kappa_t: float
    labels: tuple[str, ...] = LABELS


def evolution_operator(kappa_t: float) -> np.ndarray:
    """16x4 isometry taking the cavity pair to the ordered four-qubit space."""
    v = isometry(kappa_t)
    return _pair_to_label_order() @ np.kron(v, v)


def evolve(rho_cc, kappa_t: float) -> JointState:
    """Evolve a two-cavity state with both reservoirs initially in vacuum."""
    rho_cc = as_density(rho_cc)
    if rho_cc.n_qubits != 2:
        raise BadDimension(f"cavity state must be 2 qubits, got {rho_cc.n_qubits}")
    w = evolution_operator(kappa_t)
    m = w @ rho_cc.mat @ w.conj().T
    return JointState(DensityMatrix(4, m), float(kappa_t))


def reduced(js: JointState, keep: Iterable[str]) -> DensityMatrix:
    """Marginal of the joint state on the named qubits, in the given order."""
    keep = list(keep)
    try:
        idx = [js.labels.index(k) for k in keep]
    except ValueError as exc:
        raise BadIndex(f"unknown qubit label in {keep}; expected {js.labels}") from exc
    return DensityMatrix(len(idx), matcore.partial_trace(js.rho.mat, 4, idx))


def cavity_state(js: JointState) -> DensityMatrix:
    return reduced(js, ("c1", "c2"))


def reservoir_state(js: JointState) -> DensityMatrix:
    return reduced(js, ("r1", "r2"))
