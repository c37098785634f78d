"""Wootters concurrence and sudden death / birth times of the cavity pair."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import channel, matcore
from .errors import BadDimension, InvalidInput
from .states import as_density

ZERO_CONCURRENCE = 1e-12
BISECTION_TOL = 1e-6

_YY = np.kron(matcore.SIGMA_Y, matcore.SIGMA_Y)


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    pre_max: float


def concurrence(rho) -> ConcurrenceResult:
    """Concurrence of a two-qubit state.

    The square roots of the eigenvalues of ``rho rho~`` are obtained as the
    spectrum of the Hermitian matrix ``sqrt(sqrt(rho) rho~ sqrt(rho))``, where
    ``rho~ = (Y x Y) rho* (Y x Y)`` and the conjugate is taken in the
    computational basis.
    """
    rho = as_density(rho)
    if rho.n_qubits != 2:
        raise BadDimension(f"concurrence needs a 2-qubit state, got {rho.n_qubits}")
    flipped = _YY @ rho.mat.conj() @ _YY
    sq = matcore.matrix_sqrt(rho.mat)
    r = matcore.matrix_sqrt(sq @ flipped @ sq)
    s = matcore.eigh(r).eigenvalues[::-1]
    pre = float(s[0] - s[1] - s[2] - s[3])
    return ConcurrenceResult(max(0.0, pre), pre)


def cavity_concurrence(rho_cc, kappa_t: float) -> float:
    return concurrence(channel.cavity_state(channel.evolve(rho_cc, kappa_t))).value


def reservoir_concurrence(rho_cc, kappa_t: float) -> float:
    return concurrence(channel.reservoir_state(channel.evolve(rho_cc, kappa_t))).value


def _bisect(pred: Callable[[float], bool], lo: float, hi: float, tol: float) -> float:
    # pred(lo) is False and pred(hi) is True; returns a point within tol of the switch
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _first_switch(pred: Callable[[float], bool], grid: np.ndarray) -> Optional[float]:
    prev = grid[0]
    if pred(prev):
        return None
    for t in grid[1:]:
        if pred(t):
            return _bisect(pred, prev, t, BISECTION_TOL)
        prev = t
    return None


def death_birth_times(
    rho_cc, kt_max: float = 5.0, resolution: float = 0.01
) -> tuple[Optional[float], Optional[float]]:
    """Cavity sudden-death time and reservoir sudden-birth time.

    The grid ``0, resolution, ..., kt_max`` is scanned for the first point where
    the cavity concurrence vanishes (or the reservoir concurrence appears), and
    that bracket is refined by bisection to ``1e-6`` in ``kappa_t``. ``None``
    means no such crossing inside the range. A cavity state that starts
    unentangled has no death time, and likewise for reservoirs already
    entangled at ``kappa_t = 0``.
    """
    if kt_max <= 0 or resolution <= 0:
        raise InvalidInput("kt_max and resolution must be positive")
    rho_cc = as_density(rho_cc)
    n = max(2, int(np.ceil(kt_max / resolution)) + 1)
    grid = np.linspace(0.0, kt_max, n)
    dead = lambda t: cavity_concurrence(rho_cc, t) <= ZERO_CONCURRENCE  # noqa: E731
    born = lambda t: reservoir_concurrence(rho_cc, t) > ZERO_CONCURRENCE  # noqa: E731
    return _first_switch(dead, grid), _first_switch(born, grid)
