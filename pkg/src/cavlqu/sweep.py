"""kappa_t sweeps, cavity/reservoir merge detection and CSV output."""

from __future__ import annotations

import csv
import math
import re
from dataclasses import astuple, dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import channel, entanglement, lqu
from .errors import CavlquError, InvalidInput, OracleMismatch
from .states import DensityMatrix, pure_state, werner_state

CSV_HEADER = ("kappa_t", "lqu_cc", "lqu_rr", "lqu_4q", "conc_cc", "conc_rr")
ORACLE_EVERY = 10
ORACLE_TOL = 1e-4


@dataclass(frozen=True)
class StateSpec:
    """Initial cavity state: ``pure`` (parameter alpha) or ``werner`` (parameter p)."""

    kind: str
    value: float

    def __post_init__(self):
        if self.kind not in ("pure", "werner"):
            raise InvalidInput(f"unknown state kind {self.kind!r}")

    def initial(self) -> DensityMatrix:
        if self.kind == "pure":
            return pure_state(self.value)
        return werner_state(self.value)

    def __str__(self) -> str:
        return f"{self.kind}:{self.value:.12g}"


_SQRT = re.compile(r"^sqrt\((.+)\)$")


def _parse_number(text: str) -> float:
    text = text.strip()
    m = _SQRT.match(text)
    if m:
        return math.sqrt(_parse_number(m.group(1)))
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"cannot parse number {text!r}") from exc


def parse_state(text: str) -> StateSpec:
    """Parse ``pure:ALPHA`` or ``werner:P``.

    Numbers may be decimals, fractions or ``sqrt(...)`` of either, so
    ``pure:sqrt(1/3)`` is accepted.
    """
    kind, sep, rest = text.partition(":")
    if not sep:
        raise InvalidInput(f"state must look like pure:ALPHA or werner:P, got {text!r}")
    spec = StateSpec(kind.strip().lower(), _parse_number(rest))
    spec.initial()  # validates the parameter range
    return spec


@dataclass(frozen=True)
class SweepConfig:
    state: StateSpec
    kt_max: float = 3.0
    steps: int = 300
    oracle_check: bool = False

    def __post_init__(self):
        if not self.kt_max > 0:
            raise InvalidInput(f"kt_max must be positive, got {self.kt_max}")
        if self.steps < 2:
            raise InvalidInput(f"steps must be >= 2, got {self.steps}")

    def grid(self) -> np.ndarray:
        return np.linspace(0.0, self.kt_max, self.steps)


@dataclass(frozen=True)
class SweepRecord:
    kappa_t: float
    lqu_cc: float
    lqu_rr: float
    lqu_4q: float
    conc_cc: float
    conc_rr: float


class SweepFailure(CavlquError):
    """Wraps a numerical failure with the kappa_t at which it happened."""

    def __init__(self, kappa_t: float, cause: Exception):
        super().__init__(f"sweep failed at kappa_t={kappa_t:.12g}: {cause}")
        self.kappa_t = kappa_t
        self.cause = cause


def cavity_reservoir_lqu(rho_cc, kappa_t: float) -> tuple[float, float]:
    js = channel.evolve(rho_cc, kappa_t)
    return (
        lqu.lqu_bipartite(channel.cavity_state(js), 0),
        lqu.lqu_bipartite(channel.reservoir_state(js), 0),
    )


def evaluate(rho_cc, kappa_t: float) -> SweepRecord:
    js = channel.evolve(rho_cc, kappa_t)
    cc, rr = channel.cavity_state(js), channel.reservoir_state(js)
    return SweepRecord(
        kappa_t=float(kappa_t),
        lqu_cc=lqu.lqu_bipartite(cc, 0),
        lqu_rr=lqu.lqu_bipartite(rr, 0),
        lqu_4q=lqu.lqu_multiqubit(js.rho, channel.LABELS).combined,
        conc_cc=entanglement.concurrence(cc).value,
        conc_rr=entanglement.concurrence(rr).value,
    )


def run_sweep(cfg: SweepConfig) -> list[SweepRecord]:
    """Evaluate every measure on a uniform ``kappa_t`` grid over ``[0, kt_max]``.

    With ``cfg.oracle_check`` every 10th cavity LQU is recomputed by
    brute-force minimisation and must agree to 1e-4.
    """
    rho_cc = cfg.state.initial()
    records = []
    for i, t in enumerate(cfg.grid()):
        try:
            rec = evaluate(rho_cc, t)
            if cfg.oracle_check and i % ORACLE_EVERY == 0:
                cc = channel.cavity_state(channel.evolve(rho_cc, t))
                brute = lqu.lqu_bruteforce(cc, 0)
                if abs(brute - rec.lqu_cc) > ORACLE_TOL:
                    raise OracleMismatch(
                        f"closed form {rec.lqu_cc:.9f} vs brute force {brute:.9f}"
                    )
        except CavlquError as exc:
            raise SweepFailure(float(t), exc) from exc
        records.append(rec)
    return records


@dataclass(frozen=True)
class MergeEvents:
    """Where the cavity and reservoir LQU curves touch.

    ``max_diff`` is the largest ``|lqu_cc - lqu_rr|`` seen on grid points in
    ``[meet_kt, separate_kt]``. ``degenerate`` marks inputs whose two curves
    are both zero everywhere.
    """

    meet_kt: Optional[float]
    separate_kt: Optional[float]
    merged: bool
    max_diff: Optional[float] = None
    degenerate: bool = False


def _bisect(pred: Callable[[float], bool], lo: float, hi: float, tol: float) -> float:
    # pred(lo) False, pred(hi) True
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def detect_merge(
    records: Sequence[SweepRecord],
    equal_tol: float = 1e-6,
    rho_cc=None,
    refine_tol: float = 1e-4,
) -> MergeEvents:
    """Locate the window where ``|lqu_cc - lqu_rr| < equal_tol``.

    Contact is taken from grid points inside the tolerance and from sign
    changes of ``lqu_cc - lqu_rr`` between neighbouring points. When the
    initial cavity state ``rho_cc`` is supplied, the window edges are refined
    by bisection on freshly evolved states (the edges are kinks, so
    interpolating grid values would blur them); otherwise grid values are
    used.
    """
    if not records:
        raise InvalidInput("no records")
    t = np.array([r.kappa_t for r in records])
    d = np.array([r.lqu_cc - r.lqu_rr for r in records])
    both_zero = all(r.lqu_cc < equal_tol and r.lqu_rr < equal_tol for r in records)
    if both_zero:
        return MergeEvents(None, None, merged=True, max_diff=float(np.max(np.abs(d))), degenerate=True)

    def diff(kt):
        cc, rr = cavity_reservoir_lqu(rho_cc, kt)
        return cc - rr

    inside = np.abs(d) < equal_tol
    # (start, end) intervals of contact, in kappa_t
    contacts = []
    for i in range(len(t)):
        if inside[i]:
            contacts.append((t[i], t[i]))
        elif i + 1 < len(t) and not inside[i + 1] and d[i] * d[i + 1] < 0:
            if rho_cc is not None:
                sign = np.sign(d[i])
                x = _bisect(lambda k: np.sign(diff(k)) != sign, t[i], t[i + 1], refine_tol)
            else:
                x = t[i] - d[i] * (t[i + 1] - t[i]) / (d[i + 1] - d[i])
            contacts.append((x, x))
    if not contacts:
        return MergeEvents(None, None, merged=False)

    meet, separate = contacts[0][0], contacts[-1][1]
    first = int(np.argmax(inside)) if inside.any() else None
    last = len(t) - 1 - int(np.argmax(inside[::-1])) if inside.any() else None
    if rho_cc is not None and first is not None:
        near = lambda k: abs(diff(k)) < equal_tol  # noqa: E731
        if first > 0 and meet == t[first]:
            meet = _bisect(near, t[first - 1], t[first], refine_tol)
        if last < len(t) - 1 and separate == t[last]:
            separate = _bisect(lambda k: not near(k), t[last], t[last + 1], refine_tol)

    spacing = float(t[1] - t[0]) if len(t) > 1 else 0.0
    window = (t >= meet - 1e-12) & (t <= separate + 1e-12)
    max_diff = float(np.max(np.abs(d[window]))) if window.any() else 0.0
    return MergeEvents(
        float(meet), float(separate), merged=bool(separate - meet > spacing), max_diff=max_diff
    )


def write_rows(records: Sequence[SweepRecord], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([f"{v:.12g}" for v in astuple(r)])


def write_csv(records: Sequence[SweepRecord], destination) -> None:
    """Write records with the fixed header, 12 significant digits, ``\\n`` endings."""
    path = Path(destination)
    try:
        with path.open("w", encoding="utf-8", newline="") as fh:
            write_rows(records, fh)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror or exc}") from exc


def read_csv(source) -> list[SweepRecord]:
    path = Path(source)
    with path.open(encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise InvalidInput(f"{path}: unexpected header {rows[0] if rows else None}")
    n = len(fields(SweepRecord))
    return [SweepRecord(*map(float, row[:n])) for row in rows[1:]]
