"""Acceptance criteria for the cavity/reservoir LQU build.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

import math
import sys

import numpy as np
import pytest

from cavlqu import channel, matcore
from cavlqu.channel import evolve, mirror_time
from cavlqu.entanglement import cavity_concurrence, concurrence, death_birth_times
from cavlqu.lqu import lqu_bipartite, lqu_bruteforce, lqu_matrix, lqu_multiqubit, skew_information
from cavlqu.states import DensityMatrix, bell_state, pure_state, random_density, validate, werner_state
from cavlqu.sweep import StateSpec, SweepConfig, cavity_reservoir_lqu, detect_merge, run_sweep

SEED = 1234
A_TWO_THIRDS = math.sqrt(2 / 3)
A_ONE_THIRD = math.sqrt(1 / 3)
A_ONE_SEVENTEENTH = math.sqrt(1 / 17)
FIGURE_STATES = {
    "pure:sqrt(2/3)": StateSpec("pure", A_TWO_THIRDS),
    "pure:sqrt(1/3)": StateSpec("pure", A_ONE_THIRD),
    "pure:sqrt(1/17)": StateSpec("pure", A_ONE_SEVENTEENTH),
    "werner:0.6": StateSpec("werner", 0.6),
}


def ac1_pure_closed_form():
    worst = 0.0
    for alpha in np.arange(1, 22) / 22:
        beta2 = 1 - alpha * alpha
        worst = max(worst, abs(lqu_bipartite(pure_state(alpha), 0) - 4 * alpha * alpha * beta2))
    assert worst < 1e-9, worst
    special = lqu_bipartite(pure_state(A_TWO_THIRDS), 0)
    assert abs(special - 8 / 9) < 1e-9, special
    return f"max |LQU - 4a^2b^2| = {worst:.1e} over 21 alphas"


def ac2_oracle_equivalence():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(50):
        rho = random_density(2, rng)
        worst = max(worst, abs(lqu_bruteforce(rho, 0, 20000) - lqu_bipartite(rho, 0)))
    assert worst < 1e-4, worst
    ident = 0.0
    for _ in range(10):
        rho = random_density(2, rng)
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        ident = max(ident, abs(skew_information(rho, n) - (1 - n @ lqu_matrix(rho) @ n)))
    assert ident < 1e-10, ident
    return f"brute-force gap {worst:.1e}, skew identity {ident:.1e}"


def _merge_check(alpha, meet_ref, sep_ref):
    spec = StateSpec("pure", alpha)
    rho = spec.initial()
    ev = detect_merge(run_sweep(SweepConfig(spec, 3.0, 300)), 1e-6, rho_cc=rho)
    assert ev.merged, ev
    assert abs(ev.meet_kt - meet_ref) <= 0.05, ev
    assert abs(ev.separate_kt - sep_ref) <= 0.05, ev
    inner = np.linspace(ev.meet_kt, ev.separate_kt, 60)[1:-1]
    gap = max(abs(np.subtract(*cavity_reservoir_lqu(rho, t))) for t in inner)
    assert gap < 1e-6, gap
    return ev, gap, rho


def ac3_merge_one_third():
    ev, gap, rho = _merge_check(A_ONE_THIRD, 0.61, 0.82)
    for t in (0.3, 1.2):
        d = abs(np.subtract(*cavity_reservoir_lqu(rho, t)))
        assert d > 1e-2, (t, d)
    return f"meet {ev.meet_kt:.4f} separate {ev.separate_kt:.4f}, max gap inside {gap:.1e}"


def ac4_merge_one_seventeenth():
    ev, gap, _ = _merge_check(A_ONE_SEVENTEENTH, 0.53, 0.88)
    return f"meet {ev.meet_kt:.4f} separate {ev.separate_kt:.4f}, max gap inside {gap:.1e}"


def ac5_four_qubit_shape():
    parts = []
    for name, spec in FIGURE_STATES.items():
        q = [r.lqu_4q for r in run_sweep(SweepConfig(spec, 20.0, 300))]
        assert q[0] < 1e-9, (name, q[0])
        assert q[-1] < 1e-3, (name, q[-1])
        assert max(q) >= max(q[0], q[-1]) + 0.05, (name, max(q))
        parts.append(f"{name} peak {max(q):.3f}")
    return ", ".join(parts)


def ac6_asymptotic_transfer():
    rng = np.random.default_rng(SEED)
    inputs = [s.initial() for s in FIGURE_STATES.values()] + [bell_state()]
    inputs += [random_density(2, rng) for _ in range(5)]
    vac = np.zeros((4, 4))
    vac[0, 0] = 1
    worst = 0.0
    for rho in inputs:
        js = evolve(rho, 50.0)
        worst = max(worst, np.max(np.abs(js.rho.mat - np.kron(vac, rho.mat))))
    assert worst < 1e-10, worst
    return f"max entry deviation {worst:.1e} over {len(inputs)} inputs"


def ac7_mirror_symmetry():
    worst_state, worst_lqu = 0.0, 0.0
    for spec in FIGURE_STATES.values():
        rho = spec.initial()
        for t in np.linspace(0.05, 5.0, 50):
            rr = channel.reservoir_state(evolve(rho, t))
            cc = channel.cavity_state(evolve(rho, mirror_time(t)))
            worst_state = max(worst_state, np.max(np.abs(rr.mat - cc.mat)))
            worst_lqu = max(worst_lqu, abs(lqu_bipartite(rr) - lqu_bipartite(cc)))
    assert worst_state < 1e-10, worst_state
    assert worst_lqu < 1e-9, worst_lqu
    return f"state {worst_state:.1e}, LQU {worst_lqu:.1e}"


def ac8_entanglement_phenomenology():
    two_thirds = pure_state(A_TWO_THIRDS)
    death, _ = death_birth_times(two_thirds, 20.0, 0.01)
    assert death is None, death
    assert min(cavity_concurrence(two_thirds, t) for t in np.linspace(0, 20, 201)) > 0

    death_b, _ = death_birth_times(pure_state(A_ONE_THIRD), 5.0, 0.01)
    assert death_b is not None

    death_c, birth_c = death_birth_times(pure_state(A_ONE_SEVENTEENTH), 5.0, 0.01)
    assert death_c is not None and birth_c is not None and birth_c - death_c > 0

    death_d, birth_d = death_birth_times(pure_state(1 / math.sqrt(5)), 5.0, 0.01)
    assert abs(death_d - birth_d) < 1e-4, (death_d, birth_d)

    death_e, _ = death_birth_times(werner_state(0.6), 5.0, 0.01)
    assert death_e is not None
    c0 = concurrence(werner_state(0.6)).value
    assert abs(c0 - 0.4) < 1e-9, c0
    return (f"(b) death {death_b:.4f}; (c) window [{death_c:.4f}, {birth_c:.4f}]; "
            f"(d) |death-birth| {abs(death_d - birth_d):.1e}; (e) death {death_e:.4f}, C(0)={c0:.12f}")


def ac9_property_suites():
    rng = np.random.default_rng(SEED)
    for dim in (2, 4, 8, 16):
        a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = a + a.conj().T
        dec = matcore.eigh(h)
        assert np.max(np.abs(dec.reconstruct() - h)) < 1e-10
        v = dec.eigenvectors
        assert np.max(np.abs(v.conj().T @ v - np.eye(dim))) < 1e-10
        rho = random_density(matcore.n_qubits_of(dim), rng).mat
        s = matcore.matrix_sqrt(rho)
        assert np.max(np.abs(s @ s - rho)) < 1e-8
    rho = random_density(4, rng).mat
    steps = matcore.partial_trace(matcore.partial_trace(rho, 4, [0, 1]), 2, [0])
    assert np.max(np.abs(steps - matcore.partial_trace(rho, 4, [0]))) < 1e-12
    assert abs(np.trace(matcore.partial_trace(rho, 4, [2])) - np.trace(rho)) < 1e-12
    for _ in range(20):
        rho = random_density(2, rng, rank=int(rng.integers(1, 5)))
        assert validate(rho) == []
        q = lqu_bipartite(rho)
        assert 0 <= q <= 1
        z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        u, _ = np.linalg.qr(z)
        uu = np.kron(np.eye(2), u)
        assert abs(lqu_bipartite(DensityMatrix(2, uu @ rho.mat @ uu.conj().T)) - q) < 1e-9
    br = lqu_multiqubit(random_density(4, rng))
    assert all(0 <= v <= 1 for v in br.values) and 0 <= br.combined <= 1
    return "eigh/sqrt/partial-trace/LQU invariants on seeded random inputs"


CRITERIA = [
    ("AC1 pure-state closed form", ac1_pure_closed_form),
    ("AC2 oracle equivalence", ac2_oracle_equivalence),
    ("AC3 merge events, alpha^2 = 1/3", ac3_merge_one_third),
    ("AC4 merge events, alpha^2 = 1/17", ac4_merge_one_seventeenth),
    ("AC5 four-qubit LQU shape", ac5_four_qubit_shape),
    ("AC6 asymptotic transfer", ac6_asymptotic_transfer),
    ("AC7 mirror symmetry", ac7_mirror_symmetry),
    ("AC8 entanglement phenomenology", ac8_entanglement_phenomenology),
    ("AC9 property suites", ac9_property_suites),
]


@pytest.mark.parametrize("name,check", CRITERIA, ids=[n.split()[0] for n, _ in CRITERIA])
def test_criterion(name, check):
    from conftest import record_acceptance

    try:
        detail = check()
    except AssertionError as exc:
        record_acceptance(name, False, repr(exc))
        raise
    record_acceptance(name, True, detail)


if __name__ == "__main__":
    failed = 0
    for name, check in CRITERIA:
        try:
            print(f"PASS  {name}  {check()}")
        except AssertionError as exc:
            failed += 1
            print(f"FAIL  {name}  {exc!r}")
    sys.exit(1 if failed else 0)
