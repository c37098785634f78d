import numpy as np
import pytest

from cavlqu import matcore


def random_unitary(dim, rng):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(dim, rng):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return a + a.conj().T


def ptrace_loops(rho, n, keep):
    """Element-by-element partial trace, kept independent of matcore."""
    traced = [q for q in range(n) if q not in keep]
    dk = 2 ** len(keep)
    out = np.zeros((dk, dk), dtype=complex)

    def index(kbits, tbits):
        bits = [0] * n
        for q, b in zip(keep, kbits):
            bits[q] = b
        for q, b in zip(traced, tbits):
            bits[q] = b
        return int("".join(map(str, bits)), 2)

    def bits_of(x, width):
        return [int(c) for c in format(x, f"0{width}b")] if width else []

    for i in range(dk):
        for j in range(dk):
            for k in range(2 ** len(traced)):
                tb = bits_of(k, len(traced))
                out[i, j] += rho[index(bits_of(i, len(keep)), tb), index(bits_of(j, len(keep)), tb)]
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE = []


def record_acceptance(name, ok, detail=""):
    _ACCEPTANCE.append((name, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
