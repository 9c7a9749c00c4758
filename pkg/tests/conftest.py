import numpy as np
import pytest

from entbounds.states import PureState


@pytest.fixture
def nprng():
    return np.random.default_rng(20240611)


def random_matrix(rng, rows, cols):
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def random_hermitian(rng, n):
    x = random_matrix(rng, n, n)
    return x + x.conj().T


def random_unitary(rng, n):
    q, r = np.linalg.qr(random_matrix(rng, n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng, m, n):
    return PureState(m, n, random_matrix(rng, 1, m * n).ravel())


def brute_negativity(amplitudes, m, n):
    """Negativity from numpy's eigvalsh of the explicitly partial-transposed projector."""
    rho = np.outer(amplitudes, np.conj(amplitudes))
    pt = np.empty_like(rho)
    for i in range(m):
        for j in range(n):
            for k in range(m):
                for l in range(n):
                    pt[i * n + j, k * n + l] = rho[k * n + j, i * n + l]
    return 0.5 * (np.sum(np.abs(np.linalg.eigvalsh(pt))) - 1.0)


def partial_trace_b(amplitudes, m, n):
    """Reduced density matrix of A by explicit summation over B."""
    rho = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for k in range(m):
            rho[i, k] = sum(amplitudes[i * n + j] * np.conj(amplitudes[k * n + j]) for j in range(n))
    return rho


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, title in mod.CRITERIA.items():
        parts = mod.RESULTS.get(num)
        if not parts:
            terminalreporter.write_line(f"criterion {num} ({title}): NOT RUN")
            continue
        status = "PASS" if all(ok for _, ok, _ in parts) else "FAIL"
        detail = "; ".join(f"{'ok' if ok else 'FAILED'} {part}: {d}" for part, ok, d in parts)
        terminalreporter.write_line(f"criterion {num} ({title}): {status} | {detail}")
