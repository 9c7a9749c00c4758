"""Seeded random instances for the verification campaigns."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DimOutOfRange, FloorOutOfRange, SupportTooLarge
from ..states import PureState, SuperpositionSpec
from .rng import CounterRng

MIN_DIM = 2
MAX_DIM = 16


def haar_state(m: int, n: int, seed: int) -> PureState:
    """Haar-uniform pure state: normalized i.i.d. complex Gaussian amplitudes."""
    if not (MIN_DIM <= m <= MAX_DIM and MIN_DIM <= n <= MAX_DIM):
        raise DimOutOfRange(f"dims {m}x{n} outside [{MIN_DIM}, {MAX_DIM}]")
    return PureState(m, n, CounterRng(seed).complex_normal(m * n))


def random_biorthogonal_pair(
    m: int, n: int, k1: int, k2: int, seed: int
) -> tuple[PureState, PureState]:
    """Two states supported on disjoint ``k x k`` blocks.

    The row sets and the column sets of the two blocks are disjoint, so both
    ``Phi Psi^dagger`` and ``Phi^dagger Psi`` vanish identically.  Block
    placement is a seeded random choice of rows and columns.
    """
    if k1 < 1 or k2 < 1 or k1 + k2 > min(m, n):
        raise SupportTooLarge(f"blocks {k1} + {k2} do not fit disjointly in {m}x{n}")
    rng = CounterRng(seed)
    rows = rng.permutation(m)
    cols = rng.permutation(n)

    def block_state(r: np.ndarray, c: np.ndarray) -> PureState:
        coeffs = np.zeros((m, n), dtype=complex)
        coeffs[np.ix_(r, c)] = rng.complex_normal(r.size * c.size).reshape(r.size, c.size)
        return PureState.from_matrix(coeffs)

    phi = block_state(rows[:k1], cols[:k1])
    psi = block_state(rows[k1 : k1 + k2], cols[k1 : k1 + k2])
    return phi, psi


def random_amplitudes(seed: int, amp_floor: float = 0.05) -> SuperpositionSpec:
    """``alpha = cos(theta)``, ``beta = sin(theta) e^{i phi}`` with both moduli
    at least ``amp_floor``."""
    if not (1e-6 <= amp_floor <= 0.7):
        raise FloorOutOfRange(f"amp_floor must lie in [1e-6, 0.7], got {amp_floor!r}")
    rng = CounterRng(seed)
    theta = rng.uniform_range(math.asin(amp_floor), math.acos(amp_floor))
    phase = rng.uniform_range(0.0, 2.0 * math.pi)
    return SuperpositionSpec(math.cos(theta), math.sin(theta) * complex(math.cos(phase), math.sin(phase)))


def random_hermitian(size: int, seed: int, psd: bool = False) -> np.ndarray:
    """GUE-like Hermitian matrix, or a Wishart (Gram) matrix when ``psd``."""
    x = CounterRng(seed).complex_normal(size * size).reshape(size, size)
    if psd:
        return x @ x.conj().T
    return 0.5 * (x + x.conj().T)
