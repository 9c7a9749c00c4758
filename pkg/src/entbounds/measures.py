"""Entanglement measures of bipartite pure states.

Entropies are in bits.  Trace distance here is ``Tr|rho - sigma|`` with no
factor of one half; :func:`trace_distance_half` gives the normalized variant.
"""

from __future__ import annotations

import math

import numpy as np

from . import linalg
from .errors import DimensionMismatch, NonHermitian, SpectrumNotNormalized
from .states import RANK_TOL, PureState, reduced_spectrum, schmidt

NEGATIVITY_CLAMP = 1e-9
SPECTRUM_SUM_TOL = 1e-9


def entropy_from_spectrum(sp: linalg.Spectrum) -> float:
    """``-sum mu log2 mu`` with ``0 log 0 = 0``; honors multiplicities."""
    mu = sp.values
    pos = mu > 0.0
    terms = np.zeros_like(mu)
    terms[pos] = -mu[pos] * np.log2(mu[pos])
    return float(np.dot(terms, sp.multiplicities))


def entropy_of_entanglement(s: PureState) -> float:
    return entropy_from_spectrum(reduced_spectrum(s))


def concurrence_sq_from_spectrum(sp: linalg.Spectrum) -> float:
    """``2 (1 - sum mu^2)`` for a normalized nonnegative spectrum."""
    if sp.min() < -sp.tolerance:
        raise SpectrumNotNormalized(f"negative eigenvalue {sp.min():.3e}")
    total = sp.total()
    if abs(total - 1.0) > SPECTRUM_SUM_TOL:
        raise SpectrumNotNormalized(f"eigenvalues sum to {total!r}, expected 1")
    purity = float(np.dot(sp.values**2, sp.multiplicities))
    return 2.0 * (1.0 - purity)


def concurrence(s: PureState) -> float:
    return math.sqrt(max(0.0, concurrence_sq_from_spectrum(reduced_spectrum(s))))


def partial_transpose_a(rho, m: int, n: int) -> np.ndarray:
    """Transpose the A indices: ``out[(i,j),(k,l)] = rho[(k,j),(i,l)]``."""
    r = np.asarray(rho, dtype=complex)
    if r.shape != (m * n, m * n):
        raise DimensionMismatch(f"expected a {m * n}x{m * n} matrix, got {r.shape}")
    dev = linalg.hermitian_deviation(r)
    if dev > linalg.HERMITIAN_TOL:
        raise NonHermitian(f"max |rho - rho^dagger| = {dev:.3e}")
    return r.reshape(m, n, m, n).transpose(2, 1, 0, 3).reshape(m * n, m * n)


def _clamp_negativity(value: float) -> float:
    return 0.0 if -NEGATIVITY_CLAMP <= value < 0.0 else value


def negativity_pt(s: PureState) -> float:
    """Negativity from the trace norm of the partially transposed projector."""
    rho = np.outer(s.amplitudes, s.amplitudes.conj())
    pt = partial_transpose_a(rho, s.dim_a, s.dim_b)
    return _clamp_negativity(0.5 * (linalg.trace_norm(pt) - 1.0))


def negativity_from_schmidt(coefficients) -> float:
    total = float(np.sum(coefficients))
    return _clamp_negativity(0.5 * (total * total - 1.0))


def negativity_schmidt(s: PureState) -> float:
    """Negativity ``((sum of Schmidt coefficients)^2 - 1) / 2``."""
    return negativity_from_schmidt(schmidt(s).coefficients)


def trace_distance(rho, sigma) -> float:
    """``Tr|rho - sigma|`` (no factor 1/2)."""
    a, b = np.asarray(rho, dtype=complex), np.asarray(sigma, dtype=complex)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} are not equal and square")
    for x in (a, b):
        if linalg.hermitian_deviation(x) > linalg.HERMITIAN_TOL:
            raise NonHermitian("trace distance needs Hermitian arguments")
    return linalg.trace_norm(a - b)


def trace_distance_half(rho, sigma) -> float:
    """The conventional ``Tr|rho - sigma| / 2``.  Not used by any bound check."""
    return 0.5 * trace_distance(rho, sigma)


def schmidt_rank(s: PureState, tol: float = RANK_TOL) -> int:
    return schmidt(s, tol).rank


def measure_summary(s: PureState) -> dict:
    """All measures of one state, as plain floats (for reports and the CLI)."""
    sd = schmidt(s)
    sp = reduced_spectrum(s)
    return {
        "dim_a": s.dim_a,
        "dim_b": s.dim_b,
        "entropy_bits": entropy_from_spectrum(sp),
        "concurrence": math.sqrt(max(0.0, concurrence_sq_from_spectrum(sp))),
        "negativity_pt": negativity_pt(s),
        "negativity_schmidt": negativity_from_schmidt(sd.coefficients),
        "schmidt_coefficients": [float(c) for c in sd.coefficients],
        "schmidt_rank": sd.rank,
        "reduced_spectrum": [float(v) for v in sp.values],
    }

