"""Dense Hermitian spectra, singular values and trace norms.

Eigenvalues come from a cyclic Jacobi iteration with complex plane rotations.
The sweep visits index pairs in round-robin (tournament) order so that every
round consists of disjoint pairs; all rotations of a round are applied with a
single pair of matrix products.  Only spectra are computed, never eigenvectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    ConvergenceError,
    EmptyMatrix,
    NonHermitian,
    NonSquare,
    NotPositiveSemidefinite,
)

HERMITIAN_TOL = 1e-10
PSD_CLIP = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class Spectrum:
    """Ascending real eigenvalues, optionally run-length compressed.

    ``multiplicities[i]`` copies of ``values[i]`` are implied.  The compressed
    form lets analytic spectra with astronomically many equal eigenvalues be
    handled without materializing them.
    """

    values: np.ndarray
    tolerance: float = PSD_CLIP
    multiplicities: np.ndarray | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError("spectrum values must be one-dimensional")
        if self.multiplicities is None:
            mult = np.ones(values.shape, dtype=np.int64)
        else:
            mult = np.asarray(self.multiplicities, dtype=np.int64)
            if mult.shape != values.shape or np.any(mult < 1):
                raise ValueError("multiplicities must be positive and match values")
        order = np.argsort(values, kind="stable")
        values, mult = values[order], mult[order]
        values.setflags(write=False)
        mult.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "multiplicities", mult)

    def __len__(self) -> int:
        return int(self.multiplicities.sum())

    def expanded(self) -> np.ndarray:
        """All eigenvalues as a flat ascending array."""
        return np.repeat(self.values, self.multiplicities)

    def total(self) -> float:
        return float(np.dot(self.values, self.multiplicities))

    def max(self) -> float:
        return float(self.values[-1])

    def min(self) -> float:
        return float(self.values[0])


def _as_square(H) -> np.ndarray:
    a = np.asarray(H, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {a.shape}")
    if a.size == 0:
        raise EmptyMatrix("matrix has no entries")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def hermitian_deviation(H) -> float:
    a = np.asarray(H, dtype=complex)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def is_hermitian(H, tol: float = HERMITIAN_TOL) -> bool:
    a = np.asarray(H)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and hermitian_deviation(a) <= tol


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    # Circle method; a dummy slot pads odd n and its pairs are dropped.
    m = n + (n % 2)
    slots = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(slots[i], slots[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        p_idx = np.array([p for p, _ in pairs], dtype=np.intp)
        q_idx = np.array([q for _, q in pairs], dtype=np.intp)
        rounds.append((p_idx, q_idx))
        slots = [slots[0], slots[-1]] + slots[1:-1]
    return tuple(rounds)


def jacobi_eigenvalues(
    H,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Iterates until the off-diagonal Frobenius norm is at most ``tol`` times the
    Frobenius norm of the input.  Raises ConvergenceError after ``max_sweeps``.
    No Hermiticity check is done here; see :func:`hermitian_eigenvalues`.
    """
    a = _as_square(H).copy()
    n = a.shape[0]
    if n == 1:
        return a.real.diagonal().copy()
    # Start from the exactly Hermitian part so rounding in the input can't bias the diagonal.
    a = 0.5 * (a + a.conj().T)
    target = tol * np.linalg.norm(a)
    offdiag = ~np.eye(n, dtype=bool)
    eye = np.eye(n, dtype=complex)
    rounds = _round_robin(n)

    for _ in range(max_sweeps):
        if np.linalg.norm(a[offdiag]) <= target:
            return np.sort(a.diagonal().real)
        for p, q in rounds:
            apq = a[p, q]
            mag = np.abs(apq)
            active = mag > 0.0
            safe = np.where(active, mag, 1.0)
            phase = np.where(active, apq / safe, 1.0)
            with np.errstate(over="ignore"):
                tau = (a[q, q].real - a[p, p].real) / (2.0 * safe)
                t = np.copysign(1.0, tau) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # G = diag(1, e^{-i phase}) @ [[c, s], [-s, c]] on each (p, q) plane
            g = eye.copy()
            g[p, p] = c
            g[p, q] = s
            g[q, p] = -s * phase.conj()
            g[q, q] = c * phase.conj()
            a = g.conj().T @ a @ g
            a[p, q] = 0.0
            a[q, p] = 0.0
    if np.linalg.norm(a[offdiag]) <= target:
        return np.sort(a.diagonal().real)
    raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def hermitian_eigenvalues(H, clip_psd: bool = False) -> Spectrum:
    """Ascending eigenvalues of the Hermitian matrix ``H``.

    With ``clip_psd`` the input is asserted positive semidefinite: eigenvalues
    in ``[-1e-10, 0)`` are set to zero and anything more negative raises
    NotPositiveSemidefinite.
    """
    a = _as_square(H)
    dev = hermitian_deviation(a)
    if dev > HERMITIAN_TOL:
        raise NonHermitian(f"max |H - H^dagger| = {dev:.3e} exceeds {HERMITIAN_TOL:g}")
    values = jacobi_eigenvalues(a)
    if clip_psd:
        if values[0] < -PSD_CLIP:
            raise NotPositiveSemidefinite(
                f"eigenvalue {values[0]:.3e} is below the clipping window"
            )
        values = np.where(values < 0.0, 0.0, values)
    return Spectrum(values, PSD_CLIP)


def singular_values(M) -> np.ndarray:
    """Singular values in descending order, ``min(rows, cols)`` of them."""
    a = np.asarray(M, dtype=complex)
    if a.ndim != 2 or a.size == 0:
        raise EmptyMatrix(f"expected a nonempty 2-d matrix, got shape {a.shape}")
    gram = a @ a.conj().T if a.shape[0] <= a.shape[1] else a.conj().T @ a
    values = hermitian_eigenvalues(gram).values
    # Gram rounding scales with the squared norm, so the clip window does too.
    window = PSD_CLIP * max(1.0, abs(values[-1]))
    if values[0] < -window:
        raise NotPositiveSemidefinite(f"Gram eigenvalue {values[0]:.3e} is negative")
    return np.sqrt(np.clip(values, 0.0, None))[::-1].copy()


def trace_norm(M) -> float:
    """Sum of singular values, ``Tr sqrt(M M^dagger)``.

    Hermitian inputs use the sum of absolute eigenvalues directly, which avoids
    the square-root amplification of rounding near zero singular values.
    """
    a = np.asarray(M, dtype=complex)
    if a.ndim != 2 or a.size == 0:
        raise EmptyMatrix(f"expected a nonempty 2-d matrix, got shape {a.shape}")
    if is_hermitian(a):
        return float(np.sum(np.abs(hermitian_eigenvalues(a).values)))
    return float(np.sum(singular_values(a)))
