"""Bipartite pure states, Schmidt data and the standard state families.

Amplitude ``k = i * dim_b + j`` belongs to the product basis vector
``|i>_A |j>_B`` (row-major).  Reshaping the amplitude vector to
``(dim_a, dim_b)`` gives the coefficient matrix, whose Gram matrix is the
reduced density matrix of subsystem A.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import linalg
from .errors import (
    DegenerateSuperposition,
    DimensionMismatch,
    DimensionTooLarge,
    DuplicateIndex,
    IndexOutOfRange,
    InvalidEpsilon,
    InvalidState,
)

NORM_TOL = 1e-9
RANK_TOL = 1e-10
DEGENERATE_NORM_SQ = 1e-12
DENSE_AMPLITUDE_CAP = 2**26
FILE_NORM_TOL = 1e-6


@dataclass(frozen=True)
class PureState:
    """Normalized state vector on a ``dim_a x dim_b`` product space.

    The amplitudes are normalized on construction and stored read-only.
    """

    dim_a: int
    dim_b: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise InvalidState(f"dimensions must be positive, got {self.dim_a}x{self.dim_b}")
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.dim_a * self.dim_b:
            raise InvalidState(
                f"expected {self.dim_a * self.dim_b} amplitudes, got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise InvalidState("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise InvalidState("the zero vector is not a state")
        amps = amps / norm
        amps.setflags(write=False)
        object.__setattr__(self, "dim_a", int(self.dim_a))
        object.__setattr__(self, "dim_b", int(self.dim_b))
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dim_a, self.dim_b)

    @classmethod
    def basis(cls, dim_a: int, dim_b: int, i: int, j: int) -> "PureState":
        amps = np.zeros(dim_a * dim_b, dtype=complex)
        amps[i * dim_b + j] = 1.0
        return cls(dim_a, dim_b, amps)

    @classmethod
    def from_matrix(cls, coefficients) -> "PureState":
        c = np.asarray(coefficients, dtype=complex)
        if c.ndim != 2:
            raise InvalidState("coefficient matrix must be 2-d")
        return cls(c.shape[0], c.shape[1], c.reshape(-1))


@dataclass(frozen=True)
class SchmidtData:
    coefficients: np.ndarray
    rank: int
    rank_tolerance: float = RANK_TOL


@dataclass(frozen=True)
class SuperpositionSpec:
    """Amplitudes of ``alpha * first + beta * second``."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        alpha, beta = complex(self.alpha), complex(self.beta)
        if not (math.isfinite(abs(alpha)) and math.isfinite(abs(beta))):
            raise ValueError("amplitudes must be finite")
        total = abs(alpha) ** 2 + abs(beta) ** 2
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"|alpha|^2 + |beta|^2 = {total!r}, expected 1")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)


def _same_dims(s1: PureState, s2: PureState) -> None:
    if s1.dims != s2.dims:
        raise DimensionMismatch(f"dimensions differ: {s1.dims} vs {s2.dims}")


def coefficient_matrix(s: PureState) -> np.ndarray:
    return s.amplitudes.reshape(s.dim_a, s.dim_b)


def reduced_density_a(s: PureState) -> np.ndarray:
    phi = coefficient_matrix(s)
    return phi @ phi.conj().T


def reduced_spectrum(s: PureState) -> linalg.Spectrum:
    """Eigenvalues of the reduced density matrix of A (PSD-clipped)."""
    return linalg.hermitian_eigenvalues(reduced_density_a(s), clip_psd=True)


def schmidt(s: PureState, rank_tolerance: float = RANK_TOL) -> SchmidtData:
    coeffs = linalg.singular_values(coefficient_matrix(s))
    coeffs.setflags(write=False)
    rank = int(np.count_nonzero(coeffs > rank_tolerance))
    return SchmidtData(coeffs, rank, rank_tolerance)


def inner(s1: PureState, s2: PureState) -> complex:
    _same_dims(s1, s2)
    return complex(np.vdot(s1.amplitudes, s2.amplitudes))


def fidelity(s1: PureState, s2: PureState) -> float:
    """Overlap ``|<s1|s2>|^2``."""
    return abs(inner(s1, s2)) ** 2


def superpose(
    spec: SuperpositionSpec, phi: PureState, psi: PureState
) -> tuple[float, PureState]:
    """Return ``(||alpha*phi + beta*psi||^2, normalized superposition)``.

    ``alpha`` always multiplies the first state argument.
    """
    _same_dims(phi, psi)
    vec = spec.alpha * phi.amplitudes + spec.beta * psi.amplitudes
    norm_sq = float(np.vdot(vec, vec).real)
    if norm_sq < DEGENERATE_NORM_SQ:
        raise DegenerateSuperposition(f"superposition norm^2 = {norm_sq:.3e}")
    return norm_sq, PureState(phi.dim_a, phi.dim_b, vec)


def is_biorthogonal(phi: PureState, psi: PureState, tol: float = RANK_TOL) -> bool:
    """True when both ``Phi Psi^dagger`` and ``Psi Phi^dagger`` vanish entrywise."""
    _same_dims(phi, psi)
    a, b = coefficient_matrix(phi), coefficient_matrix(psi)
    return bool(
        np.max(np.abs(a @ b.conj().T)) <= tol and np.max(np.abs(b @ a.conj().T)) <= tol
    )


def a_side_orthogonal(phi: PureState, psi: PureState, tol: float = RANK_TOL) -> bool:
    """True when ``Phi^dagger Psi`` vanishes; reported for information only."""
    _same_dims(phi, psi)
    a, b = coefficient_matrix(phi), coefficient_matrix(psi)
    return bool(np.max(np.abs(a.conj().T @ b)) <= tol)


def _check_epsilon(epsilon: float, d: int) -> None:
    if not (0.0 <= epsilon <= 1.0):
        raise InvalidEpsilon(f"epsilon must lie in [0, 1], got {epsilon!r}")
    if d < 1:
        raise InvalidEpsilon(f"d must be at least 1, got {d!r}")


def epsilon_family(epsilon: float, d: int) -> tuple[PureState, PureState]:
    """The product state ``|00>`` and its high-fidelity entangled perturbation.

    The second state is ``sqrt(1-eps)|00> + sqrt(eps/d) (|11> + ... + |dd>)``
    on a ``(d+1) x (d+1)`` space.
    """
    _check_epsilon(epsilon, d)
    dim = d + 1
    if dim * dim > DENSE_AMPLITUDE_CAP:
        raise DimensionTooLarge(
            f"{dim}x{dim} state exceeds the dense cap of {DENSE_AMPLITUDE_CAP} amplitudes;"
            " use epsilon_family_spectrum"
        )
    phi = PureState.basis(dim, dim, 0, 0)
    amps = np.zeros(dim * dim, dtype=complex)
    amps[0] = math.sqrt(1.0 - epsilon)
    diag = np.arange(1, dim) * (dim + 1)
    amps[diag] = math.sqrt(epsilon / d)
    return phi, PureState(dim, dim, amps)


def epsilon_family_spectrum(epsilon: float, d: int) -> linalg.Spectrum:
    """Reduced spectrum ``{1 - eps, eps/d (d times)}`` of the perturbed state.

    No state vector is built, so ``d`` may be arbitrarily large.
    """
    _check_epsilon(epsilon, d)
    return linalg.Spectrum(
        np.array([1.0 - epsilon, epsilon / d]),
        multiplicities=np.array([1, d], dtype=np.int64),
    )


def maximally_entangled(
    dim_a: int, dim_b: int, a_indices, b_indices
) -> PureState:
    """Uniform superposition ``sum_t |a_t b_t> / sqrt(k)``."""
    a_idx, b_idx = list(a_indices), list(b_indices)
    if len(a_idx) != len(b_idx) or not a_idx:
        raise ValueError("index lists must be nonempty and of equal length")
    for idx, dim in ((a_idx, dim_a), (b_idx, dim_b)):
        if any(i < 0 or i >= dim for i in idx):
            raise IndexOutOfRange(f"indices {idx} out of range for dimension {dim}")
        if len(set(idx)) != len(idx):
            raise DuplicateIndex(f"repeated index in {idx}")
    amps = np.zeros(dim_a * dim_b, dtype=complex)
    for i, j in zip(a_idx, b_idx):
        amps[i * dim_b + j] = 1.0
    return PureState(dim_a, dim_b, amps)


def bell(dim_a: int = 2, dim_b: int = 2, offset: int = 0) -> PureState:
    return maximally_entangled(dim_a, dim_b, [offset, offset + 1], [offset, offset + 1])


# -- state files -------------------------------------------------------------


def state_to_dict(s: PureState) -> dict:
    return {
        "dim_a": s.dim_a,
        "dim_b": s.dim_b,
        "amplitudes": [[float(z.real), float(z.imag)] for z in s.amplitudes],
    }


def state_from_dict(doc: dict, renormalize: bool = False) -> PureState:
    """Build a state from the file schema, enforcing the norm check.

    Unless ``renormalize`` is set, a vector whose norm is off from 1 by more
    than 1e-6 is rejected rather than silently rescaled.
    """
    try:
        dim_a, dim_b = int(doc["dim_a"]), int(doc["dim_b"])
        pairs = doc["amplitudes"]
        amps = np.array([complex(float(re), float(im)) for re, im in pairs])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidState(f"malformed state document: {exc}") from exc
    if amps.size != dim_a * dim_b:
        raise InvalidState(f"expected {dim_a * dim_b} amplitude pairs, got {amps.size}")
    norm = float(np.linalg.norm(amps))
    if not renormalize and abs(norm - 1.0) > FILE_NORM_TOL:
        raise InvalidState(f"state norm {norm!r} deviates from 1 (pass renormalize to rescale)")
    return PureState(dim_a, dim_b, amps)


def load_state(path, renormalize: bool = False) -> PureState:
    with open(path) as fh:
        return state_from_dict(json.load(fh), renormalize=renormalize)


def save_state(s: PureState, path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(s), indent=1) + "\n")
