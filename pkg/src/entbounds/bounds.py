"""Evaluators for the concurrence continuity bound and the negativity bounds.

Every checker returns a :class:`BoundReport`.  Inequalities are judged with an
absolute tolerance of 1e-9.  In the corrected negativity terms the "largest
eigenvalue of the other state" is always the top eigenvalue of that state's
own reduced density matrix (not rescaled by its amplitude).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    AmplitudeTooSmall,
    DegenerateSuperposition,
    DimensionMismatch,
    NonHermitian,
    NotBiorthogonal,
)
from .measures import (
    concurrence_sq_from_spectrum,
    negativity_from_schmidt,
    trace_distance,
)
from .states import (
    DEGENERATE_NORM_SQ,
    RANK_TOL,
    PureState,
    SuperpositionSpec,
    a_side_orthogonal,
    coefficient_matrix,
    is_biorthogonal,
    reduced_density_a,
    reduced_spectrum,
    schmidt,
    superpose,
)

CHECK_TOL = 1e-9
AMP_FLOOR = 1e-6
BIORTHOGONAL_TOL = 1e-10


@dataclass(frozen=True)
class BoundReport:
    value: float
    upper: float
    lower: float | None = None
    terms: dict = field(default_factory=dict)

    @property
    def slack_upper(self) -> float:
        return self.upper - self.value

    @property
    def slack_lower(self) -> float | None:
        return None if self.lower is None else self.value - self.lower

    @property
    def holds(self) -> bool:
        ok_upper = self.value <= self.upper + CHECK_TOL
        ok_lower = self.lower is None or self.lower - CHECK_TOL <= self.value
        return bool(ok_upper and ok_lower)

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "value": self.value,
            "upper": self.upper,
            "slack_lower": self.slack_lower,
            "slack_upper": self.slack_upper,
            "holds": self.holds,
            "terms": dict(self.terms),
        }


def _same_dims(s1: PureState, s2: PureState) -> None:
    if s1.dims != s2.dims:
        raise DimensionMismatch(f"dimensions differ: {s1.dims} vs {s2.dims}")


def _check_amplitudes(spec: SuperpositionSpec) -> tuple[float, float]:
    a, b = abs(spec.alpha), abs(spec.beta)
    if min(a, b) < AMP_FLOOR:
        raise AmplitudeTooSmall(
            f"min(|alpha|, |beta|) = {min(a, b):.3e} is below {AMP_FLOOR:g}; the bound diverges"
        )
    return a, b


# -- concurrence continuity ---------------------------------------------------


def sorted_eigenvalue_l1_check(rho, sigma) -> BoundReport:
    """``sum_i |r_i - s_i| <= Tr|rho - sigma|`` with both spectra sorted descending."""
    a, b = np.asarray(rho), np.asarray(sigma)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    r = linalg.hermitian_eigenvalues(a).values[::-1]
    s = linalg.hermitian_eigenvalues(b).values[::-1]
    return BoundReport(
        value=float(np.sum(np.abs(r - s))),
        upper=trace_distance(a, b),
    )


def fannes_concurrence_check(s1: PureState, s2: PureState) -> BoundReport:
    """``|C^2(s1) - C^2(s2)| <= 4 Tr|rho_A - sigma_A|``."""
    _same_dims(s1, s2)
    rho, sigma = reduced_density_a(s1), reduced_density_a(s2)
    c1 = concurrence_sq_from_spectrum(reduced_spectrum(s1))
    c2 = concurrence_sq_from_spectrum(reduced_spectrum(s2))
    t = trace_distance(rho, sigma)
    l1 = sorted_eigenvalue_l1_check(rho, sigma)
    return BoundReport(
        value=abs(c1 - c2),
        upper=4.0 * t,
        terms={
            "concurrence_sq_first": c1,
            "concurrence_sq_second": c2,
            "trace_distance": t,
            "sorted_eigen_l1": l1.value,
            "sorted_eigen_l1_holds": l1.holds,
        },
    )


# -- negativity of superpositions ----------------------------------------------


def n_tilde(
    n_base: float, mu_max_other: float, amp_num: float, amp_den: float, r: int
) -> float:
    """Corrected negativity ``N + r a sqrt(mu (2N+1)) / b + r^2 a^2 mu / (2 b^2)``.

    ``amp_num`` is the modulus of the other state's amplitude and ``amp_den``
    the modulus of this state's amplitude.  ``r`` is the multiplier (the
    Schmidt-term count for biorthogonal pairs, the maximal rank otherwise).
    """
    if amp_den < AMP_FLOOR:
        raise AmplitudeTooSmall(f"amplitude {amp_den:.3e} is below {AMP_FLOOR:g}")
    if not (-CHECK_TOL <= mu_max_other <= 1.0 + CHECK_TOL):
        raise ValueError(f"mu_max_other must lie in [0, 1], got {mu_max_other!r}")
    if n_base < 0.0:
        raise ValueError(f"negativity must be nonnegative, got {n_base!r}")
    mu = min(max(mu_max_other, 0.0), 1.0)
    ratio = amp_num / amp_den
    return (
        n_base
        + r * ratio * math.sqrt(mu * (2.0 * n_base + 1.0))
        + r * r * ratio * ratio * mu / 2.0
    )


@dataclass(frozen=True)
class _Component:
    negativity: float
    schmidt_sum: float
    mu_max: float
    rank: int


def _component(s: PureState) -> _Component:
    sd = schmidt(s, RANK_TOL)
    return _Component(
        negativity=negativity_from_schmidt(sd.coefficients),
        schmidt_sum=float(np.sum(sd.coefficients)),
        mu_max=reduced_spectrum(s).max(),
        rank=sd.rank,
    )


def theorem2_bounds(
    spec: SuperpositionSpec, phi: PureState, psi: PureState
) -> BoundReport:
    """Lower and upper negativity bounds for a biorthogonal superposition.

    ``lower`` is the published symmetric combination floored at zero; the raw
    value and the tighter ``lower_max_one_sided`` are kept in ``terms``.
    """
    _same_dims(phi, psi)
    if not is_biorthogonal(phi, psi, BIORTHOGONAL_TOL):
        raise NotBiorthogonal("Phi Psi^dagger and Psi Phi^dagger must both vanish")
    a, b = _check_amplitudes(spec)
    a2, b2 = a * a, b * b
    n = min(phi.dim_a, phi.dim_b)

    cp, cq = _component(phi), _component(psi)
    nt_phi = n_tilde(cp.negativity, cq.mu_max, b, a, n)
    nt_psi = n_tilde(cq.negativity, cp.mu_max, a, b, n)

    norm_sq, gamma = superpose(spec, phi, psi)
    gamma_coeffs = schmidt(gamma).coefficients
    value = negativity_from_schmidt(gamma_coeffs)

    lower_raw = (2 * a2 * cp.negativity + 2 * b2 * cq.negativity - 1.0) / 4.0
    upper = (2 * a2 * nt_phi + 2 * b2 * nt_psi - 1.0) / 4.0
    # one-sided bounds obtained from each Horn orientation separately
    lower_ee = a2 * cp.negativity + (a2 - 1.0) / 2.0
    upper_ee = a2 * nt_phi + (a2 - 1.0) / 2.0
    lower_ee1 = b2 * cq.negativity + (b2 - 1.0) / 2.0
    upper_ee1 = b2 * nt_psi + (b2 - 1.0) / 2.0

    # sum_i sqrt(mu_i(Gamma Gamma^dagger)) for the unnormalized Gamma
    gamma_sum = math.sqrt(norm_sq) * float(np.sum(gamma_coeffs))
    lemma_lhs = gamma_sum
    lemma_rhs = a * cp.schmidt_sum + n * b * math.sqrt(cq.mu_max)
    lemma_rhs_swapped = b * cq.schmidt_sum + n * a * math.sqrt(cp.mu_max)

    terms = {
        "n_phi": cp.negativity,
        "n_psi": cq.negativity,
        "n_tilde_phi": nt_phi,
        "n_tilde_psi": nt_psi,
        "mu_max_phi": cp.mu_max,
        "mu_max_psi": cq.mu_max,
        "multiplier_n": n,
        "norm_sq": norm_sq,
        "lower_raw": lower_raw,
        "lower_ee": lower_ee,
        "upper_ee": upper_ee,
        "lower_ee1": lower_ee1,
        "upper_ee1": upper_ee1,
        "lower_max_one_sided": max(0.0, lower_ee, lower_ee1),
        "one_sided_hold": bool(
            lower_ee - CHECK_TOL <= value <= upper_ee + CHECK_TOL
            and lower_ee1 - CHECK_TOL <= value <= upper_ee1 + CHECK_TOL
        ),
        "lemma_sum_lhs": lemma_lhs,
        "lemma_sum_rhs": lemma_rhs,
        "lemma_sum_rhs_swapped": lemma_rhs_swapped,
        "lemma_sum_holds": bool(
            lemma_lhs <= lemma_rhs + CHECK_TOL and lemma_lhs <= lemma_rhs_swapped + CHECK_TOL
        ),
        "a_side_orthogonal": a_side_orthogonal(phi, psi, BIORTHOGONAL_TOL),
    }
    return BoundReport(value=value, upper=upper, lower=max(0.0, lower_raw), terms=terms)


def theorem3_upper(
    spec: SuperpositionSpec, phi: PureState, psi: PureState
) -> BoundReport:
    """Upper bound on ``2 ||Gamma||^2 N(Gamma / ||Gamma||)`` for arbitrary pairs.

    No lower bound is available in this setting, so ``lower`` is None.
    """
    _same_dims(phi, psi)
    a, b = _check_amplitudes(spec)
    a2, b2 = a * a, b * b
    norm_sq, gamma = superpose(spec, phi, psi)

    cp, cq = _component(phi), _component(psi)
    sg = schmidt(gamma, RANK_TOL)
    n_gamma = negativity_from_schmidt(sg.coefficients)
    r = max(cp.rank, cq.rank, sg.rank)

    nt_phi = n_tilde(cp.negativity, cq.mu_max, b, a, r)
    nt_psi = n_tilde(cq.negativity, cp.mu_max, a, b, r)

    value = 2.0 * norm_sq * n_gamma
    upper = 2 * a2 * nt_phi + 2 * b2 * nt_psi - norm_sq + 1.0
    er_rhs = 2 * a2 * nt_phi - norm_sq / 2.0 + a2
    er1_rhs = 2 * b2 * nt_psi - norm_sq / 2.0 + b2
    terms = {
        "norm_sq": norm_sq,
        "n_gamma": n_gamma,
        "n_phi": cp.negativity,
        "n_psi": cq.negativity,
        "n_tilde_phi": nt_phi,
        "n_tilde_psi": nt_psi,
        "mu_max_phi": cp.mu_max,
        "mu_max_psi": cq.mu_max,
        "rank_phi": cp.rank,
        "rank_psi": cq.rank,
        "rank_gamma": sg.rank,
        "r": r,
        "rank_tolerance": RANK_TOL,
        "one_sided_lhs": norm_sq * n_gamma,
        "one_sided_rhs_phi": er_rhs,
        "one_sided_rhs_psi": er1_rhs,
        "one_sided_hold": bool(
            norm_sq * n_gamma <= er_rhs + CHECK_TOL and norm_sq * n_gamma <= er1_rhs + CHECK_TOL
        ),
    }
    return BoundReport(value=value, upper=upper, terms=terms)


# -- eigenvalue lemmas ----------------------------------------------------------


def horn_check(H, K) -> BoundReport:
    """Eigenvalue perturbation chains for ``H + K`` (ascending eigenvalues).

    ``mu_i(H) + mu_1(K) <= mu_i(H+K) <= mu_i(H) + mu_n(K)`` for every ``i``;
    when both matrices are PSD the square-root chain is checked as well.
    ``value`` is the worst violation over all checked inequalities and
    ``upper`` is 0, so ``slack_upper`` is the smallest margin.
    """
    h, k = np.asarray(H, dtype=complex), np.asarray(K, dtype=complex)
    if h.shape != k.shape:
        raise DimensionMismatch(f"shapes {h.shape} and {k.shape} differ")
    for x in (h, k):
        if linalg.hermitian_deviation(x) > linalg.HERMITIAN_TOL:
            raise NonHermitian("Horn inequalities need Hermitian arguments")
    mh = linalg.hermitian_eigenvalues(h).values
    mk = linalg.hermitian_eigenvalues(k).values
    ms = linalg.hermitian_eigenvalues(h + k).values

    lin = max(
        float(np.max(mh + mk[0] - ms)),
        float(np.max(ms - (mh + mk[-1]))),
    )
    psd = mk[0] >= -linalg.PSD_CLIP and mh[0] >= -linalg.PSD_CLIP
    sqrt_violation = None
    if psd:
        rh = np.sqrt(np.clip(mh, 0.0, None))
        rs = np.sqrt(np.clip(ms, 0.0, None))
        rk = math.sqrt(max(mk[-1], 0.0))
        sqrt_violation = max(float(np.max(rh - rs)), float(np.max(rs - (rh + rk))))
    worst = lin if sqrt_violation is None else max(lin, sqrt_violation)
    return BoundReport(
        value=worst,
        upper=0.0,
        terms={
            "linear_violation": lin,
            "sqrt_checked": bool(psd),
            "sqrt_violation": sqrt_violation,
        },
    )


def mixture_identity_residual(
    spec: SuperpositionSpec, phi: PureState, psi: PureState
) -> float:
    """Max entrywise gap between the weighted mixture of reductions and its
    rewriting through the normalized ``alpha Phi +/- beta Psi``."""
    _same_dims(phi, psi)
    p, q = coefficient_matrix(phi), coefficient_matrix(psi)
    plus = spec.alpha * p + spec.beta * q
    minus = spec.alpha * p - spec.beta * q
    np_sq = float(np.vdot(plus, plus).real)
    nm_sq = float(np.vdot(minus, minus).real)
    if min(np_sq, nm_sq) < DEGENERATE_NORM_SQ:
        raise DegenerateSuperposition("alpha Phi +/- beta Psi vanishes")
    a2, b2 = abs(spec.alpha) ** 2, abs(spec.beta) ** 2
    mixture = a2 * (p @ p.conj().T) + b2 * (q @ q.conj().T)
    hp = plus / math.sqrt(np_sq)
    hm = minus / math.sqrt(nm_sq)
    rewritten = (np_sq / 2.0) * (hp @ hp.conj().T) + (nm_sq / 2.0) * (hm @ hm.conj().T)
    return float(np.max(np.abs(mixture - rewritten)))
