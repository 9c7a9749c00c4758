"""The worked 4x4 superposition example and the epsilon-family continuity sweep."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace

from .. import bounds, measures
from ..errors import DimensionTooLarge
from ..linalg import hermitian_eigenvalues
from ..states import (
    DENSE_AMPLITUDE_CAP,
    SuperpositionSpec,
    bell,
    epsilon_family,
    epsilon_family_spectrum,
    fidelity,
    reduced_density_a,
)

EXAMPLE_TOL = 1e-9
EXPECTED = {"value": 1.5, "lower": 0.0, "upper": 4.0, "n_phi": 0.5, "n_psi": 0.5, "mu_max": 0.5}


def repro_paper_example() -> bounds.BoundReport:
    """Two Bell pairs on disjoint levels of a 4x4 system, alpha = beta = 1/sqrt(2).

    Expected: N(Gamma) = 3/2 strictly above the lower bound 0 and below the
    upper bound 4, with N = 1/2 and top reduced eigenvalue 1/2 for both parts.
    The outcome of every comparison lands in ``terms["checks"]``.
    """
    phi = bell(4, 4, offset=0)
    psi = bell(4, 4, offset=2)
    amp = 1.0 / math.sqrt(2.0)
    report = bounds.theorem2_bounds(SuperpositionSpec(amp, amp), phi, psi)
    t = report.terms
    observed = {
        "value": report.value,
        "lower": report.lower,
        "upper": report.upper,
        "n_phi": t["n_phi"],
        "n_psi": t["n_psi"],
        "mu_max": max(t["mu_max_phi"], t["mu_max_psi"]),
    }
    checks = {k: abs(observed[k] - v) <= EXAMPLE_TOL for k, v in EXPECTED.items()}
    checks["mu_max_equal"] = abs(t["mu_max_phi"] - t["mu_max_psi"]) <= EXAMPLE_TOL
    checks["value_strictly_above_lower"] = report.value > report.lower
    checks["value_strictly_below_upper"] = report.value < report.upper
    terms = dict(t, checks=checks, all_checks_pass=all(checks.values()))
    return replace(report, terms=terms)


SWEEP_COLUMNS = (
    "path",
    "epsilon",
    "d",
    "fidelity",
    "entropy_bits",
    "concurrence_sq",
    "concurrence_sq_formula",
    "trace_distance",
    "fannes_bound",
    "bound_holds",
    "eps_log2_d",
)


@dataclass(frozen=True)
class SweepRow:
    path: str
    epsilon: float
    d: int
    fidelity: float
    entropy_bits: float
    concurrence_sq: float
    concurrence_sq_formula: float
    trace_distance: float
    fannes_bound: float
    bound_holds: bool
    eps_log2_d: float

    def as_list(self) -> list:
        return [getattr(self, c) for c in SWEEP_COLUMNS]


def _formula_c2(eps: float, d: int) -> float:
    return 2.0 * (2.0 * eps - eps * eps - eps * eps / d)


def _dense_row(eps: float, d: int) -> SweepRow:
    phi, psi = epsilon_family(eps, d)
    rho_psi, rho_phi = reduced_density_a(psi), reduced_density_a(phi)
    sp = hermitian_eigenvalues(rho_psi, clip_psd=True)
    c2 = measures.concurrence_sq_from_spectrum(sp)
    t = measures.trace_distance(rho_psi, rho_phi)
    return SweepRow(
        path="dense",
        epsilon=eps,
        d=d,
        fidelity=fidelity(phi, psi),
        entropy_bits=measures.entropy_from_spectrum(sp),
        concurrence_sq=c2,
        concurrence_sq_formula=_formula_c2(eps, d),
        trace_distance=t,
        fannes_bound=4.0 * t,
        bound_holds=c2 <= 4.0 * t + bounds.CHECK_TOL,
        eps_log2_d=eps * math.log2(d),
    )


def _analytic_row(eps: float, d: int) -> SweepRow:
    sp = epsilon_family_spectrum(eps, d)
    c2 = measures.concurrence_sq_from_spectrum(sp)
    # both reductions are diagonal in the same basis: |1-eps - 1| + d * eps/d
    t = abs((1.0 - eps) - 1.0) + d * (eps / d)
    return SweepRow(
        path="analytic",
        epsilon=eps,
        d=d,
        fidelity=1.0 - eps,
        entropy_bits=measures.entropy_from_spectrum(sp),
        concurrence_sq=c2,
        concurrence_sq_formula=_formula_c2(eps, d),
        trace_distance=t,
        fannes_bound=4.0 * t,
        bound_holds=c2 <= 4.0 * t + bounds.CHECK_TOL,
        eps_log2_d=eps * math.log2(d),
    )


def continuity_sweep(epsilons, ds, analytic_ds=()) -> list[SweepRow]:
    """Entropy versus squared concurrence along the epsilon family.

    ``ds`` are evaluated from full state vectors (subject to the dense cap),
    ``analytic_ds`` from the closed-form spectrum.
    """
    rows = []
    for eps in epsilons:
        for d in ds:
            if (d + 1) ** 2 > DENSE_AMPLITUDE_CAP:
                raise DimensionTooLarge(f"d = {d} exceeds the dense cap; pass it as analytic")
            rows.append(_dense_row(float(eps), int(d)))
        for d in analytic_ds:
            rows.append(_analytic_row(float(eps), int(d)))
    return rows


def sweep_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow(
            [repr(v) if isinstance(v, float) else str(v).lower() if isinstance(v, bool) else v
             for v in row.as_list()]
        )
    return buf.getvalue()


def dense_analytic_gap(eps: float, d: int) -> float:
    """Largest disagreement between the dense and analytic rows for one point."""
    a, b = _dense_row(eps, d), _analytic_row(eps, d)
    fields = ("fidelity", "entropy_bits", "concurrence_sq", "trace_distance")
    return max(abs(getattr(a, f) - getattr(b, f)) for f in fields)
