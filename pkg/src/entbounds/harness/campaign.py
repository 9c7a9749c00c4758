"""Randomized verification campaigns and their reports.

Each trial draws everything it needs from a seed derived from
``(config.seed, stream(theorem, m, n), trial_index)``, so results do not
depend on evaluation order or on the number of worker processes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .. import bounds, measures
from ..errors import ConfigInvalid
from ..states import PureState, reduced_density_a, reduced_spectrum
from .generators import (
    MAX_DIM,
    MIN_DIM,
    haar_state,
    random_amplitudes,
    random_biorthogonal_pair,
    random_hermitian,
)
from .rng import CounterRng, derive_seed, mix64

THEOREMS = ("T1", "T2", "T3", "HORN", "CONSISTENCY")
_TAG_CODES = {tag: i + 1 for i, tag in enumerate(THEOREMS)}
DEFAULT_DIMS = ((2, 2), (3, 4), (4, 4))
CONSISTENCY_TOL = 1e-8
MIXTURE_TOL = 1e-10

CSV_COLUMNS = (
    "trial_index",
    "theorem",
    "m",
    "n",
    "alpha_re",
    "alpha_im",
    "beta_re",
    "beta_im",
    "lower",
    "value",
    "upper",
    "slack_lower",
    "slack_upper",
    "holds",
    "derived_seed",
)


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    trials: int = 1000
    dim_pairs: tuple = DEFAULT_DIMS
    theorem_set: tuple = THEOREMS
    amp_floor: float = 0.05
    output_path: str | None = None
    format: str = "csv"
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "dim_pairs", tuple(tuple(int(x) for x in p) for p in self.dim_pairs))
        object.__setattr__(self, "theorem_set", tuple(t.upper() for t in self.theorem_set))
        if not (0 <= self.seed <= (1 << 64) - 1):
            raise ConfigInvalid(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.trials < 1:
            raise ConfigInvalid(f"trials must be at least 1, got {self.trials}")
        if not self.dim_pairs:
            raise ConfigInvalid("at least one dimension pair is required")
        for pair in self.dim_pairs:
            if len(pair) != 2 or not all(MIN_DIM <= d <= MAX_DIM for d in pair):
                raise ConfigInvalid(f"dimension pair {pair} outside [{MIN_DIM}, {MAX_DIM}]")
        unknown = set(self.theorem_set) - set(THEOREMS)
        if unknown or not self.theorem_set:
            raise ConfigInvalid(f"unknown or empty theorem set: {sorted(unknown)}")
        if not (1e-6 <= self.amp_floor <= 0.7):
            raise ConfigInvalid(f"amp_floor must lie in [1e-6, 0.7], got {self.amp_floor}")
        if self.format not in ("csv", "json"):
            raise ConfigInvalid(f"format must be csv or json, got {self.format!r}")
        if self.workers < 1:
            raise ConfigInvalid("workers must be at least 1")


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    theorem: str
    m: int
    n: int
    alpha: complex | None
    beta: complex | None
    lower: float | None
    value: float
    upper: float
    slack_lower: float | None
    slack_upper: float
    holds: bool
    derived_seed: int
    auxiliary_holds: bool = True
    terms: dict = field(default_factory=dict, compare=False, repr=False)


@dataclass
class CampaignResult:
    config: RunConfig
    records: list
    summary: dict

    @property
    def violations(self) -> int:
        return self.summary["violations"]


def stream_id(theorem: str, m: int, n: int) -> int:
    return (_TAG_CODES[theorem] << 16) | (m << 8) | n


def _sub(seed: int, k: int) -> int:
    return mix64(seed, 0xA11CE, k)


def _random_split(m: int, n: int, seed: int) -> tuple[int, int]:
    # block sizes k1, k2 >= 1 with k1 + k2 <= min(m, n)
    top = min(m, n)
    u = CounterRng(seed).uniform(2)
    k1 = 1 + int(u[0] * (top - 1))
    k2 = 1 + int(u[1] * (top - k1))
    return k1, k2


def _orthogonalize(phi: PureState, psi: PureState) -> PureState:
    v = psi.amplitudes - np.vdot(phi.amplitudes, psi.amplitudes) * phi.amplitudes
    return PureState(psi.dim_a, psi.dim_b, v)


def _record(tag, m, n, index, seed, report, spec=None, aux=True) -> TrialRecord:
    return TrialRecord(
        trial_index=index,
        theorem=tag,
        m=m,
        n=n,
        alpha=None if spec is None else spec.alpha,
        beta=None if spec is None else spec.beta,
        lower=report.lower,
        value=report.value,
        upper=report.upper,
        slack_lower=report.slack_lower,
        slack_upper=report.slack_upper,
        holds=report.holds,
        derived_seed=seed,
        auxiliary_holds=bool(aux),
        terms=report.terms,
    )


def _trial_t1(m, n, index, seed, amp_floor):
    s1 = haar_state(m, n, _sub(seed, 0))
    s2 = haar_state(m, n, _sub(seed, 1))
    rep = bounds.fannes_concurrence_check(s1, s2)
    return _record("T1", m, n, index, seed, rep, aux=rep.terms["sorted_eigen_l1_holds"])


def _trial_t2(m, n, index, seed, amp_floor):
    k1, k2 = _random_split(m, n, _sub(seed, 0))
    phi, psi = random_biorthogonal_pair(m, n, k1, k2, _sub(seed, 1))
    spec = random_amplitudes(_sub(seed, 2), amp_floor)
    rep = bounds.theorem2_bounds(spec, phi, psi)
    aux = rep.terms["one_sided_hold"] and rep.terms["lemma_sum_holds"]
    return _record("T2", m, n, index, seed, rep, spec, aux)


def _t3_pair(m, n, index, seed):
    """Rotate through nonorthogonal, orthogonal and biorthogonal pairs."""
    kind = index % 3
    if kind == 2:
        k1, k2 = _random_split(m, n, _sub(seed, 0))
        return random_biorthogonal_pair(m, n, k1, k2, _sub(seed, 1))
    phi = haar_state(m, n, _sub(seed, 0))
    psi = haar_state(m, n, _sub(seed, 1))
    if kind == 1:
        psi = _orthogonalize(phi, psi)
    return phi, psi


def _trial_t3(m, n, index, seed, amp_floor):
    phi, psi = _t3_pair(m, n, index, seed)
    spec = random_amplitudes(_sub(seed, 2), amp_floor)
    rep = bounds.theorem3_upper(spec, phi, psi)
    residual = bounds.mixture_identity_residual(spec, phi, psi)
    aux = rep.terms["one_sided_hold"] and residual <= MIXTURE_TOL
    return _record("T3", m, n, index, seed, rep, spec, aux)


def _trial_horn(m, n, index, seed, amp_floor):
    if index % 2 == 0:
        h = random_hermitian(m, _sub(seed, 0))
        k = random_hermitian(m, _sub(seed, 1))
        spec = None
    else:
        # the PSD split used for superpositions: |a|^2 Phi Phi^+ and |b|^2 Psi Psi^+
        spec = random_amplitudes(_sub(seed, 2), amp_floor)
        h = abs(spec.alpha) ** 2 * reduced_density_a(haar_state(m, n, _sub(seed, 0)))
        k = abs(spec.beta) ** 2 * reduced_density_a(haar_state(m, n, _sub(seed, 1)))
        h, k = 0.5 * (h + h.conj().T), 0.5 * (k + k.conj().T)
    rep = bounds.horn_check(h, k)
    return _record("HORN", m, n, index, seed, rep, spec)


def _trial_consistency(m, n, index, seed, amp_floor):
    s = haar_state(m, n, _sub(seed, 0))
    n_pt = measures.negativity_pt(s)
    n_sc = measures.negativity_schmidt(s)
    rank = measures.schmidt_rank(s)
    c2_direct = measures.concurrence(s) ** 2
    c2_spec = measures.concurrence_sq_from_spectrum(reduced_spectrum(s))
    rep = bounds.BoundReport(
        value=abs(n_pt - n_sc),
        upper=CONSISTENCY_TOL,
        terms={"negativity_pt": n_pt, "negativity_schmidt": n_sc, "schmidt_rank": rank},
    )
    aux = abs(c2_direct - c2_spec) <= 1e-10 and ((n_sc > 1e-9) == (rank > 1))
    return _record("CONSISTENCY", m, n, index, seed, rep, aux=aux)


_TRIALS = {
    "T1": _trial_t1,
    "T2": _trial_t2,
    "T3": _trial_t3,
    "HORN": _trial_horn,
    "CONSISTENCY": _trial_consistency,
}


def run_trial(config_seed: int, theorem: str, m: int, n: int, index: int, amp_floor: float) -> TrialRecord:
    seed = derive_seed(config_seed, stream_id(theorem, m, n), index)
    return _TRIALS[theorem](m, n, index, seed, amp_floor)


def _run_chunk(args) -> list:
    config_seed, theorem, m, n, indices, amp_floor = args
    return [run_trial(config_seed, theorem, m, n, i, amp_floor) for i in indices]


def _tasks(config: RunConfig, chunk: int):
    for tag in config.theorem_set:
        for m, n in config.dim_pairs:
            for start in range(0, config.trials, chunk):
                stop = min(start + chunk, config.trials)
                yield (config.seed, tag, m, n, range(start, stop), config.amp_floor)


def summarize(records) -> dict:
    def stats(recs):
        slacks = [r.slack_upper for r in recs] + [
            r.slack_lower for r in recs if r.slack_lower is not None
        ]
        return {
            "trials": len(recs),
            "violations": sum(not r.holds for r in recs),
            "auxiliary_violations": sum(not r.auxiliary_holds for r in recs),
            "min_slack": min(slacks) if slacks else None,
            "max_abs_slack": max(abs(x) for x in slacks) if slacks else None,
        }

    out = stats(records)
    by_theorem = {}
    for tag in THEOREMS:
        recs = [r for r in records if r.theorem == tag]
        if recs:
            by_theorem[tag] = stats(recs)
    out["by_theorem"] = by_theorem
    return out


def run_campaign(config: RunConfig) -> CampaignResult:
    """Run every (theorem, dims, trial) combination of ``config``.

    Records come back ordered by theorem, dimension pair and trial index
    whatever the worker count.  Writes the report when ``output_path`` is set.
    """
    if config.workers == 1:
        records = [rec for task in _tasks(config, config.trials) for rec in _run_chunk(task)]
    else:
        chunk = max(1, math.ceil(config.trials / (4 * config.workers)))
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = [rec for batch in pool.map(_run_chunk, _tasks(config, chunk)) for rec in batch]
    order = {tag: i for i, tag in enumerate(THEOREMS)}
    dims = {d: i for i, d in enumerate(config.dim_pairs)}
    records.sort(key=lambda r: (order[r.theorem], dims[(r.m, r.n)], r.trial_index))
    result = CampaignResult(config, records, summarize(records))
    if config.output_path:
        write_report(result, config.output_path, config.format)
    return result


# -- report emission --------------------------------------------------------------


def _num(x) -> str:
    return "" if x is None else repr(float(x))


def _csv_row(r: TrialRecord) -> list:
    a = r.alpha if r.alpha is not None else None
    b = r.beta if r.beta is not None else None
    return [
        r.trial_index,
        r.theorem,
        r.m,
        r.n,
        _num(None if a is None else a.real),
        _num(None if a is None else a.imag),
        _num(None if b is None else b.real),
        _num(None if b is None else b.imag),
        _num(r.lower),
        _num(r.value),
        _num(r.upper),
        _num(r.slack_lower),
        _num(r.slack_upper),
        "true" if r.holds else "false",
        r.derived_seed,
    ]


def report_csv(result: CampaignResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in result.records:
        writer.writerow(_csv_row(r))
    return buf.getvalue()


def _json_record(r: TrialRecord) -> dict:
    row = dict(zip(CSV_COLUMNS, _csv_row(r)))
    for key in CSV_COLUMNS[4:13]:
        row[key] = None if row[key] == "" else float(row[key])
    row["holds"] = r.holds
    row["auxiliary_holds"] = r.auxiliary_holds
    return row


def report_json(result: CampaignResult) -> str:
    cfg = asdict(result.config)
    cfg.pop("output_path")
    cfg.pop("workers")  # reports must not depend on the degree of parallelism
    doc = {
        "config": cfg,
        "summary": result.summary,
        "records": [_json_record(r) for r in result.records],
    }
    return json.dumps(doc, indent=1) + "\n"


def write_report(result: CampaignResult, path, fmt: str = "csv") -> None:
    text = report_csv(result) if fmt == "csv" else report_json(result)
    with open(path, "w", newline="") as fh:
        fh.write(text)
