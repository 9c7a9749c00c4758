"""Command-line interface.

Exit status: 0 when every checked inequality holds, 1 when at least one is
violated (any report is still written), 2 for bad input or configuration.
"""

from __future__ import annotations

import argparse
import json
import sys

from .. import bounds, measures
from ..errors import EntBoundsError
from ..states import SuperpositionSpec, load_state
from .campaign import THEOREMS, RunConfig, report_csv, report_json, run_campaign
from .experiments import continuity_sweep, repro_paper_example, sweep_csv

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _complex(text: str) -> complex:
    try:
        re_part, im_part = text.split(",")
        return complex(float(re_part), float(im_part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")


def _dims(text: str) -> tuple:
    out = []
    for item in text.split(","):
        try:
            m, n = item.lower().split("x")
            out.append((int(m), int(n)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected mxn[,mxn...] but got {text!r}")
    return tuple(out)


def _floats(text: str) -> list:
    return [float(x) for x in text.split(",") if x]


def _ints(text: str) -> list:
    return [int(float(x)) for x in text.split(",") if x]


def _dump(doc) -> None:
    print(json.dumps(doc, indent=1, default=str))


def cmd_measure(args) -> int:
    s = load_state(args.statefile, renormalize=args.renormalize)
    _dump(measures.measure_summary(s))
    return EXIT_OK


def cmd_bounds(args) -> int:
    phi = load_state(args.state_a, renormalize=args.renormalize)
    psi = load_state(args.state_b, renormalize=args.renormalize)
    if args.which == "t1":
        report = bounds.fannes_concurrence_check(phi, psi)
    else:
        spec = SuperpositionSpec(args.alpha, args.beta)
        check = bounds.theorem2_bounds if args.which == "t2" else bounds.theorem3_upper
        report = check(spec, phi, psi)
    _dump(report.to_dict())
    return EXIT_OK if report.holds else EXIT_VIOLATION


def cmd_verify(args) -> int:
    config = RunConfig(
        seed=args.seed,
        trials=args.trials,
        dim_pairs=args.dims,
        theorem_set=tuple(t.strip() for t in args.theorems.split(",") if t.strip()),
        amp_floor=args.amp_floor,
        output_path=args.out,
        format=args.format,
        workers=args.workers,
    )
    result = run_campaign(config)
    if not args.out:
        sys.stdout.write(report_csv(result) if args.format == "csv" else report_json(result))
    print(json.dumps(result.summary, indent=1), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK if result.violations == 0 else EXIT_VIOLATION


def cmd_repro(args) -> int:
    report = repro_paper_example()
    _dump(report.to_dict())
    return EXIT_OK if report.holds and report.terms["all_checks_pass"] else EXIT_VIOLATION


def cmd_sweep(args) -> int:
    rows = continuity_sweep(args.eps, args.d, args.analytic_d)
    text = sweep_csv(rows)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(r.bound_holds for r in rows) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entbounds",
        description="Entanglement measures and negativity bounds for bipartite pure states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="entropy, concurrence, negativity and Schmidt data of a state")
    p.add_argument("statefile")
    p.add_argument("--renormalize", action="store_true")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("bounds", help="evaluate one bound on a pair of states")
    p.add_argument("which", choices=("t1", "t2", "t3"))
    p.add_argument("state_a")
    p.add_argument("state_b")
    p.add_argument("--alpha", type=_complex, default=complex(2**-0.5), help="re,im (use --alpha=-x,y for negatives)")
    p.add_argument("--beta", type=_complex, default=complex(2**-0.5), help="re,im")
    p.add_argument("--renormalize", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="randomized verification campaign")
    p.add_argument("--theorems", default=",".join(THEOREMS))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--dims", type=_dims, default="2x2,3x4,4x4")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--amp-floor", type=float, default=0.05)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("repro-paper-example", help="reproduce the 4x4 worked example")
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("sweep", help="entropy vs concurrence along the epsilon family")
    p.add_argument("--eps", type=_floats, default=[0.001, 0.01, 0.1])
    p.add_argument("--d", type=_ints, default=[2, 10, 100])
    p.add_argument("--analytic-d", type=_ints, default=[10**3, 10**6, 10**9])
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (EntBoundsError, OSError, ValueError) as exc:
        print(f"entbounds: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
