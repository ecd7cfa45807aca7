"""Command-line front end: bound reports, grid scans, randomized
verification and the relative-entropy inequality check.

Exit codes: 0 success / no violations, 1 usage error, 2 violations found.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__
from .bounds import MeasurementOrdering, compute_report
from .states import MeasurementSet, random_basis, random_state, product_state
from .sweep import (
    DescriptorError,
    ScanSpec,
    parse_measurement,
    parse_state,
    run_scan,
    write_scan_csv,
)
from .verify import SuiteConfig, lemma_check, run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATIONS = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _report_to_dict(rep):
    return {
        "h_ab_cond": rep.h_ab_cond,
        "lhs_eur": rep.lhs_eur,
        "lhs_iep": rep.lhs_iep,
        "L1": rep.l1,
        "Lopt": rep.lopt,
        "eur_total": rep.eur_total,
        "B_tilde": rep.b_tilde,
        "U1": rep.u1,
        "Uopt": rep.uopt,
        "U1_tilde": rep.u1_tilde,
        "U2_tilde": rep.u2_tilde,
        "Uopt_tilde": rep.uopt_tilde,
        "iep_dep": rep.iep_dep,
        "iep_indep": rep.iep_indep,
        "best_ordering_eur": list(rep.best_ordering_eur),
        "best_cover": {
            "edges": [list(e) for e in rep.best_cover.edges],
            "degree": rep.best_cover.degree,
        },
    }


def cmd_bound(args):
    try:
        state = parse_state(args.state)
        ms = MeasurementSet(
            tuple(parse_measurement(m).build() for m in args.meas)
        )
    except (DescriptorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep = compute_report(state, ms)
    json.dump(_report_to_dict(rep), sys.stdout, indent=2)
    print()
    return EXIT_OK


def cmd_scan(args):
    try:
        spec = ScanSpec.from_file(args.spec)
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: bad scan spec: {exc}", file=sys.stderr)
        return EXIT_USAGE
    header, rows = run_scan(spec, workers=args.jobs)
    try:
        write_scan_csv(args.out, header, rows, spec, spec_path=args.spec)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def _parse_dims(values):
    dims = []
    for v in values:
        a, _, b = v.partition("x")
        dims.append((int(a), int(b)))
    return tuple(dims)


def cmd_verify(args):
    try:
        config = SuiteConfig(
            trials=args.trials,
            seed=args.seed,
            dims=_parse_dims(args.dims or ["2x2"]),
            n_measurements=tuple(args.n_meas or [3]),
            tolerance=args.tolerance,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run_suite(config)
    json.dump(
        {
            "total": report.total,
            "violations": [
                {"seed": s, "instance": d, "margin": m}
                for s, d, m in report.violations
            ],
            "worst_margin": report.worst_margin,
            "infinite_rhs": report.infinite_rhs,
        },
        sys.stdout,
        indent=2,
    )
    print()
    return EXIT_OK if not report.violations else EXIT_VIOLATIONS


def _random_density(d, seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ np.conj(g).T
    return rho / np.trace(rho).real


def cmd_lemma(args):
    rng = np.random.default_rng(args.seed)
    gaps = []
    infinite = 0
    violations = 0
    for _ in range(args.trials):
        for d_a, d_b in _parse_dims(args.dims or ["2x2"]):
            for n in args.n_meas or [3]:
                seed = int(rng.integers(0, 2**63 - 1))
                if args.product_states:
                    state = product_state(
                        _random_density(d_a, seed), _random_density(d_b, seed + 1)
                    )
                else:
                    state = random_state(d_a, d_b, seed)
                ms = MeasurementSet(
                    tuple(random_basis(d_a, seed + k + 1) for k in range(n))
                )
                if args.ordering:
                    perm = tuple(int(x) - 1 for x in args.ordering.split(","))
                else:
                    perm = tuple(range(n))
                ordering = MeasurementOrdering.from_set(ms, perm)
                lhs, rhs, holds = lemma_check(state, ms, ordering, args.tolerance)
                if np.isinf(rhs):
                    infinite += 1
                    continue
                gaps.append(lhs - rhs)
                if not holds:
                    violations += 1
    json.dump(
        {
            "trials": args.trials,
            "finite": len(gaps),
            "infinite_rhs": infinite,
            "violations": violations,
            "worst_gap": min(gaps) if gaps else None,
        },
        sys.stdout,
        indent=2,
    )
    print()
    return EXIT_OK if violations == 0 else EXIT_VIOLATIONS


def build_parser():
    parser = _Parser(
        prog="eurbounds",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "bound",
        help="full bound report for one state and measurement set",
        description=(
            "State descriptors: werner:ETA, horodecki:ALPHA, file:PATH.\n"
            "Measurement descriptors: qubit:THETA,PHI, y2, z2, "
            "qutritx:THETA,PHI, groupG.y, groupG.z, random:D,SEED, file:PATH.\n"
            "Indices in the report (orderings, covers) are 0-based."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--state", required=True)
    p.add_argument("--meas", action="append", required=True,
                   help="repeat for each measurement (at least 2)")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("scan", help="grid scan driven by a JSON scan spec")
    p.add_argument("--spec", required=True, help="path to the scan spec JSON")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="randomized validity suite")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dims", action="append", default=None,
                   help="subsystem dimensions like 2x2 (repeatable)")
    p.add_argument("--n-meas", dest="n_meas", action="append", type=int,
                   default=None)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lemma", help="relative-entropy inequality check")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dims", action="append", default=None)
    p.add_argument("--n-meas", dest="n_meas", action="append", type=int,
                   default=None)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--ordering", default=None,
                   help="explicit 1-based ordering like 2,1,3")
    p.add_argument("--product-states", action="store_true",
                   help="draw product states only")
    p.set_defaults(func=cmd_lemma)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "trials") and args.trials < 1:
        parser.error("--trials must be >= 1")
    if hasattr(args, "meas") and len(args.meas) < 2:
        parser.error("need at least two --meas")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
