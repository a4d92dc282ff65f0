"""Command line interface.

Subcommands ``verify``, ``analyze``, ``scan-sphere`` and ``genericity``.
Exit codes: 0 success, 1 invariant violation, 2 configuration error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .config import read_scenario
from .errors import ConfigError, InconsistencyError, InvalidArgumentError, NumericalFailure
from .genericity import nongeneric_set, trianalyticity_verdict
from .hk_core import verify_frame
from .invariants import run_invariants
from .report import analyze_report, fmt_real, genericity_report, scan_csv
from .sphere_grid import fibonacci_sphere
from .trisym_poly import compute_polynomial, evaluate

log = logging.getLogger("trisym")

EXIT_OK, EXIT_INVARIANT, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2, 3


def _checked_scenario(path):
    sc = read_scenario(path)
    rep = verify_frame(sc.frame, 1e-9)
    if not rep.passed:
        raise ConfigError(f"model frame fails the quaternion relations (worst residual {rep.worst:.3e})")
    return sc


def cmd_verify(args):
    sc = read_scenario(args.config)
    results = run_invariants(sc)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.name}: worst={fmt_real(r.worst)} tol={fmt_real(r.tol)}")
    ok = all(r.passed for r in results)
    lines.append(f"result: {'all invariants pass' if ok else 'invariant violation'}")
    return ("\n".join(lines) + "\n"), (EXIT_OK if ok else EXIT_INVARIANT)


def cmd_analyze(args):
    sc = _checked_scenario(args.config)
    cid = _require_cycle(args, sc)
    verdict = trianalyticity_verdict(sc.cycle(cid), sc.frame, sc.tolerances, cid)
    return analyze_report(verdict, sc.kinds[cid]), EXIT_OK


def cmd_scan_sphere(args):
    sc = _checked_scenario(args.config)
    cid = _require_cycle(args, sc)
    n_points = args.grid if args.grid is not None else sc.scan_points
    if n_points < 2:
        raise ConfigError(f"scan needs at least 2 grid points, got {n_points}")
    poly = compute_polynomial(sc.cycle(cid), sc.frame, cid)
    nodes = fibonacci_sphere(n_points)
    return scan_csv(nodes, evaluate(poly, nodes)), EXIT_OK


def cmd_genericity(args):
    sc = _checked_scenario(args.config)
    if not sc.cycles:
        raise ConfigError("genericity needs a non-empty cycle suite")
    return genericity_report(nongeneric_set(sc.cycles, sc.frame, sc.tolerances)), EXIT_OK


def _require_cycle(args, sc):
    if not args.cycle:
        raise ConfigError("--cycle is required")
    sc.cycle(args.cycle)
    return args.cycle


COMMANDS = {
    "verify": cmd_verify,
    "analyze": cmd_analyze,
    "scan-sphere": cmd_scan_sphere,
    "genericity": cmd_genericity,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="trisym", description="Trisymplectic area analysis on flat hyperkahler tori.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="scenario YAML file")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        if name in ("analyze", "scan-sphere"):
            p.add_argument("--cycle", required=True, help="cycle id from the config")
        if name == "scan-sphere":
            p.add_argument("--grid", type=int, default=None, help="number of Fibonacci nodes")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")

    try:
        text, code = COMMANDS[args.command](args)
    except (ConfigError, InvalidArgumentError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except InconsistencyError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT

    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
