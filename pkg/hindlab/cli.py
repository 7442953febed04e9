"""
Command-line front door.

Stdout carries exactly one canonical JSON report; logs and the one-line
human summary go to stderr. Exit codes: 0 found, 1 not found within the
budget, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from hindlab import config
from hindlab.core.arithmetic.operations import parse_rational_list, scale
from hindlab.core.arithmetic.schemas import as_vector
from hindlab.core.colorings.builtin import coloring_from_spec
from hindlab.core.colorings.consistency import is_X_consistent
from hindlab.core.colorings.schemas import Coloring
from hindlab.core.errors import (
    BudgetExceededError,
    InvalidInputError,
    NotFoundError,
    ParseError,
    VerificationError,
)
from hindlab.core.families.enumeration import (
    enumerate_all_new,
    enumerate_extreme,
    enumerate_families,
    enumerate_lower,
)
from hindlab.core.patterns.commands import PATTERNS, SEARCH_MODES, run_pattern_search
from hindlab.core.patterns.schemas import SearchBudget
from hindlab.core.patterns.thresholds import dut_threshold, schur_threshold, vdw_threshold
from hindlab.core.pipeline.schemas import PipelineConfig
from hindlab.core.pipeline.search import run_pipeline
from hindlab.core.reporting.identities import SUITES, verify_identities
from hindlab.core.reporting.report import emit_report, to_canonical

logger = logging.getLogger("hindlab.cli")

EXIT_OK, EXIT_NOT_FOUND, EXIT_INVALID = 0, 1, 2

FAMILY_SETS = {
    "all": enumerate_families,
    "lower": enumerate_lower,
    "new": enumerate_all_new,
    "extreme": enumerate_extreme,
}


class _Parser(argparse.ArgumentParser):
    """argparse reports usage errors through InvalidInputError instead of exiting."""

    def error(self, message):
        raise InvalidInputError(f"{self.prog}: {message}")


def _common_flags() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--coloring", default='{"kind": "val2_parity"}',
                        help="Spec JSON de la coloration (défaut: val2_parity)")
    common.add_argument("--budget-candidates", type=int, default=None,
                        help=f"Candidate budget (default: {config.BUDGET_CANDIDATES})")
    common.add_argument("--budget-seconds", type=float, default=None,
                        help=f"Wall-time budget in seconds (default: {config.BUDGET_SECONDS})")
    common.add_argument("--height", type=int, default=None,
                        help=f"Height bound for rational searches (default: {config.DEFAULT_HEIGHT})")
    common.add_argument("--seed", type=int, default=0,
                        help="Seed for identity suites and for random colorings without one")
    common.add_argument("--jobs", type=int, default=config.DEFAULT_JOBS,
                        help="Worker processes for parallel searches")
    common.add_argument("--q", default="1", help='Dilation test set Q, e.g. "1,2,1/2"')
    common.add_argument("-v", "--verbose", action="store_true", help="Affichage détaillé (DEBUG)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(
        prog="hindlab",
        description="Exact search and verification of monochromatic sum/product patterns over ℚ₊",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Exemples d'utilisation:
  hindlab verify-identities --seed 7 --cases 1000
  hindlab search schur --r 2 --mode threshold
  hindlab search vdw --k 3 --N 9 --coloring '{"kind": "val2_parity"}'
  hindlab consistency --vector "2,1" --families lower --q "1,3"
  hindlab build lower --n 3 --q "1,2"
  hindlab hindman --k 2 --coloring '{"kind": "val2_parity"}' --route direct
  hindlab thresholds
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-identities", parents=[common], help="Run the seeded identity suites")
    p.add_argument("--cases", type=int, default=1000, help="Random cases per suite")
    p.add_argument("--suite", action="append", choices=sorted(SUITES), help="Restrict to one suite (repeatable)")

    p = sub.add_parser("search", parents=[common], help="Classical pattern witnesses and thresholds")
    p.add_argument("pattern", choices=PATTERNS)
    p.add_argument("--mode", choices=SEARCH_MODES, default="witness")
    p.add_argument("--N", type=int, default=20, help="Interval [1..N] for schur/vdw witnesses")
    p.add_argument("--k", type=int, default=None, help="Pattern length (vdw: 3, folkman/dut: 2)")
    p.add_argument("--r", type=int, default=2, help="Number of colors for thresholds")
    p.add_argument("--n", type=int, default=4, help="Ground set [n] for dut witnesses")
    p.add_argument("--vector", default=None, help="Vector for the dut subset coloring c(I) = C(prod v_I) (default 1..n)")
    p.add_argument("--distinct", action="store_true", help="Schur: require x < y")
    p.add_argument("--poly", action="append", default=[], help='pvdw polynomial vector, e.g. "X, X**2" (repeatable)')
    p.add_argument("--window", type=int, default=None, help="pvdw: largest box side")

    p = sub.add_parser("consistency", parents=[common], help="Check a vector against a family collection")
    p.add_argument("--vector", required=True, help='Vector, e.g. "2,1"')
    p.add_argument("--families", choices=sorted(FAMILY_SETS), default="all")

    p = sub.add_parser("build", parents=[common], help="Build a consistent vector")
    p.add_argument("mode", choices=["lower", "full"])
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("hindman", parents=[common], help="Monochromatic sum/product witness")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--route", choices=["direct", "constructive", "auto"], default="direct")
    p.add_argument("--generalized", action="store_true", help="Sums of disjoint products instead of sums and products")
    p.add_argument("--require-distinct", action="store_true")

    p = sub.add_parser("thresholds", parents=[common], help="Schur, W(3;2) and DUT(2,2) by exhaustive search")
    p.add_argument("--schur-r", type=int, default=2, choices=[1, 2, 3], help="Largest r for Schur thresholds")
    return parser


def _budget(args) -> SearchBudget:
    kwargs = {}
    if args.height is not None:
        kwargs["height_bound"] = args.height
    if args.budget_candidates is not None:
        kwargs["max_candidates"] = args.budget_candidates
    if args.budget_seconds is not None:
        kwargs["max_seconds"] = args.budget_seconds
    return SearchBudget(**kwargs)


def _coloring(args) -> Coloring:
    try:
        spec = json.loads(args.coloring)
    except json.JSONDecodeError as e:
        raise ParseError(f"--coloring is not valid JSON: {e}") from e
    if isinstance(spec, dict) and spec.get("kind") == "random":
        spec.setdefault("seed", args.seed)
    return coloring_from_spec(spec)


def cmd_verify_identities(args) -> Dict[str, Any]:
    return verify_identities(args.seed, args.cases, args.suite)


def cmd_search(args) -> Dict[str, Any]:
    report = run_pattern_search(
        args.pattern,
        args.mode,
        C=_coloring(args) if args.mode == "witness" else None,
        budget=_budget(args),
        N=args.N,
        k=args.k,
        r=args.r,
        n=args.n,
        v=parse_rational_list(args.vector) if args.vector else None,
        distinct=args.distinct,
        polys=args.poly,
        window=args.window,
    )
    return report.to_dict()


def cmd_consistency(args) -> Dict[str, Any]:
    C = _coloring(args)
    v = as_vector(parse_rational_list(args.vector))
    families = FAMILY_SETS[args.families](len(v))
    Q = parse_rational_list(args.q)
    checks, failing = [], {}
    for q in Q:
        outcome = is_X_consistent(scale(q, v), families, C)
        checks.append({"name": f"q={q}: {args.families} {len(v)}-families consistent", "pass": bool(outcome)})
        if not outcome:
            failing[str(q)] = outcome.failing
    return {
        "command": "consistency",
        "params": {"v": v, "families": args.families, "Q": Q, "coloring": C.descriptor()},
        "found": not failing,
        "witness": {"checked": len(families), "failing": failing},
        "checks": checks,
    }


def cmd_build(args) -> Dict[str, Any]:
    cfg = PipelineConfig(mode=args.mode, n=args.n, Q=tuple(parse_rational_list(args.q)),
                         coloring=_coloring(args), budget=_budget(args), jobs=args.jobs)
    return run_pipeline(cfg)


def cmd_hindman(args) -> Dict[str, Any]:
    cfg = PipelineConfig(
        mode="theorem2" if args.generalized else "theorem1",
        k=args.k,
        coloring=_coloring(args),
        budget=_budget(args),
        route=args.route,
        jobs=args.jobs,
        require_distinct=args.require_distinct,
    )
    return run_pipeline(cfg)


def cmd_thresholds(args) -> Dict[str, Any]:
    budget = _budget(args)
    reports = [schur_threshold(r, budget) for r in range(1, args.schur_r + 1)]
    reports.append(vdw_threshold(3, 2, budget))
    values = {f"schur({r.params['r']})": r.witness["value"] for r in reports[:-1]}
    values["W(3;2)"] = reports[-1].witness["value"]
    try:
        dut = dut_threshold(2, 2, budget)
        reports.append(dut)
        values["DUT(2,2)"] = dut.witness["value"]
    except BudgetExceededError as e:
        # the guard bounds n; what was settled is a lower bound
        logger.warning("DUT(2,2) not settled: %s", e)
        values["DUT(2,2)"] = {"lower_bound": e.partial.get("lower_bound")}
    return {
        "command": "thresholds",
        "params": {"schur_r": args.schur_r},
        "found": True,
        "witness": values,
        "reports": [r.to_dict() for r in reports],
        "checks": [c for r in reports for c in r.checks],
    }


COMMANDS = {
    "verify-identities": cmd_verify_identities,
    "search": cmd_search,
    "consistency": cmd_consistency,
    "build": cmd_build,
    "hindman": cmd_hindman,
    "thresholds": cmd_thresholds,
}


def _error_payload(command: Optional[str], e: Exception) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "command": command,
        "found": False,
        "error": {"type": type(e).__name__, "message": str(e)},
    }
    if isinstance(e, NotFoundError):
        payload["partial"] = e.partial
        payload["stats"] = e.stats
    if isinstance(e, VerificationError):
        payload["error"]["failed"] = e.failed
    return payload


def _write(payload: Dict[str, Any], stream) -> None:
    try:
        text = emit_report(payload)
    except TypeError as e:
        # un payload non canonique est un bug, pas une entrée invalide
        logger.error("Report could not be encoded: %s", e)
        raise
    stream.write(text + "\n")
    stream.flush()


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """Parse ``argv``, dispatch, print one JSON report and return the exit code."""
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    command = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        config.configure_logging(args.verbose)
        payload = COMMANDS[command](args)
    except InvalidInputError as e:
        logger.error("Invalid input: %s", e)
        _write(_error_payload(command, e), stdout)
        return EXIT_INVALID
    except NotFoundError as e:
        logger.info("%s: nothing found (%s)", command, e)
        _write(_error_payload(command, e), stdout)
        return EXIT_NOT_FOUND

    payload = to_canonical(payload)
    found = bool(payload.get("found", True))
    checks: List[Dict[str, Any]] = payload.get("checks", [])
    failed = [c["name"] for c in checks if not c.get("pass")]
    logger.info("%s: found=%s, %d checks, %d failed", command, found, len(checks), len(failed))
    _write(payload, stdout)
    if found and failed:
        logger.error("%s: reported a result whose checks failed: %s", command, failed)
    if not found or failed:
        return EXIT_NOT_FOUND
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
