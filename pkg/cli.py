"""
Command-line front end for the Weil character engine

    python cli.py eval   --module Z3^2 --g "[[1,1],[0,1]]" --method both
    python cli.py verify --module H(3,9) --seed 7 --samples 50
    python cli.py table  --module Z3^2 --enumerate
    python cli.py --selftest

Machine output goes to stdout, logs to stderr.
Exit codes: 0 success, 1 failed checks or invalid context, 2 usage error.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from algebra.errors import RejectedInputError, WeilError
from config import Config
from orchestrator import METHODS, WeilCharacterOrchestrator
from tools.fixtures import FIXTURES, parse_matrix_arg, parse_module_arg
from tools.formatting import report_frame, table_frame, write_csv
from utils.helpers import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

SELFTEST_FIXTURES = ("Z3^2", "H(3,3)", "Z5^2")
SELFTEST_SAMPLES = 20


def _dumps(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, separators=(",", ":"))


def _exit_code(results: Dict[str, Any]) -> int:
    status = results.get("workflow_status")
    if status == "completed":
        return EXIT_OK
    if results.get("error_type") == RejectedInputError.error_type:
        return EXIT_USAGE
    return EXIT_FAILED


def _report_error(results: Dict[str, Any]) -> None:
    print(f"error: {results.get('error', 'unknown error')}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="weil",
        description="Exact character values of the Weil representation over Z/m, m odd.",
    )
    p.add_argument("--selftest", action="store_true", help=f"Run the identity battery on {', '.join(SELFTEST_FIXTURES)}.")
    p.add_argument("--log-level", default=None, help=f"Logging level (default: {Config.LOG_LEVEL}).")
    sub = p.add_subparsers(dest="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--module", required=True,
        help=f"Fixture name ({', '.join(FIXTURES)}), path to a JSON file, or inline JSON.",
    )
    common.add_argument("--lambda-s", type=int, default=1, dest="lambda_s", help="Unit s for λ(r) = exp(2πi·s·r/m) (default: 1).")
    common.add_argument("--save-report", action="store_true", dest="save_report", help=f"Also save the results under {Config.REPORTS_DIR}/.")

    ev = sub.add_parser("eval", parents=[common], help="Evaluate ψ(g) for one element.")
    ev.add_argument("--g", required=True, help="Row-major integer matrix as JSON, e.g. [[1,1],[0,1]].")
    ev.add_argument("--method", choices=METHODS, default="formula", help="Evaluation path (default: formula).")
    ev.add_argument("--format", choices=["json"], default="json", dest="fmt")

    ve = sub.add_parser("verify", parents=[common], help="Run the identity battery, one JSON line per check.")
    ve.add_argument("--seed", type=int, default=Config.DEFAULT_SEED, help=f"Sampling seed (default: {Config.DEFAULT_SEED}).")
    ve.add_argument("--samples", type=int, default=Config.DEFAULT_SAMPLES, help=f"Random elements (default: {Config.DEFAULT_SAMPLES}).")
    ve.add_argument("--format", choices=["json", "csv"], default="json", dest="fmt")

    ta = sub.add_parser("table", parents=[common], help="Character table rows g,order,c,eps,psi.")
    mode = ta.add_mutually_exclusive_group()
    mode.add_argument("--enumerate", action="store_true", dest="enumerate_all", help="Every element of Sp(V), small V only (default).")
    mode.add_argument("--sample", type=int, default=None, metavar="N", help="N seeded random elements instead.")
    ta.add_argument("--seed", type=int, default=Config.DEFAULT_SEED, help=f"Sampling seed (default: {Config.DEFAULT_SEED}).")
    ta.add_argument("--format", choices=["json", "csv"], default="csv", dest="fmt")
    return p


def _finish(orchestrator: WeilCharacterOrchestrator, args: argparse.Namespace, results: Dict[str, Any]) -> None:
    if args.save_report:
        orchestrator.save_complete_results(results)


def cmd_eval(orchestrator: WeilCharacterOrchestrator, args: argparse.Namespace) -> int:
    space = parse_module_arg(args.module)
    matrix = parse_matrix_arg(args.g)
    results = orchestrator.evaluate(space, matrix, args.lambda_s, args.method)
    _finish(orchestrator, args, results)
    if results["workflow_status"] != "completed":
        _report_error(results)
        return _exit_code(results)
    print(_dumps(results["result"]))
    return EXIT_OK


def cmd_verify(orchestrator: WeilCharacterOrchestrator, args: argparse.Namespace) -> int:
    space = parse_module_arg(args.module)
    results = orchestrator.verify(space, args.lambda_s, args.seed, args.samples)
    _finish(orchestrator, args, results)
    if "checks" not in results:
        _report_error(results)
        return _exit_code(results)
    if args.fmt == "csv":
        write_csv(report_frame(results["checks"]), sys.stdout)
    else:
        for entry in results["checks"]:
            print(_dumps(entry))
    if results["failed"]:
        print(f"{results['failed']} of {len(results['checks'])} checks failed", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_table(orchestrator: WeilCharacterOrchestrator, args: argparse.Namespace) -> int:
    space = parse_module_arg(args.module)
    enumerate_all = args.sample is None
    results = orchestrator.table(space, args.lambda_s, enumerate_all, args.sample or 0, args.seed)
    _finish(orchestrator, args, results)
    if results["workflow_status"] != "completed":
        _report_error(results)
        return _exit_code(results)
    if args.fmt == "json":
        for row in results["rows"]:
            print(_dumps(row))
    else:
        write_csv(table_frame(results["rows"]), sys.stdout)
    return EXIT_OK


def selftest(orchestrator: WeilCharacterOrchestrator) -> int:
    """Identity battery on the small fixtures, one summary line each."""
    failures = 0
    for name in SELFTEST_FIXTURES:
        results = orchestrator.verify(parse_module_arg(name), 1, Config.DEFAULT_SEED, SELFTEST_SAMPLES)
        failed = results.get("failed", 1)
        failures += failed
        summary: Dict[str, Any] = {"fixture": name, "status": results["workflow_status"], "passed": results.get("passed", 0), "failed": failed}
        if "error" in results:
            summary["error"] = results["error"]
        print(_dumps(summary))
    return EXIT_OK if failures == 0 else EXIT_FAILED


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "table": cmd_table}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level or Config.LOG_LEVEL, Config.LOG_FILE)

    if not args.selftest and args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    try:
        orchestrator = WeilCharacterOrchestrator()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.selftest:
            return selftest(orchestrator)
        return COMMANDS[args.command](orchestrator, args)
    except RejectedInputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except WeilError as e:
        logger.error(f"Invalid context ({e.error_type}): {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
