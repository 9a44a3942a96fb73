#!/usr/bin/env python3
"""
Command-line interface for cyclic-weights.

Subcommands:
    field               Construct F_{p^m} and print its modulus and primitive element
    classify            Rank and sign class of Tr(a x^(p^k+1)) for every nonzero a
    lemma3              Closed-form vs enumerated rank/sign class sizes (alias: rank-distribution)
    wd                  Weight distribution of C1 or C2 (theory, empirical or both)
    suite               Reproduce every reference parameter set end to end

Exit codes: 0 success, 1 verification mismatch, 2 invalid input, 3 work limit,
4 unsupported case.

Usage:
    cyclic-weights wd --p 3 --m 6 --k 1 --code c1 --source both
    python -m src.cli suite --workers 4
"""

import argparse
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple

from src.algebra.gf import FieldCtx, make_field
from src.algebra.quadform import classify_all
from src.algebra.specdist import DEFAULT_SWEEP_LIMIT, check_work, verify_rsets
from src.codes.enumeration import STRATEGIES
from src.codes.reference import REFERENCE_CASES, ReferenceCase
from src.codes.theory import distribution_diff, theoretical_wd
from src.codes.trace_codes import empirical_wd
from src.codes.types import CodeFamily
from src.errors import (
    ConsistencyError,
    InvalidParameterError,
    UnsupportedCaseError,
    WorkLimitExceeded,
)
from src.infrastructure.config import FORMATS, SOURCES, RunConfig, load_config
from src.infrastructure.logging import get_logger
from src.infrastructure.reports import (
    render_comparison,
    render_distribution,
    render_json,
    write_output,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_WORK_LIMIT = 3
EXIT_UNSUPPORTED = 4

CommandResult = Tuple[str, int]


def create_parser() -> argparse.ArgumentParser:
    """
    Create and configure the argument parser.

    Returns:
        Configured ArgumentParser instance
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--format',
        choices=FORMATS,
        default='json',
        help='Output format (default: json)'
    )
    common.add_argument(
        '--modulus',
        type=str,
        help='Field modulus as coefficients c0,c1,...,1 (constant term first)'
    )
    common.add_argument(
        '--work-limit',
        type=int,
        dest='work_limit',
        help='Largest number of enumerated parameter tuples (env: CW_WORK_LIMIT)'
    )
    common.add_argument(
        '--workers',
        type=int,
        help='Worker processes for sweeps (default: available cores, env: CW_WORKERS)'
    )
    common.add_argument(
        '--out',
        type=str,
        help='Write output to this file instead of stdout'
    )
    common.add_argument(
        '--verbose', '-v',
        action='store_true',
        help='Log progress at INFO level on stderr'
    )

    parser = argparse.ArgumentParser(
        prog='cyclic-weights',
        description='Cyclic Weights - weight distributions of the p-ary trace codes C1 and C2',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s field --p 3 --m 2
  %(prog)s lemma3 --p 3 --m 6 --k 1
  %(prog)s wd --p 3 --m 6 --k 1 --code c1 --source both
  %(prog)s wd --p 3 --m 8 --k 1 --code c2 --source empirical --format table
  %(prog)s suite --strategy direct --workers 1
        """
    )
    sub = parser.add_subparsers(dest='command', required=True, metavar='COMMAND')

    field = sub.add_parser('field', parents=[common], help='Construct a finite field')
    field.add_argument('--p', type=int, required=True, help='Odd prime characteristic')
    field.add_argument('--m', type=int, required=True, help='Extension degree')

    for name, aliases, text in (
        ('classify', [], 'Classify every form Tr(a x^(p^k+1))'),
        ('lemma3', ['rank-distribution'], 'Check the rank/sign class sizes against closed form'),
    ):
        cmd = sub.add_parser(name, aliases=aliases, parents=[common], help=text)
        cmd.add_argument('--p', type=int, required=True, help='Odd prime characteristic')
        cmd.add_argument('--m', type=int, required=True, help='Extension degree')
        cmd.add_argument('--k', type=int, required=True, help='Exponent parameter, 1 <= k < m')

    wd = sub.add_parser('wd', parents=[common], help='Weight distribution of C1 or C2')
    wd.add_argument('--p', type=int, required=True, help='Odd prime characteristic')
    wd.add_argument('--m', type=int, required=True, help='Extension degree')
    wd.add_argument('--k', type=int, required=True, help='Exponent parameter, 1 <= k < m')
    wd.add_argument('--code', choices=['c1', 'c2'], default='c1', help='Code family')
    wd.add_argument(
        '--source', choices=SOURCES, default='theory',
        help='Closed form, enumeration, or both with a diff (default: theory)'
    )
    wd.add_argument(
        '--strategy', choices=STRATEGIES, default='transform',
        help='C1 enumeration engine (default: transform)'
    )

    suite = sub.add_parser('suite', parents=[common], help='Run every reference case')
    suite.add_argument(
        '--strategy', choices=STRATEGIES, default='transform',
        help='C1 enumeration engine (default: transform)'
    )

    return parser


def _field(config: RunConfig) -> FieldCtx:
    return make_field(config.p, config.m, config.modulus, table_cap=config.table_cap)


def cmd_field(config: RunConfig) -> CommandResult:
    """Field description: p, m, modulus and alpha."""
    return render_json(_field(config).to_dict()), EXIT_OK


def cmd_classify(config: RunConfig) -> CommandResult:
    """Profile of every nonzero a, in alpha-power order."""
    ctx = _field(config)
    check_work("classification sweep", ctx.order, config.work_limit, DEFAULT_SWEEP_LIMIT)
    profiles = classify_all(ctx, config.k)
    return render_json([profile.to_dict(ctx) for profile in profiles]), EXIT_OK


def cmd_lemma3(config: RunConfig) -> CommandResult:
    """Closed-form vs enumerated R-set sizes; exit 1 on mismatch."""
    ctx = _field(config)
    report = verify_rsets(ctx, config.k, workers=config.workers, work_limit=config.work_limit)
    return render_json(report.to_dict()), EXIT_OK if report.match else EXIT_MISMATCH


def cmd_wd(config: RunConfig) -> CommandResult:
    """Weight distribution from theory, enumeration, or both compared."""
    p, m, k = config.p, config.m, config.k
    family = CodeFamily.parse(config.family)

    theory = None
    if config.source in ("theory", "both"):
        theory = theoretical_wd(p, m, k, family)
        if config.source == "theory":
            return render_distribution(theory, config.format), EXIT_OK

    empirical = empirical_wd(
        _field(config), k, family,
        strategy=config.strategy, workers=config.workers, work_limit=config.work_limit
    )
    if theory is None:
        return render_distribution(empirical, config.format), EXIT_OK

    diff = distribution_diff(theory, empirical)
    if diff:
        w, t, e = diff[0]
        print(f"first difference at weight {w}: theory {t}, empirical {e}", file=sys.stderr)
    code = EXIT_MISMATCH if diff else EXIT_OK
    return render_comparison(theory, empirical, diff, config.format), code


def _run_case(case: ReferenceCase, config: RunConfig) -> Dict[str, Any]:
    """Theory, enumeration, reference table and R-set check for one case."""
    theory = theoretical_wd(case.p, case.m, case.k, case.family)
    ctx = make_field(case.p, case.m, table_cap=config.table_cap)
    empirical = empirical_wd(
        ctx, case.k, case.family,
        strategy=config.strategy, workers=config.workers, work_limit=config.work_limit
    )
    diff = distribution_diff(theory, empirical)
    rsets = verify_rsets(ctx, case.k, workers=config.workers)
    reference_match = theory.counts == case.counts and empirical.counts == case.counts
    return {
        "name": case.name,
        "family": case.family.value,
        "p": case.p,
        "m": case.m,
        "k": case.k,
        "minimum_distance": empirical.minimum_distance,
        "weights_match": not diff,
        "reference_match": reference_match,
        "rank_match": rsets.match,
        "passed": not diff and reference_match and rsets.match,
        "first_difference": list(diff[0]) if diff else None,
    }


def cmd_suite(config: RunConfig, cases: Optional[List[ReferenceCase]] = None) -> CommandResult:
    """Every reference case; exit 1 with the first differing triple if any fails."""
    cases = list(REFERENCE_CASES) if cases is None else cases
    logger = get_logger()
    rows = []
    for case in cases:
        logger.info(f"Suite case {case.name}")
        rows.append(_run_case(case, config))

    passed = sum(1 for row in rows if row["passed"])
    failures = [row for row in rows if not row["passed"]]
    if failures:
        first = failures[0]
        detail = first["first_difference"]
        if detail:
            w, t, e = detail
            print(
                f"{first['name']}: first difference at weight {w}: theory {t}, empirical {e}",
                file=sys.stderr
            )
        else:
            print(f"{first['name']}: reference or rank check failed", file=sys.stderr)

    if config.format == "json":
        text = render_json({
            "cases": rows,
            "passed": passed,
            "total": len(rows),
            "all_passed": not failures,
        })
    else:
        header = ["case", "weights", "reference", "ranks", "d", "result"]
        cells = [header] + [
            [
                row["name"],
                "ok" if row["weights_match"] else "FAIL",
                "ok" if row["reference_match"] else "FAIL",
                "ok" if row["rank_match"] else "FAIL",
                str(row["minimum_distance"]),
                "pass" if row["passed"] else "FAIL",
            ]
            for row in rows
        ]
        if config.format == "csv":
            lines = [",".join(line) for line in cells]
        else:
            widths = [max(len(line[i]) for line in cells) for i in range(len(header))]
            # Case names are left-aligned, every other column right-aligned
            lines = [
                "  ".join(
                    f"{v:<{widths[i]}}" if i == 0 else f"{v:>{widths[i]}}"
                    for i, v in enumerate(line)
                ).rstrip()
                for line in cells
            ]
            lines.append(f"{passed}/{len(rows)} passed")
        text = "\n".join(lines) + "\n"
    return text, EXIT_MISMATCH if failures else EXIT_OK


def _classify_failure(error: Exception) -> Tuple[int, str]:
    """Exit code and label for an expected failure."""
    if isinstance(error, InvalidParameterError):
        return EXIT_INVALID, "invalid input"
    if isinstance(error, WorkLimitExceeded):
        return EXIT_WORK_LIMIT, "work limit exceeded"
    if isinstance(error, UnsupportedCaseError):
        return EXIT_UNSUPPORTED, "unsupported case"
    return EXIT_MISMATCH, "consistency check failed"


COMMANDS: Dict[str, Callable[[RunConfig], CommandResult]] = {
    "field": cmd_field,
    "classify": cmd_classify,
    "lemma3": cmd_lemma3,
    "rank-distribution": cmd_lemma3,
    "wd": cmd_wd,
    "suite": cmd_suite,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one command and return its exit code.

    Args:
        argv: Argument list (defaults to sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = create_parser()
    args = parser.parse_args(argv)

    try:
        config = load_config(args)
        get_logger(enable_cloud_logging=config.cloud_logging, level=config.log_level)
        text, code = COMMANDS[config.command](config)
        try:
            write_output(text, config.out)
        except OSError as e:
            raise InvalidParameterError(f"cannot write output to {config.out}: {e}") from e
        return code
    except (
        InvalidParameterError, WorkLimitExceeded, UnsupportedCaseError, ConsistencyError
    ) as e:
        code, label = _classify_failure(e)
        get_logger().log_error(component="cli", error=e, context={"command": args.command})
        print(f"cyclic-weights: {label}: {e}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
