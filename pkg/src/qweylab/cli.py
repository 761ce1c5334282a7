"""Command-line surface: evaluate expressions, reduce modulo the moment
ideal, build representations, and run the verification suite."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .checks import CHECKS, run_verification_suite
from .config import ConfigError, load_config
from .errors import QWeylError
from .expr import format_localized, format_pbw, parse_expression
from .moment import moment_ideal_reduce
from .qweyl import LocalizedElement, PBWElement
from .rootofunity import export_rep
from .scalars import Scalar


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qweylab",
        description="exact q-Weyl algebra workbench",
    )
    parser.add_argument("--version", action="version", version=f"qweylab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="normal-order an expression")
    p_eval.add_argument("expression")
    p_eval.add_argument("--config", required=True)

    p_verify = sub.add_parser("verify", help="run the verification suite")
    p_verify.add_argument("--config")
    p_verify.add_argument(
        "--only", help="comma-separated check ids (see --list-checks)"
    )
    p_verify.add_argument("--verbose", action="store_true")
    p_verify.add_argument("--out", help="write the JSON report here")
    p_verify.add_argument(
        "--list-checks", action="store_true", help="list check ids and exit"
    )

    p_rep = sub.add_parser("rep", help="representation commands")
    rep_sub = p_rep.add_subparsers(dest="rep_command", required=True)
    p_build = rep_sub.add_parser("build", help="build configured representations")
    p_build.add_argument("--config", required=True)
    p_build.add_argument("--out", required=True)

    p_reduce = sub.add_parser("reduce", help="canonical form modulo the moment ideal")
    p_reduce.add_argument("expression")
    p_reduce.add_argument("--config", required=True)
    return parser


def _print_value(value) -> str:
    if isinstance(value, Scalar):
        return str(value)
    if isinstance(value, PBWElement):
        return format_pbw(value)
    if isinstance(value, LocalizedElement):
        return format_localized(value)
    return str(value)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify" and args.list_checks:
            for check_id, law, _ in CHECKS:
                print(f"{check_id}: {law}")
            return 0
        if getattr(args, "config", None) is None:
            parser.error("--config is required")
        config = load_config(args.config)
        if args.command == "eval":
            value = parse_expression(args.expression, config.spec)
            print(_print_value(value))
            return 0
        if args.command == "reduce":
            value = parse_expression(args.expression, config.spec)
            if isinstance(value, Scalar):
                value = config.spec.scalar_element(value)
            reduced = moment_ideal_reduce(value, config.datum())
            print(reduced)
            return 0
        if args.command == "rep":
            reps = config.build_reps()
            dump = [export_rep(rep) for rep in reps]
            with open(args.out, "w", encoding="utf-8") as handle:
                json.dump(dump, handle, indent=1)
            print(f"wrote {len(dump)} representation(s) to {args.out}")
            return 0
        if args.command == "verify":
            only = set(args.only.split(",")) if args.only else None
            report = run_verification_suite(config, only=only, verbose=args.verbose)
            for rec in report["checks"]:
                line = f"{rec['status']:<7s} {rec['check_id']}"
                if rec["detail"]:
                    line += f"  [{rec['detail']}]"
                print(line)
            summary = report["summary"]
            print(
                f"{summary['pass']} passed, {summary['fail']} failed, "
                f"{summary['skipped']} skipped"
            )
            if args.out:
                with open(args.out, "w", encoding="utf-8") as handle:
                    json.dump(report, handle, indent=1)
            return 0 if summary["ok"] else 1
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except QWeylError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
