import argparse
import json
import sys
from pathlib import Path

import jsonlines

from wallx.core.errors import WallxError

_BANNER = """\
\033[1;36m  __      ____ _| | |_  __
  \\ \\ /\\ / / _` | | \\ \\/ /
   \\ V  V / (_| | | |>  <
    \\_/\\_/ \\__,_|_|_/_/\\_\\\033[0m
\033[2m  DT/PT wall-crossing combinatorics, exact arithmetic\033[0m
"""

# Options whose value may start with "-" (e.g. --mu -9/14, --chi -1,2)
_VALUE_OPTIONS = {"--mu", "--chi", "--contains", "--shift", "--lambda", "--w"}


def _print_banner():
    if sys.stdout.isatty():
        print(_BANNER)


class _Parser(argparse.ArgumentParser):
    def print_help(self, file=None):
        _print_banner()
        super().print_help(file)


def _join_negative_values(argv: list[str]) -> list[str]:
    """Rewrite `--opt -x` as `--opt=-x` for value options; argparse reads `-x` as a flag."""
    out, i = [], 0
    while i < len(argv):
        token = argv[i]
        if token in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def _emit(records) -> None:
    writer = jsonlines.Writer(sys.stdout, compact=True, sort_keys=True)
    writer.write_all(records)
    writer.close()
    sys.stdout.flush()


def _add_model_args(parser, mu: bool = True):
    parser.add_argument("--d", type=int, required=True, help="Rank of the point part")
    parser.add_argument("--a", type=int, default=1, help="Number of framing pairs (default: 1)")
    if mu:
        parser.add_argument("--mu", required=True, help="Rational shift as p/q (e.g. -9/14)")


def cmd_polytope(args, parser):
    from wallx.core.api import polytope, polytope_contains, polytope_points

    if args.contains and args.enumerate:
        parser.error("--contains is mutually exclusive with --enumerate")
    if args.contains:
        _emit([polytope_contains(args.kind, args.d, args.contains, args.a, args.w)])
    elif args.enumerate:
        _emit(polytope_points(args.kind, args.d, args.a, args.w, args.shift, args.jobs))
    else:
        _emit([polytope(args.kind, args.d, args.a, args.w)])
    return 0


def cmd_decompose(args, _parser):
    from wallx.core.api import decompose, decompose_point

    if args.points:
        _emit([decompose_point(args.chi, args.mu, d=args.d)])
    else:
        _emit([decompose(args.chi, args.a, args.mu, d=args.d)])
    return 0


def cmd_sod(args, _parser):
    from wallx.core.api import sod_summands

    _emit(sod_summands(args.d, args.a, args.mu, closed_ends=args.closed, side=args.side))
    return 0


def cmd_bwb(args, _parser):
    from wallx.core.api import bwb

    _emit(bwb(args.chi, args.lambda_, args.a, framed=args.framed,
              include_vanished=args.include_vanished, max_terms=args.max_terms, d=args.d))
    return 0


def cmd_adhm(args, _parser):
    from pydantic import ValidationError

    from wallx.core.api import adhm_check

    try:
        report = adhm_check(args.file, args.m)
    except FileNotFoundError:
        raise WallxError(f"point file not found: {args.file}", code="file-not-found")
    except ValidationError as exc:
        raise WallxError(f"malformed point file {args.file}: {exc.error_count()} error(s)",
                         code="malformed-point")
    _emit([report])
    return 0


def _golden_check(directory: Path, report: dict, update: bool) -> dict:
    path = directory / f"{report['suite']}.jsonl"
    if update:
        directory.mkdir(parents=True, exist_ok=True)
        with jsonlines.open(path, mode="w", compact=True, sort_keys=True) as writer:
            writer.write(report)
        return {"golden": report["suite"], "status": "updated"}
    if not path.exists():
        return {"golden": report["suite"], "status": "missing"}
    with jsonlines.open(path) as reader:
        frozen = list(reader)
    status = "match" if frozen == [json.loads(json.dumps(report))] else "mismatch"
    return {"golden": report["suite"], "status": status}


def cmd_verify(args, _parser):
    from wallx.core.api import verify
    from wallx.core.logger import new_run_id
    from wallx.core.wire import format_rational, parse_rational

    context = {
        "d": args.d,
        "a": args.a,
        "mu": format_rational(parse_rational(args.mu)),
        "seed": args.seed,
        "jobs": args.jobs,
    }
    golden = Path(args.golden) if args.golden else None
    if args.update_golden and golden is None:
        raise WallxError("--update-golden needs --golden DIR", code="usage")

    try:
        reports = verify(args.suite, context, run_id=new_run_id())
    except (TypeError, ValueError) as exc:
        if isinstance(exc, WallxError):
            raise
        raise WallxError(str(exc), code="invalid-params")

    records, exit_code = [], 0
    for report in reports:
        records.append(report)
        if report["failed"]:
            exit_code = 1
        if golden is not None:
            verdict = _golden_check(golden, report, args.update_golden)
            if verdict["status"] in ("missing", "mismatch"):
                exit_code = 1
            records.append(verdict)
    records.append({
        "summary": {
            "suites": len(reports),
            "passed": sum(r["passed"] for r in reports),
            "failed": sum(r["failed"] for r in reports),
        }
    })
    _emit(records)
    return exit_code


def cmd_list(args, _parser):
    from wallx.core.api import list_suites

    data = list_suites()
    if args.format == "json":
        _emit(data)
        return 0
    for s in data:
        slow = "  (slow)" if s["slow"] else ""
        print(f"  {s['name']:<24s}  {s['description']}{slow}")
    return 0


def cmd_describe(args, _parser):
    from wallx.core.api import describe_suite

    s = describe_suite(args.suite)
    if args.format == "json":
        _emit([s])
        return 0

    print(f"\n\033[1m{s['name']}\033[0m — {s['description']}")
    print()
    print("  Params:")
    for p in s["params"]:
        default = p.get("default", "(required)")
        print(f"    \033[1m{p['name']}\033[0m  ({p['type']})  default: {default}")
        if p.get("description"):
            print(f"      {p['description']}")
    print()
    return 0


def cmd_help(_args, _parser):
    _print_banner()
    print("""\
Commands:

  wallx polytope --kind K --d D [--a A] [--w W]   Print a zonotope (W, W_slice, V, Wa, Va)
    --contains "x1,...,xd"        Membership verdict with coefficient certificate
    --enumerate [--shift "s1,..."] Dominant integral chi with chi + shift inside

  wallx decompose --d D --a A --mu P/Q --chi "c1,...,cd"
                                  Level e, p, witness, type and components
    --points                      Blocks of a weight in V(d) instead (a is ignored)

  wallx sod --d D --a A --mu P/Q [--closed] [--side DT|PT|points]
                                  Summand labels with v-tuples and generator counts

  wallx bwb --lambda "e1,...,ed" --chi "..." [--a A] [--framed]
                                  Borel-Weil-Bott terms over sub-multisets of negative weights

  wallx adhm check --file point.json --m M
                                  Potential, residual flags, stability, reducedness

  wallx verify --d D --a A --mu P/Q [--suite NAME]... [--seed S] [--jobs N]
    --golden DIR                  Diff each suite report against DIR/<suite>.jsonl
    --update-golden               Write the reports into DIR instead

  wallx list suites               List verification suites
  wallx describe <suite>          Show description and params of a suite
  wallx help                      Show this help

Exit codes: 0 ok, 1 verification failure or golden mismatch, 2 usage or input error.
""")
    return 0


def _wallx_version() -> str:
    try:
        from importlib.metadata import version
        return version("wallx")
    except Exception:
        return "unknown"


def build_parser():
    parser = _Parser(
        prog="wallx",
        description="wallx — combinatorics of DT/PT wall-crossing, exact arithmetic",
    )
    sub = parser.add_subparsers(dest="command")
    subparsers = {}

    # wallx polytope
    p = sub.add_parser("polytope", help="Zonotope membership and enumeration")
    p.add_argument("--kind", required=True, choices=["W", "W_slice", "V", "Wa", "Va"])
    _add_model_args(p, mu=False)
    p.add_argument("--w", type=int, default=0, help="Total weight for W_slice (default: 0)")
    p.add_argument("--contains", default=None, metavar="VECTOR", help="Point to test")
    p.add_argument("--enumerate", action="store_true", help="List dominant integral points")
    p.add_argument("--shift", default=None, metavar="VECTOR", help="Shift added before testing")
    p.add_argument("--jobs", type=int, default=1, help="Worker processes (default: 1)")
    subparsers["polytope"] = p

    # wallx decompose
    p = sub.add_parser("decompose", help="Level, p and type of a generator weight")
    _add_model_args(p)
    p.add_argument("--chi", required=True, metavar="VECTOR", help="Dominant integral weight")
    p.add_argument("--points", action="store_true",
                   help="Split a weight of the point category V(d) into blocks")
    subparsers["decompose"] = p

    # wallx sod
    p = sub.add_parser("sod", help="Enumerate semiorthogonal summand labels")
    _add_model_args(p)
    p.add_argument("--closed", action="store_true",
                   help="Closed slope chain (needed when mu is not generic)")
    p.add_argument("--side", choices=["DT", "PT", "points"], default="DT",
                   help="DT labels, the PT pair label, or the point category V(d) (default: DT)")
    subparsers["sod"] = p

    # wallx bwb
    p = sub.add_parser("bwb", help="Borel-Weil-Bott expansion for a cocharacter")
    p.add_argument("--lambda", dest="lambda_", required=True, metavar="VECTOR",
                   help="Cocharacter exponents e1,...,ed")
    p.add_argument("--d", type=int, default=None, help="Rank (checked against --lambda)")
    p.add_argument("--chi", required=True, metavar="VECTOR", help="Weight")
    p.add_argument("--a", type=int, default=1, help="Number of framing pairs (default: 1)")
    p.add_argument("--framed", action="store_true", help="Include the framing weight")
    p.add_argument("--include-vanished", action="store_true", help="Also list vanishing terms")
    p.add_argument("--max-terms", type=int, default=None, help="Stop after this many terms")
    subparsers["bwb"] = p

    # wallx adhm
    p = sub.add_parser("adhm", help="Extended ADHM point checks")
    p.add_argument("action", choices=["check"])
    p.add_argument("--file", required=True, help="Point JSON file")
    p.add_argument("--m", type=int, required=True, help="Degree bound of alpha")
    subparsers["adhm"] = p

    # wallx verify
    p = sub.add_parser("verify", help="Run the verification suites")
    _add_model_args(p)
    p.add_argument("--suite", action="append", default=None, metavar="NAME",
                   help="Run only this suite (repeatable)")
    p.add_argument("--seed", type=int, default=0, help="Seed of sampled sweeps (default: 0)")
    p.add_argument("--jobs", type=int, default=0, help="Worker processes (default: 0, one per CPU)")
    p.add_argument("--golden", default=None, metavar="DIR", help="Golden report directory")
    p.add_argument("--update-golden", action="store_true", help="Rewrite the golden reports")
    subparsers["verify"] = p

    # wallx list
    p = sub.add_parser("list", help="List verification suites")
    p.add_argument("what", choices=["suites"], help="What to list")
    p.add_argument("--format", choices=["text", "json"], default="text",
                   help="Output format (default: text)")
    subparsers["list"] = p

    # wallx describe
    p = sub.add_parser("describe", help="Show description and params of a suite")
    p.add_argument("suite", help="Suite name (e.g. level_uniqueness)")
    p.add_argument("--format", choices=["text", "json"], default="text",
                   help="Output format (default: text)")
    subparsers["describe"] = p

    # wallx help
    subparsers["help"] = sub.add_parser("help", help="Show detailed help for all commands")

    parser.add_argument("--version", action="store_true", help="Show version and exit")
    return parser, subparsers


_COMMANDS = {
    "polytope": cmd_polytope,
    "decompose": cmd_decompose,
    "sod": cmd_sod,
    "bwb": cmd_bwb,
    "adhm": cmd_adhm,
    "verify": cmd_verify,
    "list": cmd_list,
    "describe": cmd_describe,
    "help": cmd_help,
}


def run(argv: list[str] | None = None) -> int:
    parser, subparsers = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    if args.version:
        print(f"wallx {_wallx_version()}")
        return 0

    if args.command is None:
        parser.print_help()
        return 0

    try:
        return _COMMANDS[args.command](args, subparsers[args.command])
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except WallxError as exc:
        _emit([{"error": exc.code, "message": str(exc)}])
        print(f"Error: {exc}", file=sys.stderr)
        return 2


def main():
    raise SystemExit(run())


if __name__ == "__main__":
    main()
