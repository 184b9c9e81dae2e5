"""Command-line front end for scripted queries and end-to-end verification.

Exit status: 0 certified (or query succeeded), 1 verification failed,
2 inconclusive, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import dsl, paperlab
from .groebner import DEFAULT_BUDGET

BUDGET_ENV = "ENRIQUESLAB_BUDGET"
DEFAULT_PRIMES = (101, 211)
EXIT_OK, EXIT_FAILED, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _budget(args) -> int | None:
    if args.budget is not None:
        value = args.budget
    elif os.environ.get(BUDGET_ENV):
        try:
            value = int(os.environ[BUDGET_ENV])
        except ValueError:
            raise UsageError(f"{BUDGET_ENV} must be an integer") from None
    else:
        value = DEFAULT_BUDGET
    if value <= 0:
        raise UsageError("budget must be positive")
    return value


def _primes(args) -> tuple[int, ...]:
    primes = tuple(args.prime) if args.prime else DEFAULT_PRIMES
    for p in primes:
        try:
            paperlab._check_prime(p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return primes


def dumps_report(report: paperlab.VerificationReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _write_report(report: paperlab.VerificationReport, out: Path | None):
    if out is None:
        return
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(dumps_report(report), encoding="utf-8")
    (out / "summary.txt").write_text(report.summary() + "\n", encoding="utf-8")
    timings = {f"{r.name}@{r.prime}" if r.prime else r.name: round(r.timing, 3) for r in report.records}
    (out / "timing.json").write_text(json.dumps(timings, indent=2, sort_keys=True) + "\n",
                                     encoding="utf-8")


def _emit(report: paperlab.VerificationReport, fmt: str):
    if fmt == "structured":
        sys.stdout.write(dumps_report(report))
    else:
        print(report.summary())


def cmd_verify(args) -> int:
    primes = _primes(args)
    budget = _budget(args)
    skip = tuple(args.skip or ())
    report = paperlab.verify_all(primes, args.seed, budget=budget, jobs=args.jobs, skip=skip,
                                 stretch=args.stretch_ideal_divisor_check)
    _write_report(report, args.output)
    _emit(report, args.format)
    return report.exit_code


def cmd_query(args) -> int:
    if args.expr is not None:
        text = args.expr
    elif args.file is not None:
        text = Path(args.file).read_text(encoding="utf-8") if args.file != "-" else sys.stdin.read()
    else:
        raise UsageError("give a script file, '-' for stdin, or -e TEXT")
    try:
        results = dsl.run(text)
    except (dsl.ParseError, dsl.EvalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    if args.format == "structured":
        rows = [{"statement": dsl.statement_source(r.statement), "result": r.text} for r in results]
        sys.stdout.write(json.dumps(rows, indent=2, ensure_ascii=False) + "\n")
    else:
        for r in results:
            print(f"{dsl.statement_source(r.statement)}  =>  {r.text}")
    return EXIT_OK


def cmd_instance_dump(args) -> int:
    (p,) = _primes(args)[:1]
    inst = paperlab.build_instance(p, args.seed)
    text = json.dumps(inst.to_dict(), indent=2, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_instance_load(args) -> int:
    try:
        data = json.loads(Path(args.file).read_text(encoding="utf-8"))
        inst = paperlab.PaperInstance.from_dict(data)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot load instance: {exc}") from None
    if not args.verify:
        rec = paperlab.verify_specialization_decomposition(inst)
        print(f"instance p={inst.p} seed={inst.seed}: {len(inst.F)} terms in F, "
              f"reduction identity {'holds' if rec.values['reduction_identity'] else 'FAILS'}")
        return EXIT_OK if rec.status == paperlab.VERIFIED else EXIT_FAILED
    report = paperlab.nonalgebraicity_report(inst, skip=tuple(args.skip or ()), budget=_budget(args),
                                             jobs=args.jobs, stretch=args.stretch_ideal_divisor_check)
    _write_report(report, args.output)
    _emit(report, args.format)
    return report.exit_code


def _add_run_flags(p: argparse.ArgumentParser, with_primes: bool = True):
    if with_primes:
        p.add_argument("--prime", type=int, action="append",
                       help="prime for the reductions (repeatable; default 101 and 211)")
        p.add_argument("--seed", type=int, default=1)
    p.add_argument("--budget", type=int, default=None,
                   help=f"reduction steps per Groebner computation (default {DEFAULT_BUDGET}, "
                        f"or ${BUDGET_ENV})")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--format", choices=("human", "structured"), default="human")
    p.add_argument("--skip", action="append", choices=paperlab.CHECK_NAMES, metavar="CHECK",
                   help="skip a check (the verdict then cannot be certified)")
    p.add_argument("--stretch-ideal-divisor-check", action="store_true",
                   help="also check the divisor identity chart by chart on ideals")
    p.add_argument("--output", type=Path, default=None,
                   help="directory for report.json, summary.txt and timing.json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="enriqueslab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("query", help="evaluate a Chow-ring / cohomology script")
    q.add_argument("file", nargs="?", help="script file, or - for stdin")
    q.add_argument("-e", "--expr", help="inline script text")
    q.add_argument("--format", choices=("human", "structured"), default="human")
    q.set_defaults(func=cmd_query)

    v = sub.add_parser("verify", help="build the instance(s) and run every check")
    _add_run_flags(v)
    v.set_defaults(func=cmd_verify)

    inst = sub.add_parser("instance", help="write or read instance files")
    isub = inst.add_subparsers(dest="action", required=True, parser_class=_Parser)
    d = isub.add_parser("dump", help="sample an instance and print it")
    d.add_argument("--prime", type=int, action="append")
    d.add_argument("--seed", type=int, default=1)
    d.add_argument("-o", "--output", help="file to write instead of stdout")
    d.set_defaults(func=cmd_instance_dump)
    ld = isub.add_parser("load", help="read an instance file; --verify runs the checks on it")
    ld.add_argument("file")
    ld.add_argument("--verify", action="store_true")
    _add_run_flags(ld, with_primes=False)
    ld.set_defaults(func=cmd_instance_load)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"enriqueslab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
