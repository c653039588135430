"""Command-line entry point ``hbg``.

Exit codes: 0 success, 1 definite verification failure, 2 search budget
exhausted, 64 usage, file or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import corpus
from .abelian import invariants
from .errors import HbgError
from .homcount import BUILTIN_GROUPS, builtin_group, count_homomorphisms
from .presentation import equal_canonical, load_presentation
from .search import SearchBudget, Unknown, derive
from .tietze import load_script, replay_script
from .word import parse_word

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _group_name(text: str) -> str:
    if text != "all" and text not in BUILTIN_GROUPS:
        raise argparse.ArgumentTypeError(
            f"unknown group {text!r}; choose from all, {', '.join(BUILTIN_GROUPS)}")
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print one JSON object instead of the human report")
    defaults = SearchBudget()

    parser = _ArgumentParser(prog="hbg", description="Verify group presentations and Tietze reductions.")
    parser.add_argument("--json", action="store_true", default=False, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_ArgumentParser)
    sub.required = True

    p = sub.add_parser("reduce", parents=[common], help="freely reduce a word expression")
    p.add_argument("expr")
    p.add_argument("--gens", help="space separated alphabet; default: letters in order of appearance")

    p = sub.add_parser("eq", parents=[common], help="compare two presentations up to canonical form")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("snf", parents=[common], help="abelianization invariants")
    p.add_argument("pres")

    p = sub.add_parser("homcount", parents=[common], help="count homomorphisms into small groups")
    p.add_argument("pres")
    p.add_argument("--group", required=True, type=_group_name, help="builtin group name or 'all'")
    p.add_argument("--workers", type=_positive_int, default=1)

    p = sub.add_parser("derive", parents=[common], help="search for a certificate of a target word")
    p.add_argument("pres")
    p.add_argument("target")
    p.add_argument("--max-factors", type=_nonnegative_int, default=defaults.max_factors,
                   help=f"essential factors (default {defaults.max_factors})")
    p.add_argument("--max-conj", type=_nonnegative_int, default=defaults.max_conjugator_length,
                   help=f"conjugator length (default {defaults.max_conjugator_length})")
    p.add_argument("--max-len", type=_positive_int, default=defaults.max_intermediate_length,
                   help=f"intermediate word length (default {defaults.max_intermediate_length})")
    p.add_argument("--timeout", type=_positive_float, default=defaults.time_limit,
                   help=f"seconds (default {defaults.time_limit:g})")

    p = sub.add_parser("check", parents=[common], help="replay a Tietze script")
    p.add_argument("script")

    p = sub.add_parser("corpus-verify", parents=[common], help="verify the bundled corpus")
    p.add_argument("--dir", help="corpus directory (default: the bundled one)")
    return parser


# -- commands --------------------------------------------------------------

def _require_file(name: str) -> Path:
    path = Path(name)
    if not path.is_file():
        raise UsageError(f"{name}: no such file")
    return path


def cmd_reduce(args) -> tuple[int, dict, list[str]]:
    gens = args.gens.split() if args.gens else None
    w = parse_word(args.expr, gens)
    return EXIT_OK, {"word": str(w), "length": len(w)}, [str(w)]


def cmd_eq(args):
    a = load_presentation(_require_file(args.first))
    b = load_presentation(_require_file(args.second))
    same = equal_canonical(a, b)
    text = "equal" if same else "different"
    return (EXIT_OK if same else EXIT_FAIL), {"equal": same}, [f"canonical forms are {text}"]


def cmd_snf(args):
    result = invariants(load_presentation(_require_file(args.pres)))
    return EXIT_OK, result.to_json(), [str(result)]


def cmd_homcount(args):
    p = load_presentation(_require_file(args.pres))
    names = BUILTIN_GROUPS if args.group == "all" else (args.group,)
    counts = {}
    lines = []
    for name in names:
        group = builtin_group(name)
        t0 = time.monotonic()
        n = count_homomorphisms(p, group, workers=args.workers)
        counts[name] = n
        lines.append(f"{name}: {n} ({time.monotonic() - t0:.2f}s)")
    # elapsed times stay out of the JSON so that it is reproducible
    return EXIT_OK, {"counts": counts}, lines


def cmd_derive(args):
    p = load_presentation(_require_file(args.pres))
    target = p.word(args.target)
    budget = SearchBudget(max_factors=args.max_factors, max_conjugator_length=args.max_conj,
                          max_intermediate_length=args.max_len, time_limit=args.timeout)
    result = derive(p, target, budget)
    if isinstance(result, Unknown):
        code = EXIT_FAIL if result.refuted else EXIT_UNKNOWN
        status = "refuted" if result.refuted else "unknown"
        return code, {"status": status, "reason": result.reason}, [f"{status}: {result.reason}"]
    factors = [str(f) for f in result.factors]
    noun = "factor" if len(factors) == 1 else "factors"
    lines = [f"certificate with {len(factors)} {noun}"] + [f"    {f}" for f in factors]
    return EXIT_OK, {"status": "certificate", "factors": factors}, lines


def cmd_check(args):
    script = load_script(_require_file(args.script))
    report = replay_script(script)
    lines = []
    for s in report.statuses:
        mark = "ok  " if s.ok else "FAIL"
        where = f" (line {s.line})" if s.line is not None else ""
        lines.append(f"{mark} [{s.index}] {s.description}{where}")
        if not s.ok:
            lines.append(f"     {s.message}")
    if report.error is None:
        lines.append("final presentation equals target" if report.equals_target
                     else "final presentation differs from target")
    data = report.to_json()
    data["steps"] = [{"index": s.index, "move": s.description, "ok": s.ok, "message": s.message}
                     for s in report.statuses]
    return (EXIT_OK if report.ok else EXIT_FAIL), data, lines


def cmd_corpus_verify(args):
    report = corpus.verify_corpus(args.dir)
    lines = [f"{'ok  ' if i.ok else 'FAIL'} {i.name}" + (f": {i.detail}" if i.detail else "")
             for i in report.items]
    lines.append("corpus verified" if report.ok else f"{len(report.failures())} item(s) failed")
    return (EXIT_OK if report.ok else EXIT_FAIL), report.to_json(), lines


COMMANDS = {
    "reduce": cmd_reduce,
    "eq": cmd_eq,
    "snf": cmd_snf,
    "homcount": cmd_homcount,
    "derive": cmd_derive,
    "check": cmd_check,
    "corpus-verify": cmd_corpus_verify,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, data, lines = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"hbg: {exc}", file=err)
        return EXIT_USAGE
    except (HbgError, OSError, UnicodeDecodeError) as exc:
        print(f"hbg: {exc}", file=err)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True), file=out)
    else:
        for line in lines:
            print(line, file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
