"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data or parse error, 3 a
verification counterexample or a demo result that differs from its
expected table.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import demos, oracle
from .catalog import Catalog
from .core import classify
from .document import dumps_relation, format_table
from .errors import NeutroError
from .query import evaluate, format_query, parse

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_MISMATCH = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="neutro", description="Query and check neutrosophic relations.")
    p.add_argument("--catalog", help="catalog manifest (default $NEUTRO_CATALOG or ./neutro-catalog.json)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("load", help="register a relation document under a name")
    c.add_argument("name")
    c.add_argument("file")
    sub.add_parser("list", help="list catalog relations")
    c = sub.add_parser("show", help="print a relation")
    c.add_argument("name")
    c = sub.add_parser("check", help="classify a relation")
    c.add_argument("name")
    c = sub.add_parser("eval", help="evaluate a query against the catalog")
    c.add_argument("--raw", action="store_true", help="apply operators without split/combine")
    c.add_argument("query")
    c = sub.add_parser("verify", help="exhaustively compare operators with their fuzzy counterparts")
    c.add_argument("--grid", type=int, default=2, help="grade grid denominator k (default 2)")
    c.add_argument("--budget", type=int, default=4, help="largest tuple space to enumerate (default 4)")
    c.add_argument("--json", action="store_true", help="print the report as JSON")
    c = sub.add_parser("demo", help="run a bundled worked example")
    c.add_argument("which", choices=["example2", "tanks"])
    return p


def _catalog(args) -> Catalog:
    return Catalog.open(args.catalog or Catalog.default_path())


def cmd_load(args, out) -> int:
    cat = _catalog(args)
    rel = cat.add(args.name, args.file)
    cat.save()
    print("loaded {0}: {1}, {2} stored tuples".format(args.name, rel.scheme, len(rel)), file=out)
    return EXIT_OK


def cmd_list(args, out) -> int:
    cat = _catalog(args)
    if not len(cat):
        print("(catalog is empty)", file=out)
    for name in cat:
        rel = cat[name]
        print("{0}  {1}  {2} stored tuples".format(name, rel.scheme.header(), len(rel)), file=out)
    return EXIT_OK


def cmd_show(args, out) -> int:
    print(format_table(_catalog(args)[args.name]), file=out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    shape = classify(_catalog(args)[args.name])
    for field in ("consistent", "complete", "total", "pseudo_consistent", "functional"):
        print("{0}: {1}".format(field, "yes" if getattr(shape, field) else "no"), file=out)
    return EXIT_OK


def cmd_eval(args, out) -> int:
    expr = parse(args.query)
    result = evaluate(expr, _catalog(args), mode="raw" if args.raw else "robust")
    print(format_table(result), file=out)
    return EXIT_OK


def _verdict_record(v: oracle.Verdict) -> dict:
    rec = {"holds": v.holds, "instances": v.instances}
    if not v.holds:
        rec["reason"] = v.reason
        rec["counterexample"] = [dumps_relation(r) for r in v.counterexample or ()]
    return rec


def run_verification(grid: oracle.GradeGrid, budget: oracle.Budget) -> List[dict]:
    report = []
    for case in oracle.standard_cases():
        entry = {"operator": case.name, "schemes": [str(s) for s in case.schemes]}
        try:
            strong = oracle.check_strong(case.neutro_op, case.fuzzy_op, case.schemes, grid, budget, case.name)
            weak = oracle.check_weak(case.neutro_op, case.fuzzy_op, case.schemes, grid, budget, case.name)
        except oracle.BudgetExceeded as exc:
            entry["skipped"] = str(exc)
        else:
            entry["strong"] = _verdict_record(strong)
            entry["weak"] = _verdict_record(weak)
        report.append(entry)
    seen = set()
    for case in oracle.standard_cases():
        for s in case.schemes:
            if s in seen:
                continue
            seen.add(s)
            entry = {"operator": "singleton completions", "schemes": [str(s)]}
            try:
                entry["strong"] = _verdict_record(oracle.check_singleton_completions(s, grid, budget))
            except oracle.BudgetExceeded as exc:
                entry["skipped"] = str(exc)
            report.append(entry)
    return report


def cmd_verify(args, out) -> int:
    if args.grid < 1 or args.budget < 1:
        raise _UsageError("--grid and --budget must be positive")
    grid = oracle.GradeGrid(args.grid)
    budget = oracle.Budget(max_tuples=args.budget, max_grid=max(args.grid, oracle.Budget().max_grid))
    report = run_verification(grid, budget)
    failed = any(not e[k]["holds"] for e in report for k in ("strong", "weak") if k in e)
    if all("skipped" in e for e in report):
        print("every check exceeds the budget", file=sys.stderr)
        return EXIT_DATA
    if args.json:
        json.dump({"grid": args.grid, "budget": args.budget, "checks": report}, out, indent=2)
        print(file=out)
    else:
        for e in report:
            head = "{0} on {1}".format(e["operator"], ", ".join(e["schemes"]))
            if "skipped" in e:
                print("SKIP  {0}: {1}".format(head, e["skipped"]), file=out)
                continue
            for kind in ("strong", "weak"):
                if kind not in e:
                    continue
                rec = e[kind]
                status = "ok  " if rec["holds"] else "FAIL"
                print("{0}  {1} [{2}] {3} instances".format(status, head, kind, rec["instances"]), file=out)
                if not rec["holds"]:
                    print("      {0}".format(rec["reason"]), file=out)
                    for doc in rec["counterexample"]:
                        for line in doc.splitlines():
                            print("      " + line, file=out)
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_demo(args, out) -> int:
    if args.which == "example2":
        steps = demos.run_example2()
    else:
        steps = [demos.run_tanks()]
    ok = True
    for step in steps:
        print("{0} = {1}".format(step.name, format_query(parse(step.query))), file=out)
        print(format_table(step.result), file=out)
        print("{0} stored tuples; {1}".format(
            len(step.result), "matches expected" if step.matches else "DIFFERS from expected"
        ), file=out)
        print(file=out)
        ok = ok and step.matches
    if args.which == "tanks":
        vague = demos.undecided(steps[0].result)
        if vague:
            print(
                "warning: low confidence; belief and doubt both below 0.5 for {0}, "
                "so the status of these objects cannot be decided".format(
                    ", ".join("(" + ", ".join(t) + ")" for t in vague)
                ),
                file=out,
            )
    return EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = {
    "load": cmd_load,
    "list": cmd_list,
    "show": cmd_show,
    "check": cmd_check,
    "eval": cmd_eval,
    "verify": cmd_verify,
    "demo": cmd_demo,
}


def run_cli(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise _UsageError("a command is required")
        return COMMANDS[args.command](args, out)
    except _UsageError as exc:
        print("usage error: {0}".format(exc), file=sys.stderr)
        build_parser().print_usage(sys.stderr)
        return EXIT_USAGE
    except (NeutroError, OSError, ValueError) as exc:
        print("error: {0}: {1}".format(type(exc).__name__, exc), file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(run_cli())
