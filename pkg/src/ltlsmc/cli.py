"""Command-line front end: ``ltlsmc parse|classify|monitor|check``.

Exit status: 0 when every property passes, 1 on a property failure,
2 on usage or input errors (including properties that cannot be monitored).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from ltlsmc.errors import LtlsmcError, ParseError
from ltlsmc.formula import classify, parse_property_lines, rewrite_to_basis, to_text, to_unicode
from ltlsmc.monitor import Master, read_trace
from ltlsmc.oracle import Verdict
from ltlsmc.smc import check_schedule, explore, load_program_file

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_DEPTH = 10


class InputError(Exception):
    """Wraps an input problem together with the file it came from."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def _properties(args) -> list[tuple[int, str, object]]:
    if args.property is not None:
        text, origin = "\n".join(args.property), "<command line>"
    else:
        text, origin = _read(args.properties), args.properties
    try:
        return parse_property_lines(text)
    except ParseError as exc:
        raise InputError(f"{origin}:{exc.line}:{exc.column}: syntax error: {exc.message}") from None


def _emit_json(out: TextIO, doc) -> None:
    out.write(json.dumps(doc, indent=2) + "\n")


# -- commands -------------------------------------------------------------------


def run_parse(args, out: TextIO) -> int:
    rows = []
    for line, source, f in _properties(args):
        basis = rewrite_to_basis(f)
        rows.append(
            {
                "line": line,
                "property": source,
                "ast": repr(f),
                "text": to_text(f),
                "basis": to_text(basis),
                "basis_unicode": to_unicode(basis),
            }
        )
    if args.format == "json":
        _emit_json(out, rows)
    else:
        for r in rows:
            out.write(f"line {r['line']}: {r['property']}\n")
            out.write(f"  ast:   {r['ast']}\n")
            out.write(f"  basis: {r['basis_unicode']}\n")
        out.write(f"{len(rows)} formula{'s' if len(rows) != 1 else ''}\n")
    return EXIT_OK


def run_classify(args, out: TextIO) -> int:
    rows = []
    for line, source, f in _properties(args):
        cls = classify(f)
        rows.append({"line": line, "property": source, "class": cls.value, "monitorable": cls.monitorable})
    if args.format == "json":
        _emit_json(out, rows)
    else:
        for r in rows:
            note = "supported" if r["monitorable"] else "not supported for monitoring"
            out.write(f"line {r['line']}: {r['property']}  {r['class']}  ({note})\n")
    return EXIT_OK


def _master(args) -> Master:
    props = _properties(args)
    try:
        return Master.from_sources([(src, f) for _, src, f in props])
    except LtlsmcError as exc:
        raise InputError(str(exc)) from None


def run_monitor(args, out: TextIO) -> int:
    master = _master(args)
    log = []
    count = 0
    try:
        with open(args.trace, encoding="utf-8") as fh:
            for snap in read_trace(fh):
                msgs = master.step(snap)
                count += 1
                if args.verbose:
                    log.append({"state": snap.index, "root_messages": [str(m) for m in msgs]})
    except OSError as exc:
        raise InputError(f"{args.trace}: {exc.strerror or exc}") from None
    except LtlsmcError as exc:
        raise InputError(f"{args.trace}: {exc}") from None
    finally:
        master.close()
    records = master.finish()
    failed = any(Verdict(r["verdict"]).is_failure for r in records)
    if args.format == "json":
        doc = {"states": count, "results": records}
        if args.verbose:
            doc["log"] = log
        _emit_json(out, doc)
    else:
        for row in log:
            out.write(f"state {row['state']}: {' | '.join(row['root_messages'])}\n")
        out.write(f"{count} states\n")
        for r in records:
            at = "" if r["resolved_at_state"] is None else f"  (resolved at state {r['resolved_at_state']})"
            out.write(f"{r['property']}  [{r['class']}]  {r['verdict']}{at}\n")
    return EXIT_FAIL if failed else EXIT_OK


def run_check(args, out: TextIO) -> int:
    if args.depth < 1:
        raise InputError("--depth must be at least 1")
    if args.jobs < 1:
        raise InputError("--jobs must be at least 1")
    props = [(src, f) for _, src, f in _properties(args)]
    try:
        program = load_program_file(args.program)
    except OSError as exc:
        raise InputError(f"{args.program}: {exc.strerror or exc}") from None
    except LtlsmcError as exc:
        raise InputError(f"{args.program}: {exc}") from None
    try:
        if args.schedule is not None:
            report, replayed = check_schedule(program, props, args.schedule)
        else:
            report, replayed = explore(program, props, depth_bound=args.depth, jobs=args.jobs), None
    except LtlsmcError as exc:
        raise InputError(str(exc)) from None

    if args.format == "json":
        doc = report.to_dict()
        if replayed is not None and args.verbose:
            doc["log"] = [row.to_dict() for row in replayed.states]
        _emit_json(out, doc)
    else:
        _human_report(out, report, replayed, args.verbose)
    return EXIT_FAIL if report.failed else EXIT_OK


def _human_report(out: TextIO, report, replayed, verbose: bool) -> None:
    if replayed is not None and verbose:
        for row in replayed.states:
            pcs = " ".join(f"{k}@{v}" for k, v in row.pcs.items())
            vals = " ".join(f"{k}={str(v).lower()}" for k, v in row.variables.items())
            msgs = " | ".join(str(m) for m in row.messages) or "-"
            out.write(f"s{row.index:<3} {row.thread or '-':<4} {pcs}  {vals}  root: {msgs}\n")
    elif verbose:
        for i, r in enumerate(report.iterations):
            vs = " ".join(v.value for v in r.verdicts)
            out.write(f"#{i} {','.join(r.schedule) or '(empty)'}  {r.termination.value}  {vs}\n")
    bound = "none" if report.depth_bound is None else report.depth_bound
    out.write(f"iterations: {len(report.iterations)}  depth bound: {bound}\n")
    out.write("termination: " + ", ".join(f"{k} {v}" for k, v in report.termination_counts().items()) + "\n")
    for o in report.outcomes:
        out.write(f"{o.source}  [{o.cls.value}]  {o.verdict.value}\n")
        out.write("  counts: " + ", ".join(f"{k} {v}" for k, v in o.counts.items()) + "\n")
        if o.first_violation:
            fv = o.first_violation
            at = "" if fv["resolved_at_state"] is None else f" at state {fv['resolved_at_state']}"
            out.write(
                f"  first violation: iteration {fv['iteration']}, {fv['verdict']}{at},"
                f" schedule {','.join(fv['schedule']) or '(empty)'}\n"
            )
    out.write(f"verdict: {report.verdict.value}\n")


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--properties", metavar="FILE", help="property file, one formula per line")
    src.add_argument("--property", "-e", action="append", metavar="TEXT", help="inline property (repeatable)")
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--verbose", "-v", action="store_true", help="print per-state root messages")

    parser = argparse.ArgumentParser(prog="ltlsmc", description="LTL monitoring and stateless model checking")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("parse", parents=[common], help="print syntax trees and basis rewrites")
    sub.add_parser("classify", parents=[common], help="print the temporal class of each property")
    mon = sub.add_parser("monitor", parents=[common], help="monitor a recorded trace")
    mon.add_argument("--trace", required=True, metavar="FILE", help="JSON lines: {\"state\": i, \"aps\": {...}}")
    chk = sub.add_parser("check", parents=[common], help="explore all interleavings of a program")
    chk.add_argument("--program", required=True, metavar="FILE")
    chk.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help=f"depth bound (default {DEFAULT_DEPTH})")
    chk.add_argument("--schedule", metavar="LIST", help="run one schedule only, e.g. T2,T2,T1")
    chk.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


COMMANDS = {"parse": run_parse, "classify": run_classify, "monitor": run_monitor, "check": run_check}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except InputError as exc:
        err.write(f"ltlsmc: error: {exc}\n")
        return EXIT_INPUT
    except LtlsmcError as exc:
        err.write(f"ltlsmc: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
