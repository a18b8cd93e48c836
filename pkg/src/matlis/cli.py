"""Command-line entry point: ``matlis run|suite|preset``."""

from __future__ import annotations

import argparse
import json
import sys

from .dsl import DSLError, Session, default_field
from .field import parse_field

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _field(text):
    try:
        return parse_field(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=None,
                        help="q (rationals) or p:<prime>; default from MATLIS_DEFAULT_FIELD")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cases", type=int, default=5)
    common.add_argument("--s-max", type=int, default=5, dest="s_max")
    common.add_argument("--i-max", type=int, default=3, dest="i_max")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table")
    common.set_defaults(fmt="json")
    common.add_argument("--output", "-o", default=None, help="write results here instead of stdout")

    p = _Parser(prog="matlis", description="Matlis duality toolkit for graded modules.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    r = sub.add_parser("run", parents=[common], help="execute a DSL script")
    r.add_argument("script", nargs="?", default="-", help="script file, or - for stdin")
    sub.add_parser("suite", parents=[common], help="run the randomized theorem suite")
    pr = sub.add_parser("preset", parents=[common], help="reproduce a worked example")
    pr.add_argument("name", help="example-6-2 | example-6-3 | example-6-4 | example-6-5 | "
                    "example-6-5-general(a,b,c)")
    return p


# --------------------------------------------------------------- rendering

def _cell(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def table(rows, headers):
    cells = [[_cell(r.get(h, "")) for h in headers] for r in rows]
    widths = [max([len(h)] + [len(c[i]) for c in cells]) for i, h in enumerate(headers)]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    out = [fmt.format(*headers), fmt.format(*["-" * w for w in widths])]
    out += [fmt.format(*c) for c in cells]
    return "\n".join(out)


def render_table(obj) -> str:
    op = obj.get("op")
    if op == "preset":
        head = f"preset {obj['preset']}: {'PASS' if obj['pass'] else 'FAIL'}"
        return head + "\n" + table(obj["lines"], ["line", "tag", "expected", "observed", "pass"])
    if op == "verify":
        from .suite import SuiteReport
        return SuiteReport.from_json(obj["result"]).table()
    res = obj.get("result")
    if isinstance(res, dict):
        rows = [{"key": k, "value": v} for k, v in res.items() if k not in ("module", "dual_of")]
        return obj.get("statement", op) + "\n" + table(rows, ["key", "value"])
    return f"{obj.get('statement', op)}\n  = {_cell(res)}"


def emit(objs, fmt, stream):
    for o in objs:
        if fmt == "json":
            stream.write(json.dumps(o, sort_keys=True) + "\n")
        else:
            stream.write(render_table(o) + "\n\n")


# ------------------------------------------------------------------- main

def _script_for(args):
    if args.command == "suite":
        return f"verify suite(seed={args.seed}, cases={args.cases});"
    if args.command == "preset":
        return f"preset {args.name};"
    if args.script == "-":
        return sys.stdin.read()
    with open(args.script, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        script = _script_for(args)
    except OSError as exc:
        print(f"matlis: cannot read script: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        field = args.field or default_field()
    except ValueError as exc:
        print(f"matlis: bad MATLIS_DEFAULT_FIELD: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.cases < 1 or args.s_max < 1 or args.i_max < 0:
        print("matlis: --cases and --s-max must be positive, --i-max non-negative",
              file=sys.stderr)
        return EXIT_USAGE
    session = Session(field=field, seed=args.seed, cases=args.cases, s_max=args.s_max,
                      i_max=args.i_max)
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    code = EXIT_OK
    try:
        session.execute(script)
    except DSLError as exc:
        print(f"matlis: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    finally:
        emit(session.outputs, args.fmt, out)
        if out is not sys.stdout:
            out.close()
    if code == EXIT_OK and session.failed:
        code = EXIT_FAIL
    return code


if __name__ == "__main__":
    sys.exit(main())
