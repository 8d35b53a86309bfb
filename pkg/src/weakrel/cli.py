"""Command-line front end.

::

    weakrel analyze FILE --domain D --scalar S [--point L] [--widen-delay K] [--dump-cfg]
    weakrel selftest [--scale F] [--seed N]

Exit status: 0 on success, 1 when the analysis proves that no execution
reaches the end of the program, 2 on usage, input or parse errors.
"""

from __future__ import annotations

import argparse
import sys

from . import scalar as sc
from .analyzer import DOMAINS, analyze, build_cfg, make_domain
from .lang import ParseError, parse

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="weakrel", description="Weakly relational numerical static analyzer.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="compute invariants at the labeled points of a program")
    a.add_argument("file")
    a.add_argument("--domain", required=True, choices=DOMAINS)
    a.add_argument("--scalar", default=sc.INT, choices=sc.MODES)
    a.add_argument("--point", action="append", metavar="LABEL",
                   help="only print this label (repeatable)")
    a.add_argument("--widen-delay", type=int, default=0, metavar="K",
                   help="replace the first K widenings at each loop head by joins")
    a.add_argument("--dump-cfg", action="store_true", help="print the control-flow graph first")

    s = sub.add_parser("selftest", help="run the randomized oracle checks at reduced size")
    s.add_argument("--scale", type=float, default=0.05,
                   help="fraction of the full case counts (default 0.05)")
    s.add_argument("--seed", type=int, default=0)
    return p


def format_result(result, points=None) -> str:
    """``@label:`` headers with one indented constraint per line."""
    labels = list(result.cfg.labels) if points is None else points
    out = []
    for lab in labels:
        out.append(f"@{lab}:")
        lines = result.constraints(lab) or ["T"]
        out.extend(f"  {ln}" for ln in lines)
    return "\n".join(out)


def cmd_analyze(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"weakrel: cannot read {args.file}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        prog = parse(text, args.scalar)
    except ParseError as exc:
        print(f"{args.file}:{exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.widen_delay < 0:
        print("weakrel: --widen-delay must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    cfg = build_cfg(prog)
    for lab in args.point or []:
        if lab not in cfg.labels:
            print(f"weakrel: unknown label {lab!r}", file=sys.stderr)
            return EXIT_USAGE
    if args.dump_cfg:
        print(cfg.dump())
    domain = make_domain(args.domain, args.scalar, prog.nvars)
    result = analyze(cfg, domain, args.widen_delay)
    text = format_result(result, args.point)
    if text:
        print(text)
    if domain.is_bottom(result.states[cfg.exit]):
        print("weakrel: no execution reaches the end of the program", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selfcheck import all_checks

    ok = True
    for res in all_checks(args.scale, args.seed):
        print(res.line(), flush=True)
        ok = ok and (res.ok or res.expected)
    return EXIT_OK if ok else EXIT_INFEASIBLE


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        return cmd_analyze(args)
    return cmd_selftest(args)


if __name__ == "__main__":
    sys.exit(main())
