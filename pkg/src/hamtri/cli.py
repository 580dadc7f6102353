"""Command line entry point.

Exit status: 0 when no violations were found, 1 when some were, 2 on a usage
error (bad flags, unreadable input, invalid budget).
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from .census import (
    Ledger,
    read_ascii,
    read_planar_code,
    run_census,
    to_ascii,
    write_planar_code,
)
from .errors import FormatError, HamtriError
from .gen import GenerationBudget, generate_all
from .suites import SUITES, run_suite

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_filter(text: Optional[str], n_max: int, n_min: int = 4) -> GenerationBudget:
    """Turn ``--filter`` (comma list) into a budget.

    Terms: ``all``, ``4-connected`` (``4c``), ``connectivity=K``,
    ``min-degree=D``, ``no-separating-triangle``, ``degree4-distance=D``.
    """
    opts: dict = {}
    for term in (text or "all").split(","):
        term = term.strip()
        key, _, val = term.partition("=")
        try:
            if term in ("", "all"):
                continue
            if term in ("4-connected", "4c"):
                opts["connectivity"] = 4
            elif key == "connectivity":
                opts["connectivity"] = int(val)
            elif key == "min-degree":
                opts["min_degree"] = int(val)
            elif term == "no-separating-triangle":
                opts["no_separating_triangle"] = True
            elif key == "degree4-distance":
                opts["degree4_distance"] = int(val)
            else:
                raise UsageError(f"unknown filter term {term!r}")
        except ValueError:
            raise UsageError(f"bad value in filter term {term!r}") from None
    try:
        return GenerationBudget(n_max=n_max, n_min=n_min, **opts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _out_binary(path: Optional[str], data: bytes) -> None:
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _write_ledger(path: Optional[str], ledger: Ledger) -> None:
    if path in (None, "-"):
        ledger.write(sys.stdout)
    else:
        with open(path, "w") as fh:
            ledger.write(fh)


def cmd_generate(args) -> int:
    budget = parse_filter(args.filter, args.nmax, args.nmin)
    graphs = []
    for g in generate_all(budget, jobs=args.jobs):
        graphs.append(g)
        if args.limit is not None and len(graphs) >= args.limit:
            break
    if args.format == "ascii":
        text = "".join(to_ascii(g) + "\n" for g in graphs)
        _out_binary(args.out, text.encode())
    else:
        _out_binary(args.out, write_planar_code(graphs))
    print(f"{len(graphs)} graphs", file=sys.stderr)
    return EXIT_OK


def cmd_census(args) -> int:
    budget = parse_filter(args.filter, args.nmax, args.nmin)
    suites = args.suite or []
    for s in suites:
        if s not in SUITES:
            raise UsageError(f"unknown suite {s!r}")
    ledger = run_census(budget, suites, jobs=args.jobs, seed=args.seed, limit=args.limit or 1000,
                        audit=args.audit)
    _write_ledger(args.out, ledger)
    return EXIT_OK if ledger.ok else EXIT_VIOLATIONS


def cmd_check_conjecture(args) -> int:
    budget = parse_filter(args.filter or "4-connected", args.nmax, max(6, args.nmin))
    ledger = run_census(budget, (), jobs=args.jobs, seed=args.seed, audit=args.audit)
    _write_ledger(args.out, ledger)
    for v in ledger.violations:
        print(f"violation: {v}", file=sys.stderr)
    print(f"{len(ledger.records)} graphs checked, {len(ledger.violations)} violations", file=sys.stderr)
    return EXIT_OK if ledger.ok else EXIT_VIOLATIONS


def cmd_lemma_suite(args) -> int:
    if args.name not in SUITES:
        raise UsageError(f"unknown suite {args.name!r}; choose from {', '.join(SUITES)}")
    kwargs = {"seed": args.seed, "limit": args.limit or 1000}
    if args.nmax is not None:
        kwargs["n_max"] = args.nmax
    res = run_suite(args.name, **kwargs)
    ledger = Ledger([], list(res.violations), [res])
    _write_ledger(args.out, ledger)
    print(f"{res.name}: {res.checked} checked, {res.skipped} skipped, "
          f"{len(res.violations)} violations", file=sys.stderr)
    return EXIT_OK if res.ok else EXIT_VIOLATIONS


def cmd_convert(args) -> int:
    try:
        with open(args.input, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    src = args.source or ("planar_code" if data.startswith(b">>planar_code") or data[:1] < b" " else "ascii")
    graphs = list(read_planar_code(data) if src == "planar_code" else read_ascii(data.decode()))
    if args.to == "ascii":
        _out_binary(args.out, "".join(to_ascii(g) + "\n" for g in graphs).encode())
    else:
        _out_binary(args.out, write_planar_code(graphs))
    print(f"{len(graphs)} graphs converted", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hamtri", description="Hamiltonian cycles in plane triangulations")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, nmax_default: Optional[int] = 10):
        sp.add_argument("--nmax", type=int, default=nmax_default)
        sp.add_argument("--nmin", type=int, default=4)
        sp.add_argument("--filter", default=None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--limit", type=int, default=None)
        sp.add_argument("--out", default=None)

    g = sub.add_parser("generate", help="write all triangulations up to --nmax")
    common(g)
    g.add_argument("--format", choices=("planar_code", "ascii"), default="planar_code")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("census", help="per-graph records and suites as a JSONL ledger")
    common(c)
    c.add_argument("--suite", action="append", help="suite to run (repeatable)")
    c.add_argument("--audit", type=float, default=0.01)
    c.set_defaults(func=cmd_census)

    k = sub.add_parser("check-conjecture", help="check hc_count >= 2(n-2)(n-4) on 4-connected graphs")
    common(k, 12)
    k.add_argument("--audit", type=float, default=0.01)
    k.set_defaults(func=cmd_check_conjecture)

    s = sub.add_parser("lemma-suite", help="run one property suite")
    s.add_argument("name", help=f"one of: {', '.join(SUITES)}")
    common(s, None)
    s.set_defaults(func=cmd_lemma_suite)

    v = sub.add_parser("convert", help="convert between planar_code and ascii")
    v.add_argument("input")
    v.add_argument("--from", dest="source", choices=("planar_code", "ascii"), default=None)
    v.add_argument("--to", choices=("planar_code", "ascii"), default="ascii")
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_convert)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HamtriError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
