"""Command-line entry point.

Standard output carries exactly one JSON report; progress goes to stderr.
Exit codes: 0 pass, 1 property violation, 2 usage error, 3 I/O or parse
error, 4 resource bound.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .combined import (
    TableFormatError,
    build_table,
    build_universe,
    color_bound,
    dumps_canonical,
    load_table,
    save_table,
    smallest_universe_for,
)
from .enumeration import ResourceLimitError, canonical_form, classify_against_figure3, enumerate_colorings
from .gf3 import is_prime
from .patterns import contains, default_jobs, resolve_patterns, verify_pq

log = logging.getLogger("pqcolor")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_RESOURCE = 0, 1, 2, 3, 4


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _report(command: str, params: dict, result: dict, started: float, artifacts=()) -> dict:
    return {
        "command": command,
        "params": params,
        "result": result,
        "duration_s": round(time.perf_counter() - started, 3),
        "artifacts": [str(a) for a in artifacts],
        "version": __version__,
    }


def cmd_construct(args) -> tuple[int, dict]:
    started = time.perf_counter()
    if args.q is not None:
        if args.q < 3 or not is_prime(args.q):
            raise CommandError(EXIT_USAGE, f"--q must be an odd prime, got {args.q}")
        universe = build_universe(args.q)
    elif args.n is not None:
        if args.n < 1:
            raise CommandError(EXIT_USAGE, "--n must be positive")
        universe = smallest_universe_for(args.n)
    else:
        raise CommandError(EXIT_USAGE, "give --q or --n")
    if args.n is not None and args.n > universe.n:
        raise CommandError(EXIT_USAGE, f"--n {args.n} exceeds (q-1)^3 = {universe.n}")
    log.info("building q=%d beta=%d", universe.q, universe.beta)
    table = build_table(universe, args.n)
    try:
        save_table(table, args.out, args.format)
    except OSError as exc:
        raise CommandError(EXIT_IO, f"cannot write {args.out}: {exc}") from exc
    result = {
        "n": table.n,
        "q": universe.q,
        "beta": universe.beta,
        "distinct_colors": table.distinct_count(),
        "color_bound": color_bound(universe.q, universe.beta),
    }
    params = {"q": args.q, "n": args.n, "out": str(args.out), "format": args.format}
    return EXIT_PASS, _report("construct", params, result, started, [args.out])


def _load(path):
    try:
        return load_table(path)
    except (OSError, TableFormatError) as exc:
        raise CommandError(EXIT_IO, f"cannot read {path}: {exc}") from exc


def cmd_verify(args) -> tuple[int, dict]:
    started = time.perf_counter()
    table = _load(args.input)
    if not 2 <= args.p <= table.n:
        raise CommandError(EXIT_USAGE, f"--p must be between 2 and n={table.n}")
    if not 1 <= args.q <= args.p * (args.p - 1) // 2:
        raise CommandError(EXIT_USAGE, "--q must be between 1 and p(p-1)/2")
    log.info("verifying (%d,%d) on n=%d with %d job(s)", args.p, args.q, table.n, args.jobs)
    verdict = verify_pq(table, args.p, args.q, jobs=args.jobs)
    params = {"in": str(args.input), "p": args.p, "q": args.q}
    result = {"n": table.n, **verdict.to_json_obj()}
    return (EXIT_PASS if verdict.passed else EXIT_FAIL), _report("verify", params, result, started)


def cmd_scan(args) -> tuple[int, dict]:
    started = time.perf_counter()
    try:
        patterns = resolve_patterns(args.patterns)
    except KeyError as exc:
        raise CommandError(EXIT_USAGE, str(exc.args[0])) from exc
    except (OSError, ValueError) as exc:
        raise CommandError(EXIT_IO, f"cannot read pattern file: {exc}") from exc
    table = _load(args.input)
    matches = {}
    for p in patterns:
        log.info("scanning for %s", p.name or "pattern")
        v = contains(table, p)
        matches[p.name or f"pattern{len(matches)}"] = {"match": not v.passed, **v.to_json_obj()}
    any_match = any(m["match"] for m in matches.values())
    params = {"in": str(args.input), "patterns": list(args.patterns)}
    return (EXIT_FAIL if any_match else EXIT_PASS), _report("scan", params, {"patterns": matches}, started)


def cmd_enumerate(args) -> tuple[int, dict]:
    started = time.perf_counter()
    try:
        forbidden = resolve_patterns(args.forbidden)
    except KeyError as exc:
        raise CommandError(EXIT_USAGE, str(exc.args[0])) from exc
    except (OSError, ValueError) as exc:
        raise CommandError(EXIT_IO, f"cannot read pattern file: {exc}") from exc
    try:
        found = enumerate_colorings(args.n, args.m, forbidden)
    except ResourceLimitError as exc:
        raise CommandError(EXIT_RESOURCE, str(exc)) from exc
    except ValueError as exc:
        raise CommandError(EXIT_USAGE, str(exc)) from exc
    labels = classify_against_figure3(found)
    colorings = [
        {**c.to_json_obj(), "key": list(canonical_form(c)), "figure3": labels[i]}
        for i, c in enumerate(found)
    ]
    artifacts = []
    if args.out:
        try:
            Path(args.out).write_text(dumps_canonical(colorings) + "\n", encoding="utf-8")
        except OSError as exc:
            raise CommandError(EXIT_IO, f"cannot write {args.out}: {exc}") from exc
        artifacts.append(args.out)
    params = {"n": args.n, "m": args.m, "forbidden": list(args.forbidden)}
    result = {"count": len(found), "colorings": colorings}
    return EXIT_PASS, _report("enumerate", params, result, started, artifacts)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pqcolor", description="Explicit (5,5)-colorings and their verification.")
    ap.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build the combined coloring table")
    c.add_argument("--q", type=int, help="odd prime; n = (q-1)^3")
    c.add_argument("--n", type=int, help="keep only the first n vertices")
    c.add_argument("--out", required=True, type=Path)
    c.add_argument("--format", choices=("json", "binary"), default="json")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check the (p,q) property of a coloring file")
    v.add_argument("--in", dest="input", required=True, type=Path)
    v.add_argument("--p", type=int, default=5)
    v.add_argument("--q", type=int, default=5)
    v.add_argument("--jobs", type=int, default=default_jobs(), help="worker processes (env PQCOLOR_JOBS)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan", help="search a coloring file for colored patterns")
    s.add_argument("--in", dest="input", required=True, type=Path)
    s.add_argument("--patterns", nargs="+", required=True, help="names, builtin:<set>, or pattern JSON files")
    s.set_defaults(func=cmd_scan)

    e = sub.add_parser("enumerate", help="list small colorings avoiding forbidden patterns")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--forbidden", nargs="*", default=[], help="names, builtin:<set>, or pattern JSON files")
    e.add_argument("--out", type=Path)
    e.set_defaults(func=cmd_enumerate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(name)s: %(message)s",
    )
    try:
        code, report = args.func(args)
    except CommandError as exc:
        print(f"pqcolor: {exc}", file=sys.stderr)
        return exc.code
    sys.stdout.write(dumps_canonical(report) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
