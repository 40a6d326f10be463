"""Command-line interface.

Exit codes: 0 success (including scans with no witnesses), 1 an ``--expect``
or validation mismatch, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .action import subset_orbits
from .bsgs import build_chain
from .catalogue import CatalogueError, GroupRecord, load_records, validate_record
from .perm import parse_subset
from .projline import theorem_check
from .swcheck import default_k_range, sw_scan, ud_counts

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class ScanConfig:
    catalogue: str | None = None  # None means the builtin catalogue
    groups: list[str] | None = None
    k_range: tuple[int, int] | None = None
    jobs: int = 1
    fmt: str = "text"
    expect: bool = False

    def ks_for(self, degree: int) -> range:
        if self.k_range is None:
            return default_k_range(degree)
        lo, hi = self.k_range
        return range(max(lo, 1), min(hi, degree - 1) + 1)


def parse_k_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad k range {text!r}; use a..b") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad k range {text!r}")
    return lo, hi


def emit(line: str, fmt: str) -> str:
    return line.replace(" ", "\t") if fmt == "tsv" else line


def _select(records: list[GroupRecord], names: list[str] | None) -> list[GroupRecord]:
    if not names:
        return records
    by_name = {r.name: r for r in records}
    missing = [n for n in names if n not in by_name]
    if missing:
        raise UsageError(f"unknown group(s): {', '.join(missing)}")
    return [by_name[n] for n in names]


def _one(records: list[GroupRecord], args) -> GroupRecord:
    names = list(args.group or [])
    if args.name:
        names.insert(0, args.name)
    if len(names) != 1:
        raise UsageError("select exactly one group (positional name or --group)")
    return _select(records, names)[0]


def _scan_one(rec: GroupRecord, cfg: ScanConfig) -> tuple[list[str], bool]:
    group = rec.group()
    ks = cfg.ks_for(rec.degree)
    witnesses = sw_scan(group, build_chain(group), ks)
    lines = [emit(w.line(), cfg.fmt) for w in witnesses]
    ok = True
    if cfg.expect and rec.expected_k is not None:
        # expect_k is declared over the default range; past n/2 every group witnesses
        window = set(ks) & set(default_k_range(rec.degree))
        got = sorted({w.k for w in witnesses if w.k in window})
        want = sorted(k for k in rec.expected_k if k in window)
        ok = got == want
        fmt_k = lambda ks_: ",".join(map(str, ks_)) or "none"
        status = "ok" if ok else "mismatch"
        lines.append(emit(f"expect group={rec.name} {status} got={fmt_k(got)} want={fmt_k(want)}", cfg.fmt))
    return lines, ok


def _scan_job(payload):
    return _scan_one(*payload)


def run_scan(records: list[GroupRecord], cfg: ScanConfig) -> tuple[list[str], int]:
    selected = _select(records, cfg.groups)
    if not cfg.groups:
        selected = [r for r in selected if not r.skip_scan]
    payloads = [(r, cfg) for r in selected]
    if cfg.jobs > 1 and len(payloads) > 1:
        # largest degrees first so the long scans start early; output order is restored below
        order = sorted(range(len(payloads)), key=lambda i: -payloads[i][0].degree)
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            done = dict(zip(order, pool.map(_scan_job, [payloads[i] for i in order])))
        results = [done[i] for i in range(len(payloads))]
    else:
        results = [_scan_one(r, c) for r, c in payloads]
    lines = [ln for res, _ in results for ln in res]
    n_bad = sum(not ok for _, ok in results)
    if cfg.expect:
        checked = sum(1 for r in selected if r.expected_k is not None)
        lines.append(emit(f"expect confirmed={checked - n_bad} mismatched={n_bad}", cfg.fmt))
    return lines, EXIT_MISMATCH if n_bad else EXIT_OK


def cmd_order(records, args) -> tuple[list[str], int]:
    rec = _one(records, args)
    value = build_chain(rec.group()).order()
    return [emit(f"order {rec.name} {value}", args.format)], EXIT_OK


def cmd_sigma(records, args) -> tuple[list[str], int]:
    rec = _one(records, args)
    n = rec.degree
    lo, hi = args.k if args.k else (1, max(1, n // 2))
    if hi > n:
        raise UsageError(f"k range {lo}..{hi} exceeds degree {n}")
    group = rec.group()
    chain = build_chain(group)
    return [emit(f"sigma {rec.name} k={k} {subset_orbits(group, chain, k).sigma}", args.format) for k in range(lo, hi + 1)], EXIT_OK


def cmd_swscan(records, args) -> tuple[list[str], int]:
    cfg = ScanConfig(args.catalogue, args.group, args.k, args.jobs, args.format, args.expect)
    if args.name:
        cfg.groups = [args.name] + list(cfg.groups or [])
    return run_scan(records, cfg)


def cmd_ud(records, args) -> tuple[list[str], int]:
    rec = _one(records, args)
    try:
        delta = parse_subset(args.delta, rec.degree)
        sigma = parse_subset(args.sigma, rec.degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(sigma) != len(delta) + 1:
        raise UsageError("--sigma must have exactly one more point than --delta")
    group = rec.group()
    res = ud_counts(group, build_chain(group), delta, sigma)
    return [emit(ln, args.format) for ln in res.lines()], EXIT_OK


def cmd_projline(records, args) -> tuple[list[str], int]:
    try:
        report = theorem_check(args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return [emit(ln, args.format) for ln in report.lines()], EXIT_OK if report.ok() else EXIT_MISMATCH


def _validate_job(payload):
    rec, level = payload
    return validate_record(rec, level)


def cmd_validate(records, args) -> tuple[list[str], int]:
    selected = _select(records, ([args.name] if args.name else []) + list(args.group or []))
    payloads = [(r, args.level) for r in selected]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_validate_job, payloads))
    else:
        reports = [_validate_job(p) for p in payloads]
    lines = [emit(ln, args.format) for rep in reports for ln in rep.lines()]
    return lines, EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--builtin", action="store_true", help="use the shipped catalogue (default)")
    src.add_argument("--catalogue", metavar="PATH", help="read groups from a catalogue file")
    common.add_argument("--group", action="append", metavar="NAME", help="select a group by name (repeatable)")
    common.add_argument("--format", choices=("text", "tsv"), default="text")
    common.add_argument("--jobs", type=int, default=1, metavar="W")

    parser = argparse.ArgumentParser(prog="sworbits", description="Orbit lengths of permutation groups on k-subsets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", parents=[common], help="print the group order")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("sigma", parents=[common], help="number of orbits on k-subsets")
    p.add_argument("name", nargs="?")
    p.add_argument("--k", type=parse_k_range, metavar="A..B")
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("swscan", parents=[common], help="search for Siemons-Wagner witnesses")
    p.add_argument("name", nargs="?")
    p.add_argument("--k", type=parse_k_range, metavar="A..B")
    p.add_argument("--expect", action="store_true", help="compare witness k values with expect_k metadata")
    p.set_defaults(func=cmd_swscan)

    p = sub.add_parser("ud", parents=[common], help="u and d counts for a nested pair of subsets")
    p.add_argument("name", nargs="?")
    p.add_argument("--delta", required=True, metavar="{a,b,...}")
    p.add_argument("--sigma", required=True, metavar="{a,b,...}")
    p.set_defaults(func=cmd_ud)

    p = sub.add_parser("projline", parents=[common], help="check the PG(q) stabilizer argument")
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_projline)

    p = sub.add_parser("validate", parents=[common], help="check catalogue records against their metadata")
    p.add_argument("name", nargs="?")
    p.add_argument("--level", choices=("basic", "full"), default="basic")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        records = [] if args.command == "projline" else load_records(args.catalogue)
        lines, code = args.func(records, args)
    except (UsageError, CatalogueError, OSError) as exc:
        print(f"sworbits: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = "\n".join(lines)
    if out:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
