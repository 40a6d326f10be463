"""Line-oriented group catalogue files and validation of their records.

Format, one record per ``group ... end`` stanza::

    group <name>
    degree <n>
    gen <cycle-notation>        # one line per generator
    order <integer>             # optional
    primitive <true|false>      # optional
    expect_k <k1,k2,...>        # optional; empty value means "no witnesses"
    blocks <set;set;...>        # optional, one block system per line
    orbit <{a,b,c}> <length>    # optional, expected orbit length of a subset
    sigma <s1,s2,...>           # optional, orbit counts on k-subsets for k = 1, 2, ...
    skip_scan <true|false>      # optional
    note <free text>            # optional, repeatable
    end

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import io
from collections.abc import Iterable
from dataclasses import dataclass, field
from importlib import resources
from typing import TextIO

from .action import (
    BlockPartition,
    MalformedPartition,
    NotTransitive,
    is_primitive,
    subset_orbit,
    subset_orbits,
    verify_blocks,
)
from .bsgs import GeneratedGroup, StabilizerChain, build_chain
from .perm import KSubset, PermutationError, parse_cycles, parse_subset
from .swcheck import sw_scan

BUILTIN = "builtin.cat"


class CatalogueError(ValueError):
    def __init__(self, msg: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


@dataclass
class GroupRecord:
    name: str
    degree: int
    generator_text: list[str]
    expected_order: int | None = None
    expected_primitive: bool | None = None
    expected_k: list[int] | None = None
    blocks: list[BlockPartition] = field(default_factory=list)
    orbits: list[tuple[KSubset, int]] = field(default_factory=list)
    sigma: list[int] | None = None
    skip_scan: bool = False
    source_note: str = ""

    def group(self) -> GeneratedGroup:
        return GeneratedGroup.from_cycles(self.degree, self.generator_text, self.name)


def _bool(text: str, line: int, col: int) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise CatalogueError(f"expected true or false, got {text!r}", line, col)


def _int_list(text: str, line: int, col: int) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise CatalogueError(f"expected comma-separated integers, got {text!r}", line, col) from None


def _blocks(text: str, degree: int, line: int, col: int) -> BlockPartition:
    try:
        bp = BlockPartition.of(parse_subset(part, degree).members for part in text.split(";"))
        bp.check(degree)
    except (ValueError, MalformedPartition) as exc:
        raise CatalogueError(str(exc), line, col) from None
    return bp


def parse_catalogue(stream: TextIO | str) -> list[GroupRecord]:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    records: list[GroupRecord] = []
    names: set[str] = set()
    cur: dict | None = None
    start_line = 0
    for lineno, raw in enumerate(stream, 1):
        text = raw.split("#", 1)[0].rstrip()
        if not text.strip():
            continue
        indent = len(text) - len(text.lstrip())
        key, _, value = text.strip().partition(" ")
        value = value.strip()
        vcol = indent + len(key) + 2
        if cur is None:
            if key != "group":
                raise CatalogueError(f"expected 'group', got {key!r}", lineno, indent + 1)
            if not value:
                raise CatalogueError("missing group name", lineno, vcol)
            if value in names:
                raise CatalogueError(f"duplicate group name {value!r}", lineno, vcol)
            cur = {"name": value, "gens": [], "blocks": [], "orbits": [], "notes": []}
            start_line = lineno
            continue
        if key == "degree":
            try:
                cur["degree"] = int(value)
            except ValueError:
                raise CatalogueError(f"bad degree {value!r}", lineno, vcol) from None
        elif key == "gen":
            if "degree" not in cur:
                raise CatalogueError("'gen' before 'degree'", lineno, indent + 1)
            try:
                parse_cycles(value, cur["degree"])
            except PermutationError as exc:
                raise CatalogueError(f"{exc} in group {cur['name']}", lineno, vcol) from None
            cur["gens"].append(value)
        elif key == "order":
            try:
                cur["order"] = int(value)
            except ValueError:
                raise CatalogueError(f"bad order {value!r}", lineno, vcol) from None
        elif key == "primitive":
            cur["primitive"] = _bool(value, lineno, vcol)
        elif key == "skip_scan":
            cur["skip_scan"] = _bool(value, lineno, vcol)
        elif key == "expect_k":
            cur["expect_k"] = _int_list(value, lineno, vcol)
        elif key == "sigma":
            cur["sigma"] = _int_list(value, lineno, vcol)
        elif key == "blocks":
            if "degree" not in cur:
                raise CatalogueError("'blocks' before 'degree'", lineno, indent + 1)
            cur["blocks"].append(_blocks(value, cur["degree"], lineno, vcol))
        elif key == "orbit":
            subset_text, _, length = value.rpartition(" ")
            try:
                cur["orbits"].append((parse_subset(subset_text, cur["degree"]), int(length)))
            except (ValueError, KeyError):
                raise CatalogueError(f"bad orbit line {value!r}", lineno, vcol) from None
        elif key == "note":
            cur["notes"].append(value)
        elif key == "end":
            if "degree" not in cur:
                raise CatalogueError(f"group {cur['name']} has no degree", lineno, indent + 1)
            records.append(
                GroupRecord(
                    name=cur["name"],
                    degree=cur["degree"],
                    generator_text=cur["gens"],
                    expected_order=cur.get("order"),
                    expected_primitive=cur.get("primitive"),
                    expected_k=cur.get("expect_k"),
                    blocks=cur["blocks"],
                    orbits=cur["orbits"],
                    sigma=cur.get("sigma"),
                    skip_scan=cur.get("skip_scan", False),
                    source_note=" ".join(cur["notes"]),
                )
            )
            names.add(cur["name"])
            cur = None
        else:
            raise CatalogueError(f"unknown key {key!r}", lineno, indent + 1)
    if cur is not None:
        raise CatalogueError(f"group {cur['name']} not terminated by 'end'", start_line)
    return records


def format_record(rec: GroupRecord) -> str:
    lines = [f"group {rec.name}", f"degree {rec.degree}"]
    lines += [f"gen {g}" for g in rec.generator_text]
    if rec.expected_order is not None:
        lines.append(f"order {rec.expected_order}")
    if rec.expected_primitive is not None:
        lines.append(f"primitive {str(rec.expected_primitive).lower()}")
    if rec.expected_k is not None:
        lines.append(("expect_k " + ",".join(map(str, rec.expected_k))).rstrip())
    lines += [f"blocks {bp}" for bp in rec.blocks]
    lines += [f"orbit {s} {n}" for s, n in rec.orbits]
    if rec.sigma is not None:
        lines.append("sigma " + ",".join(map(str, rec.sigma)))
    if rec.skip_scan:
        lines.append("skip_scan true")
    if rec.source_note:
        lines.append(f"note {rec.source_note}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def builtin_text() -> str:
    return resources.files("sworbits.data").joinpath(BUILTIN).read_text()


def builtin_records() -> list[GroupRecord]:
    return parse_catalogue(builtin_text())


def load_records(path: str | None = None) -> list[GroupRecord]:
    if path is None:
        return builtin_records()
    with open(path) as fh:
        return parse_catalogue(fh)


def find_record(records: Iterable[GroupRecord], name: str) -> GroupRecord:
    for r in records:
        if r.name == name:
            return r
    raise KeyError(name)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ValidationReport:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, ok, detail))

    def lines(self) -> list[str]:
        return [f"validate {self.name} {c.name} {'ok' if c.ok else 'FAIL'} {c.detail}".rstrip() for c in self.checks]


LEVELS = ("basic", "full")


def validate_record(rec: GroupRecord, level: str = "full", chain: StabilizerChain | None = None) -> ValidationReport:
    """Compare a record against its declared metadata.

    ``basic`` checks order, primitivity, block systems, orbit lengths and the
    sigma vector; ``full`` also runs the witness scan against ``expect_k``.
    """
    if level not in LEVELS:
        raise ValueError(f"unknown verification level {level!r}")
    rep = ValidationReport(rec.name)
    group = rec.group()
    chain = chain or build_chain(group)
    order = chain.order()
    if rec.expected_order is not None:
        rep.add("order", order == rec.expected_order, f"{order} expected {rec.expected_order}")
    else:
        rep.add("order", True, str(order))
    try:
        prim = is_primitive(group, chain)
        transitive = True
    except NotTransitive:
        prim, transitive = False, False
    if rec.expected_primitive is not None:
        rep.add("primitive", prim == rec.expected_primitive, f"{str(prim).lower()} transitive={str(transitive).lower()}")
    for bp in rec.blocks:
        rep.add("blocks", verify_blocks(group, bp), str(bp))
    for s, length in rec.orbits:
        got = subset_orbit(group, chain, s).length
        rep.add("orbit", got == length, f"{s} {got} expected {length}")
    if rec.sigma is not None:
        got = [subset_orbits(group, chain, k).sigma for k in range(1, len(rec.sigma) + 1)]
        rep.add("sigma", got == rec.sigma, ",".join(map(str, got)))
    if level == "full" and rec.expected_k is not None:
        ks = sorted({w.k for w in sw_scan(group, chain)})
        rep.add("expect_k", ks == sorted(rec.expected_k), ",".join(map(str, ks)) or "none")
    return rep
