from functools import cache

import pytest

from sworbits.bsgs import build_chain
from sworbits.catalogue import builtin_records
from sworbits.perm import Permutation


@cache
def records():
    return {r.name: r for r in builtin_records()}


@cache
def loaded(name):
    """(record, group, chain) for a builtin catalogue entry."""
    rec = records()[name]
    group = rec.group()
    return rec, group, build_chain(group)


def closure(gens):
    """All elements of <gens> by BFS over products; independent of the chain code."""
    ident = tuple(range(gens[0].degree))
    raw = [g._img for g in gens]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in raw:
                b = tuple(g[x] for x in a)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return [Permutation(e) for e in seen]


def brute_orbit(elements, points):
    """Orbit of a point set as a set of frozensets, by applying every element."""
    return {frozenset(g(x) for x in points) for g in elements}


@pytest.fixture
def load():
    return loaded


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance")
        for line in lines:
            terminalreporter.write_line(line)
