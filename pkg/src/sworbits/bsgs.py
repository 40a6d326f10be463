"""Deterministic Schreier-Sims stabilizer chains.

Internally permutations are raw tuples of 0-based images so that the inner
loops avoid attribute lookups; the public surface speaks ``Permutation``.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from .perm import DegreeMismatch, Permutation, parse_cycles

Raw = tuple[int, ...]


class OrderExceedsBound(RuntimeError):
    """Group order is larger than the caller's enumeration bound."""


def _mul(a: Raw, b: Raw) -> Raw:
    return tuple([b[x] for x in a])


def _inv(a: Raw) -> Raw:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _least_moved(a: Raw) -> int | None:
    for i, x in enumerate(a):
        if i != x:
            return i
    return None


@dataclass
class GeneratedGroup:
    degree: int
    generators: list[Permutation]
    name: str | None = None

    def __post_init__(self):
        if not self.generators:
            # the trivial group still needs a generator to carry the degree
            self.generators = [Permutation.identity(self.degree)]
        for g in self.generators:
            if g.degree != self.degree:
                raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {self.degree}")

    @classmethod
    def from_cycles(cls, degree: int, texts: Sequence[str], name: str | None = None) -> GeneratedGroup:
        return cls(degree, [parse_cycles(t, degree) for t in texts], name)

    def raw_generators(self) -> list[Raw]:
        return [g._img for g in self.generators if not g.is_identity()]


@dataclass
class Level:
    base_point: int  # 0-based
    gens: list[Raw] = field(default_factory=list)
    transversal: dict[int, Raw] = field(default_factory=dict)
    inv_transversal: dict[int, Raw] = field(default_factory=dict)

    @property
    def orbit(self) -> list[int]:
        return list(self.transversal)

    def rebuild(self, degree: int) -> None:
        ident = tuple(range(degree))
        b = self.base_point
        trans = {b: ident}
        queue = [b]
        for x in queue:
            ux = trans[x]
            for g in self.gens:
                y = g[x]
                if y not in trans:
                    trans[y] = _mul(ux, g)
                    queue.append(y)
        self.transversal = trans
        self.inv_transversal = {x: _inv(u) for x, u in trans.items()}


@dataclass
class StabilizerChain:
    degree: int
    levels: list[Level]

    @property
    def base(self) -> list[int]:
        """Base points, 1-based."""
        return [lv.base_point + 1 for lv in self.levels]

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.transversal)
        return n

    def sift(self, h: Raw, start: int = 0) -> tuple[Raw, int]:
        """Strip ``h`` from level ``start``; return residue and the level reached."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            x = h[lv.base_point]
            uinv = lv.inv_transversal.get(x)
            if uinv is None:
                return h, i
            h = _mul(h, uinv)
        return h, len(self.levels)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(f"degree {p.degree} != chain degree {self.degree}")
        h, lvl = self.sift(p._img)
        return lvl == len(self.levels) and all(i == x for i, x in enumerate(h))

    def strong_generators(self) -> list[Permutation]:
        seen: dict[Raw, None] = {}
        for lv in self.levels:
            for g in lv.gens:
                seen.setdefault(g, None)
        return [Permutation._raw(g) for g in seen]

    def iter_raw(self) -> Iterator[Raw]:
        """Every element once, as g = u_m * ... * u_1 (left-to-right)."""
        ident = tuple(range(self.degree))
        levels = [list(lv.transversal.values()) for lv in reversed(self.levels)]

        def walk(depth: int, acc: Raw) -> Iterator[Raw]:
            if depth == len(levels):
                yield acc
                return
            for u in levels[depth]:
                yield from walk(depth + 1, _mul(acc, u))

        yield from walk(0, ident)

    def elements_up_to(self, bound: int) -> Iterator[Permutation]:
        order = self.order()
        if order > bound:
            raise OrderExceedsBound(f"group order {order} exceeds bound {bound}")
        return (Permutation._raw(g) for g in self.iter_raw())

    def random_element(self, rng) -> Permutation:
        g = tuple(range(self.degree))
        for lv in reversed(self.levels):
            g = _mul(g, rng.choice(list(lv.transversal.values())))
        return Permutation._raw(g)


def build_chain(group: GeneratedGroup) -> StabilizerChain:
    """Schreier-Sims with Schreier-generator sifting, no randomisation.

    Each new base point is the least point moved by the generator that forced
    it, so the chain depends only on the generator order.
    """
    n = group.degree
    ident = tuple(range(n))
    gens = group.raw_generators()
    levels: list[Level] = []
    for g in gens:
        if all(g[lv.base_point] == lv.base_point for lv in levels):
            levels.append(Level(_least_moved(g)))
    for i, lv in enumerate(levels):
        lv.gens = [g for g in gens if all(g[levels[j].base_point] == levels[j].base_point for j in range(i))]
        lv.rebuild(n)
    chain = StabilizerChain(n, levels)

    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        jumped = False
        for beta in lv.orbit:
            u_beta = lv.transversal[beta]
            for s in lv.gens:
                gb = s[beta]
                prod = _mul(u_beta, s)
                if prod == lv.transversal[gb]:
                    continue
                h, j = chain.sift(_mul(prod, lv.inv_transversal[gb]), i + 1)
                if j == len(levels):
                    if h == ident:
                        continue
                    levels.append(Level(_least_moved(h)))
                for lvl in range(i + 1, j + 1):
                    levels[lvl].gens.append(h)
                    levels[lvl].rebuild(n)
                i = j
                jumped = True
                break
            if jumped:
                break
        if not jumped:
            i -= 1
    return chain


def order(chain: StabilizerChain) -> int:
    return chain.order()


def contains(chain: StabilizerChain, p: Permutation) -> bool:
    return chain.contains(p)


def elements_up_to(chain: StabilizerChain, bound: int) -> Iterator[Permutation]:
    return chain.elements_up_to(bound)


def point_orbits(group: GeneratedGroup) -> list[list[int]]:
    """Orbits of the group on points, 1-based, each sorted, ordered by least point."""
    gens = group.raw_generators()
    seen = [False] * group.degree
    out = []
    for start in range(group.degree):
        if seen[start]:
            continue
        seen[start] = True
        orb = [start]
        for x in orb:
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
        out.append(sorted(x + 1 for x in orb))
    return out
