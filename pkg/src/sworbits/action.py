"""The induced action of a permutation group on k-subsets.

Subsets travel as bitmasks (bit ``i-1`` for point ``i``).  Single orbits are
found by BFS over Python ints; a full partition of Omega_k is built in one
vectorised sweep: every k-subset gets its images under each generator, and the
orbit ids are the connected components of that graph.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .bsgs import GeneratedGroup, OrderExceedsBound, StabilizerChain, point_orbits
from .perm import KSubset, Permutation, mask_members, members_mask

DEFAULT_STAB_BOUND = 10**6


class NonDivisible(ArithmeticError):
    pass


class NotTransitive(ValueError):
    pass


class MalformedPartition(ValueError):
    pass


def _byte_tables(perm_img: Sequence[int], n: int) -> list[list[int]]:
    """Per-byte lookup tables so that a mask image costs one lookup per 8 points."""
    tables = []
    for c in range(0, n, 8):
        width = min(8, n - c)
        tab = [0] * 256
        for b in range(1 << width):
            m = 0
            for j in range(width):
                if b >> j & 1:
                    m |= 1 << perm_img[c + j]
            tab[b] = m
        tables.append(tab)
    return tables


def mask_imager(g: Permutation) -> Callable[[int], int]:
    tables = _byte_tables(g._img, g.degree)
    if len(tables) == 1:
        t0 = tables[0]
        return lambda m: t0[m]
    if len(tables) == 2:
        t0, t1 = tables
        return lambda m: t0[m & 255] | t1[m >> 8]
    if len(tables) == 3:
        t0, t1, t2 = tables
        return lambda m: t0[m & 255] | t1[m >> 8 & 255] | t2[m >> 16]

    def image(m: int) -> int:
        out = 0
        for tab in tables:
            out |= tab[m & 255]
            m >>= 8
        return out

    return image


@dataclass
class OrbitRecord:
    representative: KSubset
    length: int
    member_index: frozenset[int] | _PartitionMembers = field(repr=False)

    def __contains__(self, s: KSubset) -> bool:
        return orbit_contains(self, s)


@dataclass(frozen=True)
class BlockPartition:
    blocks: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> BlockPartition:
        bl = [frozenset(b) for b in blocks]
        return cls(tuple(sorted(bl, key=min)))

    def check(self, degree: int) -> None:
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise MalformedPartition("empty block")
            if seen & b:
                raise MalformedPartition(f"blocks overlap on {sorted(seen & b)}")
            seen |= b
        if seen != set(range(1, degree + 1)):
            raise MalformedPartition(f"blocks do not cover 1..{degree}")

    def is_trivial(self) -> bool:
        return len(self.blocks) == 1 or all(len(b) == 1 for b in self.blocks)

    def __str__(self) -> str:
        return ";".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.blocks)


def subset_orbit(group: GeneratedGroup, chain: StabilizerChain | None, s: KSubset) -> OrbitRecord:
    """BFS closure of ``s``; checks orbit-stabilizer against the chain if given."""
    imagers = [mask_imager(g) for g in group.generators if not g.is_identity()]
    start = s.mask
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for im in imagers:
                y = im(m)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    if chain is not None and chain.order() % len(seen):
        raise NonDivisible(f"orbit length {len(seen)} does not divide {chain.order()}")
    rep = KSubset(s.degree, min(mask_members(m) for m in seen))
    return OrbitRecord(rep, len(seen), frozenset(seen))


def orbit_contains(orbit: OrbitRecord, t: KSubset) -> bool:
    if len(t) != len(orbit.representative):
        raise ValueError(f"subset size {len(t)} != orbit subset size {len(orbit.representative)}")
    return t.mask in orbit.member_index


class _PartitionMembers:
    def __init__(self, partition: OrbitPartition, oid: int):
        self.partition = partition
        self.oid = oid

    def __contains__(self, mask: int) -> bool:
        return self.partition.orbit_id_of(mask) == self.oid


def _subset_masks(n: int, k: int) -> np.ndarray:
    """All k-subsets of n points as uint64 masks, in lexicographic order."""
    total = comb(n, k)
    masks = np.zeros(total, dtype=np.uint64)
    if k == 0:
        return masks
    members = np.fromiter(combinations(range(n), k), dtype=np.dtype((np.uint8, k)), count=total)
    one = np.uint64(1)
    for j in range(k):
        masks |= np.left_shift(one, members[:, j].astype(np.uint64))
    return masks


def _image_masks(masks: np.ndarray, g: Permutation) -> np.ndarray:
    n = g.degree
    out = np.zeros_like(masks)
    for c, tab in enumerate(_byte_tables(g._img, n)):
        tab = np.asarray(tab, dtype=np.uint64)
        out |= tab[((masks >> np.uint64(8 * c)) & np.uint64(255)).astype(np.intp)]
    return out


@dataclass
class OrbitPartition:
    """Orbits of a group on all k-subsets, ordered by lex-least representative."""

    k: int
    degree: int
    masks: np.ndarray = field(repr=False)  # lex order; index = lex rank
    orbit_id: np.ndarray = field(repr=False)  # per lex rank
    lengths: np.ndarray = field(repr=False)
    rep_ranks: np.ndarray = field(repr=False)
    _sort_idx: np.ndarray = field(repr=False)
    _sorted: np.ndarray = field(repr=False)

    @property
    def sigma(self) -> int:
        return len(self.lengths)

    @property
    def orbits(self) -> list[OrbitRecord]:
        return [self.orbit(i) for i in range(self.sigma)]

    def orbit(self, oid: int) -> OrbitRecord:
        rep = KSubset.from_mask(self.degree, int(self.masks[self.rep_ranks[oid]]))
        return OrbitRecord(rep, int(self.lengths[oid]), _PartitionMembers(self, oid))

    def rank_of(self, masks) -> np.ndarray:
        m = np.asarray(masks, dtype=np.uint64)
        pos = np.searchsorted(self._sorted, m)
        pos = np.minimum(pos, len(self._sorted) - 1)
        if not np.all(self._sorted[pos] == m):
            raise KeyError("mask is not a subset of the expected size")
        return self._sort_idx[pos]

    def orbit_id_of(self, mask: int) -> int:
        if mask.bit_count() != self.k or mask >> self.degree:
            return -1
        return int(self.orbit_id[self.rank_of([mask])[0]])

    def orbit_ids_of(self, masks) -> np.ndarray:
        return self.orbit_id[self.rank_of(masks)]

    def orbit_of(self, s: KSubset) -> OrbitRecord:
        return self.orbit(self.orbit_id_of(s.mask))


def subset_orbits(group: GeneratedGroup, chain: StabilizerChain | None, k: int) -> OrbitPartition:
    n = group.degree
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    if n > 64:
        raise ValueError("subset partitions are limited to degree 64")
    masks = _subset_masks(n, k)
    total = len(masks)
    sort_idx = np.argsort(masks, kind="stable")
    sorted_masks = masks[sort_idx]
    rows, cols = [], []
    src = np.arange(total, dtype=np.int64)
    for g in group.generators:
        if g.is_identity():
            continue
        img = _image_masks(masks, g)
        tgt = sort_idx[np.searchsorted(sorted_masks, img)]
        rows.append(src)
        cols.append(tgt)
        del img
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        graph = csr_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(total, total))
        _, labels = connected_components(graph, directed=True, connection="weak")
        del graph, r, c
    else:
        labels = np.arange(total)
    # component of lowest lex rank gets id 0, and so on
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    remap = np.empty(len(first), dtype=np.int64)
    remap[labels[first[order]]] = np.arange(len(first))
    orbit_id = remap[labels].astype(np.int32)
    lengths = np.bincount(orbit_id, minlength=len(first)).astype(np.int64)
    rep_ranks = np.sort(first)
    if chain is not None:
        g_order = chain.order()
        bad = [int(x) for x in lengths if g_order % int(x)]
        if bad:
            raise NonDivisible(f"orbit lengths {bad[:3]} do not divide {g_order}")
    return OrbitPartition(k, n, masks, orbit_id, lengths, rep_ranks, sort_idx, sorted_masks)


def setwise_stab_order(chain: StabilizerChain, orbit: OrbitRecord) -> int:
    q, r = divmod(chain.order(), orbit.length)
    if r:
        raise NonDivisible(f"orbit length {orbit.length} does not divide {chain.order()}")
    return q


def setwise_stabilizer_elements(chain: StabilizerChain, s: KSubset, bound: int = DEFAULT_STAB_BOUND) -> list[Permutation]:
    """All g with s^g = s, found by filtering the full element list."""
    if chain.order() > bound:
        raise OrderExceedsBound(f"group order {chain.order()} exceeds bound {bound}")
    want = s.mask
    pts = [x - 1 for x in s.members]
    out = []
    for g in chain.iter_raw():
        m = 0
        for x in pts:
            m |= 1 << g[x]
        if m == want:
            out.append(Permutation._raw(g))
    return out


def setwise_stabilizer_small(
    group: GeneratedGroup, chain: StabilizerChain, s: KSubset, bound: int = DEFAULT_STAB_BOUND
) -> GeneratedGroup:
    """The setwise stabilizer as a group whose generator list is every element."""
    elems = setwise_stabilizer_elements(chain, s, bound)
    elems.sort(key=lambda p: p._img)
    name = f"{group.name or 'G'}_{s}"
    return GeneratedGroup(group.degree, elems, name)


def verify_blocks(group: GeneratedGroup, partition: BlockPartition) -> bool:
    partition.check(group.degree)
    blocks = set(partition.blocks)
    for g in group.generators:
        for b in partition.blocks:
            if frozenset(g(x) for x in b) not in blocks:
                return False
    return True


def minimal_block_system(group: GeneratedGroup, a: int, b: int) -> BlockPartition:
    """Finest block system in which ``a`` and ``b`` share a block (union-find closure)."""
    n = group.degree
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = group.raw_generators()
    pending = [(a - 1, b - 1)]
    parent[find(b - 1)] = find(a - 1)
    while pending:
        x, y = pending.pop()
        for g in gens:
            gx, gy = find(g[x]), find(g[y])
            if gx != gy:
                parent[gy] = gx
                pending.append((g[x], g[y]))
    classes: dict[int, list[int]] = {}
    for x in range(n):
        classes.setdefault(find(x), []).append(x + 1)
    return BlockPartition.of(classes.values())


def is_transitive(group: GeneratedGroup) -> bool:
    return len(point_orbits(group)) == 1


def block_systems(group: GeneratedGroup) -> list[BlockPartition]:
    """Minimal block systems generated by the pairs (1, b), deduplicated."""
    out: list[BlockPartition] = []
    for b in range(2, group.degree + 1):
        bp = minimal_block_system(group, 1, b)
        if bp not in out:
            out.append(bp)
    return out


def is_primitive(group: GeneratedGroup, chain: StabilizerChain | None = None) -> bool:
    if not is_transitive(group):
        raise NotTransitive(f"{group.name or 'group'} is not transitive")
    return all(len(bp.blocks) == 1 for bp in block_systems(group))


def action_on_objects(
    group: GeneratedGroup,
    objects: Sequence[Hashable],
    act: Callable[[Permutation, Hashable], Hashable],
    name: str | None = None,
) -> GeneratedGroup:
    """Permutation group induced on ``objects`` (numbered 1.. in list order)."""
    index = {obj: i for i, obj in enumerate(objects)}
    gens = []
    for g in group.generators:
        gens.append(Permutation(tuple(index[act(g, obj)] for obj in objects)))
    return GeneratedGroup(len(objects), gens, name)


def subset_action(g: Permutation, s: Iterable[int]) -> frozenset[int]:
    return frozenset(g(x) for x in s)


def all_subsets(n: int, k: int) -> Iterable[KSubset]:
    for c in combinations(range(1, n + 1), k):
        yield KSubset(n, c)


def mask_of(points: Iterable[int]) -> int:
    return members_mask(points)
