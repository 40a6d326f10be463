"""Deciding the Siemons-Wagner orbit-length property.

A k-subset D is a witness when its orbit is strictly longer than the orbit of
every (k+1)-subset D + {b}.  ``sw_scan`` tests one representative per orbit
on k-subsets; extension lengths come from orbit ids in the (k+1)-partition.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .action import OrbitPartition, subset_orbit, subset_orbits
from .bsgs import GeneratedGroup, OrderExceedsBound, StabilizerChain
from .perm import KSubset, mask_members


@dataclass(frozen=True)
class SwWitness:
    k: int
    delta: KSubset
    big_n: int
    big_l: int
    extensions: tuple[tuple[int, int], ...]  # (beta, |(delta + beta)^G|)
    group: str = "G"

    def __post_init__(self):
        if not self.big_n > self.big_l:
            raise ValueError("not a witness: N <= L")

    def line(self) -> str:
        members = ",".join(map(str, self.delta.members))
        return f"SW k={self.k} group={self.group} delta={{{members}}} N={self.big_n} L={self.big_l}"


def default_k_range(degree: int) -> range:
    return range(2, degree // 2)


class PartitionCache:
    """Lazily built partitions keyed by k, dropping those below a floor."""

    def __init__(self, group: GeneratedGroup, chain: StabilizerChain | None):
        self.group = group
        self.chain = chain
        self._parts: dict[int, OrbitPartition] = {}

    def __getitem__(self, k: int) -> OrbitPartition:
        if k not in self._parts:
            self._parts[k] = subset_orbits(self.group, self.chain, k)
        return self._parts[k]

    def release_below(self, k: int) -> None:
        for key in [key for key in self._parts if key < k]:
            del self._parts[key]


def scan_k(
    group: GeneratedGroup, lower: OrbitPartition, upper: OrbitPartition, name: str | None = None
) -> list[SwWitness]:
    n = group.degree
    k = lower.k
    out = []
    for oid in range(lower.sigma):
        rep_mask = int(lower.masks[lower.rep_ranks[oid]])
        big_n = int(lower.lengths[oid])
        betas = [b for b in range(1, n + 1) if not rep_mask >> (b - 1) & 1]
        if not betas:
            continue
        ext = np.array([rep_mask | 1 << (b - 1) for b in betas], dtype=np.uint64)
        lens = upper.lengths[upper.orbit_ids_of(ext)]
        big_l = int(lens.max())
        if big_n > big_l:
            out.append(
                SwWitness(
                    k,
                    KSubset.from_mask(n, rep_mask),
                    big_n,
                    big_l,
                    tuple((b, int(x)) for b, x in zip(betas, lens)),
                    name or group.name or "G",
                )
            )
    return out


def sw_scan(
    group: GeneratedGroup,
    chain: StabilizerChain | None,
    k_range: Iterable[int] | None = None,
    cache: PartitionCache | None = None,
) -> list[SwWitness]:
    """All witnesses for k in ``k_range`` (default 2..n//2 - 1), sorted by (k, delta)."""
    n = group.degree
    ks = sorted(set(default_k_range(n) if k_range is None else k_range))
    for k in ks:
        if not 1 <= k <= n - 1:
            raise ValueError(f"k={k} outside 1..{n - 1}")
    cache = cache or PartitionCache(group, chain)
    out: list[SwWitness] = []
    for k in ks:
        cache.release_below(k)
        out.extend(scan_k(group, cache[k], cache[k + 1]))
    return sorted(out, key=lambda w: (w.k, w.delta.members))


@dataclass(frozen=True)
class UdCounts:
    u: int
    d: int
    delta_len: int
    sigma_len: int
    nested: bool

    @property
    def identity_holds(self) -> bool:
        return self.d * self.sigma_len == self.u * self.delta_len

    def line(self) -> str:
        verdict = "ok" if self.identity_holds else "fail"
        line = f"ud u={self.u} d={self.d} |D^G|={self.delta_len} |S^G|={self.sigma_len} identity={verdict}"
        return line if self.nested else line + " nested=false"

    def lines(self) -> list[str]:
        if self.nested:
            return [self.line()]
        return [self.line(), "note delta-not-contained-in-sigma identity-check-skipped"]


class LemmaViolation(AssertionError):
    pass


def ud_counts(
    group: GeneratedGroup,
    chain: StabilizerChain | None,
    delta: KSubset,
    sigma: KSubset,
    cache: PartitionCache | None = None,
) -> UdCounts:
    """u and d for a k-subset ``delta`` and a (k+1)-subset ``sigma``.

    Orbits come from BFS, or from ``cache`` partitions when one is supplied.
    """
    if len(sigma) != len(delta) + 1:
        raise ValueError(f"|sigma| must be |delta|+1, got {len(sigma)} and {len(delta)}")
    n = group.degree
    dm, sm = delta.mask, sigma.mask
    if cache is not None:
        lo, hi = cache[len(delta)], cache[len(sigma)]
        d_id, s_id = lo.orbit_id_of(dm), hi.orbit_id_of(sm)
        delta_len, sigma_len = int(lo.lengths[d_id]), int(hi.lengths[s_id])
        in_delta = lambda m: lo.orbit_id_of(m) == d_id
        in_sigma = lambda m: hi.orbit_id_of(m) == s_id
    else:
        d_orb, s_orb = subset_orbit(group, chain, delta), subset_orbit(group, chain, sigma)
        delta_len, sigma_len = d_orb.length, s_orb.length
        in_delta = d_orb.member_index.__contains__
        in_sigma = s_orb.member_index.__contains__
    d = sum(1 for a in sigma.members if in_delta(sm & ~(1 << (a - 1))))
    u = sum(1 for b in range(1, n + 1) if not dm >> (b - 1) & 1 and in_sigma(dm | 1 << (b - 1)))
    nested = dm & sm == dm
    res = UdCounts(u, d, delta_len, sigma_len, nested)
    if nested and not res.identity_holds:
        raise LemmaViolation(res.line())
    return res


def max_orbit_check(
    group: GeneratedGroup, chain: StabilizerChain | None, witness: SwWitness, cache: PartitionCache | None = None
) -> bool:
    if witness.k != 3:
        raise ValueError("max_orbit_check applies to k=3 witnesses")
    part = cache[3] if cache is not None else subset_orbits(group, chain, 3)
    return witness.big_n == int(part.lengths.max())


@dataclass
class ChainRow:
    beta: int
    sigma_len: int
    delta_under_gsigma: int  # |D^{G_S}|
    sigma_under_gdelta: int  # |S^{G_D}|


@dataclass
class Sw1Report:
    witness: SwWitness
    rows: list[ChainRow] = field(default_factory=list)
    pairs_covered: bool = False

    def row_holds(self, row: ChainRow) -> bool:
        k = self.witness.k
        return k + 1 >= row.delta_under_gsigma > row.sigma_under_gdelta >= 1

    @property
    def chain_holds(self) -> bool:
        return all(self.row_holds(r) for r in self.rows)

    def lines(self) -> list[str]:
        w = self.witness
        out = []
        for r in self.rows:
            out.append(
                f"sw1 group={w.group} k={w.k} delta={w.delta} beta={r.beta}"
                f" |D^GS|={r.delta_under_gsigma} |S^GD|={r.sigma_under_gdelta}"
                f" chain={'ok' if self.row_holds(r) else 'fail'}"
            )
        out.append(f"sw1 group={w.group} k={w.k} delta={w.delta} pairs_covered={str(self.pairs_covered).lower()}")
        return out


def _orbit_under(elements: list[tuple[int, ...]], pts: list[int]) -> int:
    seen = set()
    for g in elements:
        m = 0
        for x in pts:
            m |= 1 << g[x]
        seen.add(m)
    return len(seen)


def pairs_covered(group: GeneratedGroup, chain: StabilizerChain | None, delta: KSubset) -> bool:
    """Whether every 2-subset of points lies inside some image of ``delta``."""
    n = group.degree
    covered = set()
    for m in subset_orbit(group, chain, delta).member_index:
        pts = mask_members(m)
        covered.update(combinations(pts, 2))
    return len(covered) == n * (n - 1) // 2


def sw1_chain_check(
    group: GeneratedGroup, chain: StabilizerChain, witness: SwWitness, bound: int = 10**6
) -> Sw1Report:
    """Orbit lengths of D under G_S and of S under G_D for each shorter extension S."""
    if chain.order() > bound:
        raise OrderExceedsBound(f"group order {chain.order()} exceeds bound {bound}")
    elements = list(chain.iter_raw())
    delta = witness.delta
    dpts = [x - 1 for x in delta.members]
    dmask = delta.mask
    g_delta = [g for g in elements if _image_mask(g, dpts) == dmask]
    report = Sw1Report(witness)
    for beta, sig_len in witness.extensions:
        if not sig_len < witness.big_n:
            continue
        spts = dpts + [beta - 1]
        smask = dmask | 1 << (beta - 1)
        g_sigma = [g for g in elements if _image_mask(g, spts) == smask]
        report.rows.append(ChainRow(beta, sig_len, _orbit_under(g_sigma, dpts), _orbit_under(g_delta, spts)))
    report.pairs_covered = pairs_covered(group, chain, delta)
    return report


def _image_mask(g: tuple[int, ...], pts: list[int]) -> int:
    m = 0
    for x in pts:
        m |= 1 << g[x]
    return m
