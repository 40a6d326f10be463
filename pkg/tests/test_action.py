import random
from itertools import combinations
from math import comb, factorial

import pytest
from conftest import brute_orbit, closure, loaded, records
from hypothesis import given, settings
from hypothesis import strategies as st

from sworbits.action import (
    BlockPartition,
    MalformedPartition,
    NotTransitive,
    block_systems,
    is_primitive,
    orbit_contains,
    setwise_stab_order,
    setwise_stabilizer_small,
    subset_orbit,
    subset_orbits,
    verify_blocks,
)
from sworbits.bsgs import GeneratedGroup, OrderExceedsBound, build_chain
from sworbits.perm import KSubset, image_of_subset
from sworbits.projline import (
    field_of_order,
    psl_pgl_groups,
    sigma_subset,
    valid_exponents,
)


def sym(n):
    g = GeneratedGroup.from_cycles(n, ["(1,2)", "(" + ",".join(map(str, range(1, n + 1))) + ")"])
    return g, build_chain(g)


def test_delta_orbit_lengths():
    for name, length in [("G1", 48), ("G3", 256), ("G2", 54)]:
        _, g, c = loaded(name)
        assert subset_orbit(g, c, KSubset(g.degree, (1, 2, 3))).length == length


@pytest.mark.parametrize("n, k", [(5, 2), (7, 3), (8, 4)])
def test_sym_orbit_is_everything(n, k):
    g, c = sym(n)
    assert subset_orbit(g, c, KSubset(n, tuple(range(1, k + 1)))).length == comb(n, k)


def test_orbit_contains():
    _, g, c = loaded("G1")
    orb = subset_orbit(g, c, KSubset(8, (1, 2, 3)))
    assert orbit_contains(orb, orb.representative)
    rng = random.Random(1)
    for _ in range(20):
        assert orbit_contains(orb, image_of_subset(c.random_element(rng), orb.representative))
    brute = brute_orbit(closure(g.generators), (1, 2, 3))
    assert orbit_contains(orb, KSubset(8, (1, 2, 4))) == (frozenset({1, 2, 4}) in brute)
    with pytest.raises(ValueError):
        orbit_contains(orb, KSubset(8, (1, 2)))


def test_orbit_matches_brute_force():
    _, g, c = loaded("G1")
    elems = closure(g.generators)
    for pts in combinations(range(1, 9), 3):
        orb = subset_orbit(g, c, KSubset(8, pts))
        brute = brute_orbit(elems, pts)
        assert orb.length == len(brute)
        assert orb.representative.members == min(tuple(sorted(s)) for s in brute)


@pytest.mark.parametrize(
    "name, sigmas",
    [("G1", [1, 2, 2, 3]), ("G2", [1, 2, 5, 5]), ("G3", [1, 6, 11, 35, 48, 91, 100, 132])],
)
def test_sigma_values(name, sigmas):
    _, g, c = loaded(name)
    assert [subset_orbits(g, c, k).sigma for k in range(1, len(sigmas) + 1)] == sigmas


@pytest.mark.parametrize("name", ["G1", "G2", "L2(7)", "Alt(5)", "trivial5"])
def test_partition_matches_brute_force(name):
    _, g, c = loaded(name)
    elems = closure(g.generators)
    n = g.degree
    for k in range(n + 1):
        part = subset_orbits(g, c, k)
        brute = {frozenset(brute_orbit(elems, s)) for s in combinations(range(1, n + 1), k)}
        assert part.sigma == len(brute)
        assert sorted(int(x) for x in part.lengths) == sorted(len(o) for o in brute)
        reps = [o.representative.members for o in part.orbits]
        assert reps == sorted(reps)


@pytest.mark.parametrize("name", ["G3", "L2(13)", "M11", "Sym(6)"])
def test_partition_invariants(name):
    _, g, c = loaded(name)
    n = g.degree
    for k in (2, 3, n // 2):
        part = subset_orbits(g, c, k)
        assert int(part.lengths.sum()) == comb(n, k)
        assert all(c.order() % int(x) == 0 for x in part.lengths)
        for orb in part.orbits[:5]:
            # the BFS route agrees, from the representative and from another member
            bfs = subset_orbit(g, c, orb.representative)
            assert bfs.length == orb.length and bfs.representative == orb.representative
            other = KSubset.from_mask(n, max(bfs.member_index))
            again = subset_orbit(g, c, other)
            assert (again.length, again.representative) == (orb.length, orb.representative)
            assert other in orb


def test_setwise_stab_order_examples():
    _, g, c = loaded("G1")
    assert setwise_stab_order(c, subset_orbit(g, c, KSubset(8, (1, 2, 3)))) == 24
    _, g, c = loaded("G2")
    assert setwise_stab_order(c, subset_orbit(g, c, KSubset(9, (1, 2, 3)))) == 1
    g, c = sym(7)
    s = KSubset(7, (1, 2, 3))
    assert setwise_stab_order(c, subset_orbit(g, c, s)) == factorial(3) * factorial(4)


def test_setwise_stabilizer_small():
    g, c = sym(4)
    whole = setwise_stabilizer_small(g, c, KSubset(4, (1, 2, 3, 4)))
    assert len(whole.generators) == 24
    s3 = setwise_stabilizer_small(g, c, KSubset(4, (1, 2, 3)))
    assert build_chain(s3).order() == 6
    assert all(x(4) == 4 for x in s3.generators)
    with pytest.raises(OrderExceedsBound):
        setwise_stabilizer_small(g, c, KSubset(4, (1,)), bound=10)


def test_pgl11_sigma_stabilizer_order_four():
    F = field_of_order(11)
    _, pgl = psl_pgl_groups(11, F)
    c = build_chain(pgl)
    for x in valid_exponents(F):
        stab = setwise_stabilizer_small(pgl, c, sigma_subset(x, 11))
        assert len(stab.generators) == 4


@pytest.mark.parametrize("name", ["G1", "G2", "G3", "L2(9)", "Sym(6)", "L2(13)"])
def test_stabilizer_times_orbit_is_order(name):
    _, g, c = loaded(name)
    rng = random.Random(5)
    for _ in range(5):
        k = rng.randint(1, g.degree - 1)
        s = KSubset.of(g.degree, rng.sample(range(1, g.degree + 1), k))
        stab = setwise_stabilizer_small(g, c, s)
        assert len(stab.generators) * subset_orbit(g, c, s).length == c.order()


def test_verify_blocks_examples():
    _, g1, _ = loaded("G1")
    assert verify_blocks(g1, BlockPartition.of([[1, 5, 7, 8], [2, 3, 4, 6]]))
    assert not verify_blocks(g1, BlockPartition.of([[1, 2, 3, 4], [5, 6, 7, 8]]))
    assert verify_blocks(g1, BlockPartition.of([range(1, 9)]))
    rec, g3, _ = loaded("G3")
    assert len(rec.blocks) == 3
    assert all(verify_blocks(g3, bp) for bp in rec.blocks)
    with pytest.raises(MalformedPartition):
        verify_blocks(g1, BlockPartition.of([[1, 2], [2, 3, 4, 5, 6, 7, 8]]))
    with pytest.raises(MalformedPartition):
        verify_blocks(g1, BlockPartition.of([[1, 2, 3]]))


def test_singleton_partition_always_blocks():
    for name in ("G2", "M11", "trivial5"):
        _, g, _ = loaded(name)
        assert verify_blocks(g, BlockPartition.of([[x] for x in range(1, g.degree + 1)]))


def test_is_primitive_examples():
    _, l27, c = loaded("L2(7)")
    assert is_primitive(l27, c)
    _, g2, c = loaded("G2")
    assert not is_primitive(g2, c)
    for n in range(2, 8):
        g, c = sym(n)
        assert is_primitive(g, c)
    with pytest.raises(NotTransitive):
        is_primitive(GeneratedGroup.from_cycles(4, ["(1,2)"]))


@pytest.mark.parametrize("name", sorted(records()))
def test_found_block_systems_verify(name):
    _, g, _ = loaded(name)
    for bp in block_systems(g):
        assert verify_blocks(g, bp)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_block_systems_are_minimal_brute_force(data):
    # degree-6 groups from random generators: every invariant partition containing
    # {1, b} in one block refines to the one we compute
    gens = [data.draw(st.permutations(range(6))) for _ in range(data.draw(st.integers(1, 2)))]
    from sworbits.action import minimal_block_system
    from sworbits.perm import Permutation

    g = GeneratedGroup(6, [Permutation(tuple(p)) for p in gens])
    b = data.draw(st.integers(2, 6))
    bp = minimal_block_system(g, 1, b)
    assert verify_blocks(g, bp)
    block_of_1 = next(x for x in bp.blocks if 1 in x)
    assert b in block_of_1
    # brute force: smallest invariant partition among all set partitions of 6 points
    best = None
    for cand in _set_partitions(list(range(1, 7))):
        part = BlockPartition.of(cand)
        if any(1 in x and b in x for x in part.blocks) and verify_blocks(g, part):
            size = len(next(x for x in part.blocks if 1 in x))
            best = size if best is None else min(best, size)
    assert len(block_of_1) == best


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


@pytest.mark.parametrize("name", sorted(records()))
def test_livingstone_wagner_monotone(name):
    rec, g, c = loaded(name)
    n = g.degree
    sig = [subset_orbits(g, c, k).sigma for k in range(1, n // 2 + 1)]
    assert all(a <= b for a, b in zip(sig, sig[1:]))
