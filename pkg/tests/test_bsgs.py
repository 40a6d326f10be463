import random
from itertools import product as iproduct

import pytest
from conftest import closure, loaded, records

from sworbits.bsgs import GeneratedGroup, OrderExceedsBound, build_chain, point_orbits
from sworbits.perm import Permutation, compose, parse_cycles


def group(n, *texts):
    return GeneratedGroup.from_cycles(n, texts)


def test_sym4_order():
    assert build_chain(group(4, "(1,2)", "(1,2,3,4)")).order() == 24


def test_trivial_order():
    assert build_chain(GeneratedGroup(5, [])).order() == 1
    assert build_chain(group(5, "()")).order() == 1


@pytest.mark.parametrize("name, order", [("G1", 1152), ("G2", 54), ("G3", 256)])
def test_section4_orders(name, order):
    assert loaded(name)[2].order() == order


def test_m24_order_is_product_of_orbit_sizes():
    chain = loaded("M24")[2]
    prod = 1
    for lv in chain.levels:
        prod *= len(lv.transversal)
    assert prod == chain.order() == 244823040


def test_contains_examples():
    c = build_chain(group(3, "(1,2,3)"))
    assert c.contains(Permutation.identity(3))
    assert not c.contains(parse_cycles("(1,2)", 3))
    rec, g2, chain = loaded("G2")
    assert all(chain.contains(g) for g in g2.generators)


def test_elements_up_to():
    s3 = build_chain(group(3, "(1,2)", "(1,2,3)"))
    assert len(set(s3.elements_up_to(10))) == 6
    g2 = loaded("G2")[2]
    assert len(set(g2.elements_up_to(100))) == 54
    with pytest.raises(OrderExceedsBound):
        loaded("M24")[2].elements_up_to(10**6)


def test_elements_match_closure():
    _, g, chain = loaded("G2")
    assert set(chain.elements_up_to(100)) == set(closure(g.generators))


@pytest.mark.parametrize("name", sorted(records()))
def test_declared_orders(name):
    rec, _, chain = loaded(name)
    assert chain.order() == rec.expected_order


@pytest.mark.parametrize("name", ["G1", "L2(7)", "M12", "M24", "2^4:Alt(7)"])
def test_chain_invariants(name):
    _, g, chain = loaded(name)
    for i, lv in enumerate(chain.levels):
        fixed = [chain.levels[j].base_point for j in range(i)]
        for s in lv.gens:
            assert all(s[b] == b for b in fixed)
        # transversal elements carry the base point to their key
        for x, u in lv.transversal.items():
            assert u[lv.base_point] == x
        sub_order = 1
        for lower in chain.levels[i:]:
            sub_order *= len(lower.transversal)
        assert sub_order % len(lv.transversal) == 0
    for gen in g.generators:
        h, lvl = chain.sift(gen._img)
        assert lvl == len(chain.levels) and Permutation(h).is_identity()


@pytest.mark.parametrize("name", ["G2", "L2(7)", "M24", "L3(4)"])
def test_random_words_are_members(name):
    _, g, chain = loaded(name)
    rng = random.Random(7)
    for _ in range(50):
        w = Permutation.identity(g.degree)
        for _ in range(rng.randint(1, 12)):
            w = compose(w, rng.choice(g.generators))
        assert chain.contains(w)


@pytest.mark.parametrize("name", ["G1", "G2", "L2(7)", "Sym(6)", "Alt(5)"])
def test_membership_agrees_with_brute_force(name):
    _, g, chain = loaded(name)
    elems = set(closure(g.generators))
    assert len(elems) == chain.order()
    rng = random.Random(11)
    for _ in range(300):
        p = Permutation(tuple(rng.sample(range(g.degree), g.degree)))
        assert chain.contains(p) == (p in elems)


def test_deterministic_base():
    _, g, _ = loaded("M24")
    assert build_chain(g).base == build_chain(g).base


def test_small_exhaustive_subgroups_of_s4():
    # every pair of elements of Sym(4): chain order equals brute-force closure size
    elems = [Permutation(p) for p in iproduct(range(4), repeat=4) if len(set(p)) == 4]
    rng = random.Random(3)
    for _ in range(60):
        a, b = rng.choice(elems), rng.choice(elems)
        assert build_chain(GeneratedGroup(4, [a, b])).order() == len(closure([a, b]))


def test_point_orbits():
    assert point_orbits(group(5, "(1,3)", "(2,4)")) == [[1, 3], [2, 4], [5]]
