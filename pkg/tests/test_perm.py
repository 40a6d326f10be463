import pytest
from hypothesis import given
from hypothesis import strategies as st

from sworbits.perm import (
    DegreeMismatch,
    KSubset,
    Permutation,
    PermutationError,
    compose,
    image_of_subset,
    inverse,
    parse_cycles,
    parse_subset,
    print_cycles,
)


@st.composite
def perms(draw, min_degree=1, max_degree=64, degree=None):
    n = degree or draw(st.integers(min_degree, max_degree))
    return Permutation(tuple(draw(st.permutations(range(n)))))


@st.composite
def perm_triples(draw):
    n = draw(st.integers(1, 24))
    return tuple(draw(perms(degree=n)) for _ in range(3))


def test_parse_single_cycle():
    assert parse_cycles("(1,2,3)", 3).images == (2, 3, 1)


def test_parse_g2_generator():
    p = parse_cycles("(4,7)(5,9)(6,1)", 9)
    assert {x for x in range(1, 10) if p(x) == x} == {2, 3, 8}
    assert p(6) == 1 and p(1) == 6


def test_parse_empty_is_identity():
    assert parse_cycles("", 5).is_identity()
    assert parse_cycles("()", 5).is_identity()


def test_parse_whitespace_and_singletons():
    p = parse_cycles(" (1, 12)(7, 3) (5) ", 12)
    assert p == parse_cycles("(1,12)(3,7)", 12)


@pytest.mark.parametrize(
    "text, msg",
    [
        ("(1,2)(2,3)", "repeated"),
        ("(1,2,9)", "9 out of range"),
        ("(1,2", "malformed"),
        ("1,2)", "malformed"),
        ("(1,a)", "bad point"),
    ],
)
def test_parse_errors(text, msg):
    with pytest.raises(PermutationError, match=msg):
        parse_cycles(text, 8)


def test_print_format():
    assert print_cycles(parse_cycles("(4,7)(5,9)(6,1)", 9)) == "(1,6)(4,7)(5,9)"
    assert print_cycles(Permutation.identity(4)) == "()"
    assert print_cycles(parse_cycles("(3,1,2)", 3)) == "(1,2,3)"


def test_compose_convention():
    p = parse_cycles("(1,2,3)", 3)
    q = parse_cycles("(1,2)", 3)
    # pointwise: 1->2->1, 2->3->3, 3->1->2
    assert compose(p, q).images == (1, 3, 2)
    assert compose(p, q) == parse_cycles("(2,3)", 3)


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_inverse_examples():
    assert inverse(Permutation.identity(5)).is_identity()
    assert inverse(parse_cycles("(1,2,3)", 3)) == parse_cycles("(1,3,2)", 3)


@given(perms(max_degree=24))
def test_inverse_law(p):
    assert compose(p, inverse(p)).is_identity()
    assert compose(inverse(p), p).is_identity()


@given(perms(max_degree=24))
def test_identity_law(q):
    assert compose(Permutation.identity(q.degree), q) == q


@given(perm_triples())
def test_associative(t):
    p, q, r = t
    assert compose(compose(p, q), r) == compose(p, compose(q, r))


@given(perms(max_degree=64))
def test_print_parse_roundtrip(p):
    assert parse_cycles(print_cycles(p), p.degree) == p


def test_image_of_subset_examples():
    s = KSubset(5, (1, 2, 3))
    assert image_of_subset(Permutation.identity(5), s) == s
    assert image_of_subset(parse_cycles("(1,4)(2,5)", 5), s) == KSubset(5, (3, 4, 5))


@given(st.data())
def test_action_axiom(data):
    n = data.draw(st.integers(1, 20))
    p, q = data.draw(perms(degree=n)), data.draw(perms(degree=n))
    pts = data.draw(st.sets(st.integers(1, n)))
    s = KSubset.of(n, pts)
    img = image_of_subset(compose(p, q), s)
    assert img == image_of_subset(q, image_of_subset(p, s))
    assert len(img) == len(s)


def test_ksubset_invariants():
    with pytest.raises(ValueError):
        KSubset(5, (2, 1))
    with pytest.raises(ValueError):
        KSubset(5, (1, 6))
    assert KSubset.of(5, [3, 1]) == KSubset(5, (1, 3))
    assert KSubset.from_mask(8, 0b101) == KSubset(8, (1, 3))
    assert KSubset(8, (1, 3)).mask == 0b101


@given(st.integers(1, 70).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n)))))
def test_mask_roundtrip_any_degree(arg):
    n, pts = arg
    s = KSubset.of(n, pts)
    assert KSubset.from_mask(n, s.mask) == s
    assert hash(KSubset.of(n, pts)) == hash(s)


def test_parse_subset():
    assert parse_subset("{1,2,3}", 5) == KSubset(5, (1, 2, 3))
    assert parse_subset("3, 1", 5) == KSubset(5, (1, 3))
    with pytest.raises(ValueError):
        parse_subset("{1,x}", 5)
    with pytest.raises(ValueError):
        parse_subset("{1,1}", 5)
