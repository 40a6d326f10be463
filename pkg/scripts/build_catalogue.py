"""Regenerate src/sworbits/data/builtin.cat.

Projective groups come from ``sworbits.projline``.  The remaining primitive
groups are constructed here from their natural actions, reduced to a short
generating set, and written out as explicit cycle notation:

* Sym(6) on the ten splittings of six points into two triples
* Alt(7) on the 15 points of PG(3,2), via an Alt(7) inside GL(4,2) = Alt(8)
* ASL(2,4) and 2^4:Alt(7) as affine groups on 16 vectors
* L3(4) on the 21 points of PG(2,4)

Usage: python scripts/build_catalogue.py [output-path]
"""

from __future__ import annotations

import random
import sys
from itertools import combinations, product
from pathlib import Path

from sworbits.action import BlockPartition, action_on_objects
from sworbits.bsgs import GeneratedGroup, build_chain
from sworbits.catalogue import GroupRecord, format_record
from sworbits.perm import KSubset, Permutation, print_cycles
from sworbits.projline import expected_orders, field_make, psl_pgl_groups

OUT = Path(__file__).resolve().parents[1] / "src" / "sworbits" / "data" / "builtin.cat"

M24 = [
    "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
    "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
    "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)",
]
M22 = [
    "(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16,17,18,19,20,21,22)",
    "(1,4,5,9,3)(2,8,10,7,6)(12,15,16,20,14)(13,19,21,18,17)",
    "(1,21)(2,10,8,6)(3,13,4,17)(5,19,9,18)(11,22)(12,14,16,20)",
]
M11 = ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"]
M12 = M11 + ["(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)"]

G1 = [
    "(4,6)", "(1,2,5,3)(4,8)(6,7)", "(1,8)(4,6)", "(3,4,6)", "(1,7,8)",
    "(2,3)(4,6)", "(2,4)(3,6)", "(1,5)(7,8)", "(1,7)(5,8)",
]
G2 = ["(4,7)(5,9)(6,1)", "(8,9,5)(2,7,4)(3,1,6)", "(4,5,6)(7,1,9)", "(8,3,2)(7,1,9)"]
G3 = [
    "(1,12)(7,3)(11,8)(4,2)(5,10)(6,9)(13,15)(14,16)",
    "(1,8,6,14)(7,2,5,13)(11,9,16,12)(4,10,15,3)",
    "(1,14)(7,13)(11,12)(4,3)(5,2)(6,8)(9,16)(10,15)",
    "(1,6)(7,5)(11,15)(4,16)(2,14)(8,13)(9,12)(10,3)",
    "(1,16)(7,15)(11,6)(4,5)(2,3)(8,12)(9,14)(10,13)",
    # printed as (7,8)(9,10)(3,12)(13,14), which generates a group of order
    # 812851200 and breaks the listed block {6,7}; (2,8) restores order 256
    "(2,8)(9,10)(3,12)(13,14)",
    "(11,4)(9,10)(3,12)(15,16)",
    "(1,7)(11,4)(5,6)(2,8)(9,10)(3,12)(13,14)(15,16)",
]


def reduce_generators(gens: list[Permutation], target: int) -> list[Permutation]:
    """Greedily drop generators while the generated order stays ``target``."""
    n = gens[0].degree
    keep = list(gens)
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1:]
        if trial and build_chain(GeneratedGroup(n, trial)).order() == target:
            keep = trial
        else:
            i += 1
    return keep


def sym6_on_splittings() -> GeneratedGroup:
    s6 = GeneratedGroup.from_cycles(6, ["(1,2)", "(1,2,3,4,5,6)"])
    pts = set(range(1, 7))
    splits = [frozenset({frozenset(a), frozenset(pts - set(a))}) for a in combinations(range(1, 7), 3) if 1 in a]
    act = lambda g, sp: frozenset(frozenset(g(x) for x in part) for part in sp)
    return action_on_objects(s6, splits, act, "Sym(6)")


# GF(2)^4: vectors are 4-bit ints, a matrix is a tuple of its four row vectors


def _vecmat(v: int, rows: tuple[int, ...]) -> int:
    out = 0
    for i, r in enumerate(rows):
        if v >> i & 1:
            out ^= r
    return out


def _gl42_perm(rows: tuple[int, ...], affine: bool, shift: int = 0) -> Permutation:
    if affine:
        return Permutation(tuple(_vecmat(v, rows) ^ shift for v in range(16)))
    return Permutation(tuple(_vecmat(v, rows) - 1 for v in range(1, 16)))


def alt7_in_gl42(seed: int = 2024) -> list[tuple[int, ...]]:
    """Two matrices generating an Alt(7) inside GL(4,2), by seeded search."""
    rng = random.Random(seed)
    mats = []
    for rows in product(range(1, 16), repeat=4):
        if len({_vecmat(v, rows) for v in range(16)}) == 16:
            mats.append(rows)
    while True:
        a, b = rng.choice(mats), rng.choice(mats)
        g = GeneratedGroup(15, [_gl42_perm(a, False), _gl42_perm(b, False)])
        if build_chain(g).order() == 2520:
            return [a, b]


def affine_gf4_sl2() -> GeneratedGroup:
    F = field_make(2, 2)
    w = F.omega
    pts = [(x, y) for y in range(4) for x in range(4)]
    idx = {p: i for i, p in enumerate(pts)}

    def lin(m):
        a, b, c, d = m
        return Permutation(tuple(idx[(F.add(F.mul(x, a), F.mul(y, c)), F.add(F.mul(x, b), F.mul(y, d)))] for x, y in pts))

    gens = [lin((1, 1, 0, 1)), lin((1, 0, 1, 1)), lin((w, 0, 0, F.inv(w)))]
    gens.append(Permutation(tuple(idx[(F.add(x, 1), y)] for x, y in pts)))
    return GeneratedGroup(16, gens, "ASL(2,4)")


def l34_on_points() -> GeneratedGroup:
    F = field_make(2, 2)
    w = F.omega

    def normalise(v):
        lead = next(c for c in v if c)
        inv = F.inv(lead)
        return tuple(F.mul(inv, c) for c in v)

    pts = sorted({normalise(v) for v in product(range(4), repeat=3) if any(v)})
    idx = {p: i for i, p in enumerate(pts)}
    gens = []
    for i, j in [(i, j) for i in range(3) for j in range(3) if i != j]:
        for t in (1, w):
            # row-vector action of the transvection I + t*E_ij: v_j += t*v_i
            def image(v, i=i, j=j, t=t):
                v = list(v)
                v[j] = F.add(v[j], F.mul(t, v[i]))
                return normalise(v)

            gens.append(Permutation(tuple(idx[image(p)] for p in pts)))
    return GeneratedGroup(21, gens, "L3(4)")


def record(name, group_or_gens, degree=None, **kw) -> GroupRecord:
    if isinstance(group_or_gens, GeneratedGroup):
        degree = group_or_gens.degree
        texts = [print_cycles(g) for g in group_or_gens.generators]
    else:
        texts = list(group_or_gens)
    order = build_chain(GeneratedGroup.from_cycles(degree, texts)).order()
    if kw.get("expected_order") not in (None, order):
        raise SystemExit(f"{name}: order {order} != {kw['expected_order']}")
    kw.setdefault("expected_order", order)
    return GroupRecord(name=name, degree=degree, generator_text=texts, **kw)


def build() -> list[GroupRecord]:
    recs: list[GroupRecord] = []
    proj = {}
    for q in (5, 7, 9, 11, 13, 16):
        psl, pgl = psl_pgl_groups(q)
        proj[q] = (psl, pgl)
    table_k = {5: 2, 7: 3, 9: 4, 11: 5, 13: 6, 16: 5}
    note_proj = "projline: Moebius action of PSL(2,{q}) on PG({q}); code x -> point x+1, inf -> point {n}"
    for q in (5, 7):
        psl, pgl = proj[q]
        recs.append(record(psl.name, psl, expected_order=expected_orders(q)[0], expected_primitive=True,
                           expected_k=[table_k[q]], source_note=note_proj.format(q=q, n=q + 1)))
    psl7, pgl7 = proj[7]
    recs.append(record(pgl7.name, pgl7, expected_order=336, expected_primitive=True, expected_k=[3],
                       source_note="projline: Moebius action of PGL(2,7) on PG(7)"))
    recs.append(record(proj[9][0].name, proj[9][0], expected_order=360, expected_primitive=True, expected_k=[4],
                       source_note=note_proj.format(q=9, n=10)))
    recs.append(record("Sym(6)", sym6_on_splittings(), expected_order=720, expected_primitive=True, expected_k=[4],
                       source_note="Sym(6) acting on the 10 splittings of {1..6} into two 3-sets, numbered by the lex order of the part containing 1"))
    psl11, pgl11 = proj[11]
    recs.append(record(psl11.name, psl11, expected_order=660, expected_primitive=True, expected_k=[5],
                       source_note=note_proj.format(q=11, n=12)))
    recs.append(record(pgl11.name, pgl11, expected_order=1320, expected_primitive=True, expected_k=[5],
                       source_note="projline: Moebius action of PGL(2,11) on PG(11)"))
    recs.append(record(proj[13][0].name, proj[13][0], expected_order=1092, expected_primitive=True, expected_k=[6],
                       source_note=note_proj.format(q=13, n=14)))

    a7 = alt7_in_gl42()
    a7_15 = GeneratedGroup(15, [_gl42_perm(m, False) for m in a7], "Alt(7)")
    recs.append(record("Alt(7)", a7_15, expected_order=2520, expected_primitive=True, expected_k=[6],
                       source_note="Alt(7) < GL(4,2) acting on the 15 nonzero vectors of GF(2)^4 (points of PG(3,2)); vector v is point v"))
    asl = affine_gf4_sl2()
    asl_gens = reduce_generators(asl.generators, 960)
    recs.append(record("ASL(2,4)", GeneratedGroup(16, asl_gens), expected_order=960, expected_primitive=True,
                       expected_k=[6], source_note="x -> xA + b on GF(4)^2 with A in SL(2,4); vector (x,y) is point 1+x+4y"))
    aff = [_gl42_perm(m, True) for m in a7] + [_gl42_perm((1, 2, 4, 8), True, shift=1)]
    recs.append(record("2^4:Alt(7)", GeneratedGroup(16, aff), expected_order=40320, expected_primitive=True,
                       expected_k=[7], source_note="affine group 2^4:Alt(7) < AGL(4,2) on GF(2)^4; vector v is point v+1"))
    psl16 = proj[16][0]
    recs.append(record(psl16.name, psl16, expected_order=4080, expected_primitive=True, expected_k=[5],
                       source_note=note_proj.format(q=16, n=17)))
    l34 = l34_on_points()
    l34_gens = reduce_generators(l34.generators, 20160)
    recs.append(record("L3(4)", GeneratedGroup(21, l34_gens), expected_order=20160, expected_primitive=True,
                       expected_k=[6], source_note="PSL(3,4) on the 21 points of PG(2,4), generated by transvections"))
    recs.append(record("M22", M22, 22, expected_order=443520, expected_primitive=True, expected_k=[10],
                       source_note="Mathieu group M22, standard degree-22 generators"))
    recs.append(record("M23", M24[:2], 23, expected_order=10200960, expected_primitive=True, expected_k=[10],
                       source_note="Mathieu group M23 = point stabilizer of 24 in M24"))
    recs.append(record("M24", M24, 24, expected_order=244823040, expected_primitive=True, expected_k=[11],
                       source_note="Mathieu group M24, standard degree-24 generators"))

    # transitive imprimitive examples
    recs.append(record("G1", G1, 8, expected_order=1152, expected_primitive=False, expected_k=[3],
                       blocks=[BlockPartition.of([[1, 5, 7, 8], [2, 3, 4, 6]])],
                       orbits=[(KSubset(8, (1, 2, 3)), 48)], sigma=[1, 2, 2, 3],
                       source_note="transitive imprimitive example on 8 points"))
    recs.append(record("G2", G2, 9, expected_order=54, expected_primitive=False, expected_k=[3],
                       blocks=[BlockPartition.of([[1, 7, 9], [2, 3, 8], [4, 5, 6]])],
                       orbits=[(KSubset(9, (1, 2, 3)), 54)], sigma=[1, 2, 5, 5],
                       source_note="transitive imprimitive example on 9 points"))
    recs.append(record("G3", G3, 16, expected_order=256, expected_primitive=False, expected_k=[3, 7],
                       blocks=[
                           BlockPartition.of([[1, 5], [2, 14], [3, 9], [4, 16], [6, 7], [8, 13], [10, 12], [11, 15]]),
                           BlockPartition.of([[3, 9, 10, 12], [1, 5, 6, 7], [4, 11, 15, 16], [2, 8, 13, 14]]),
                           BlockPartition.of([[1, 3, 5, 6, 7, 9, 10, 12], [2, 4, 8, 11, 13, 14, 15, 16]]),
                       ],
                       orbits=[(KSubset(16, (1, 2, 3)), 256)], sigma=[1, 6, 11, 35, 48, 91, 100, 132],
                       source_note="transitive 2-group on 16 points; sixth generator corrected from (7,8) to (2,8)"))

    # negative controls and utility groups
    recs.append(record("Alt(5)", ["(1,2,3)", "(1,2,3,4,5)"], 5, expected_order=60, expected_primitive=True,
                       expected_k=[], source_note="negative control"))
    recs.append(record("Sym(7)", ["(1,2)", "(1,2,3,4,5,6,7)"], 7, expected_order=5040, expected_primitive=True,
                       expected_k=[], source_note="negative control"))
    recs.append(record("M11", M11, 11, expected_order=7920, expected_primitive=True, expected_k=[],
                       source_note="negative control: Mathieu group M11"))
    recs.append(record("M12", M12, 12, expected_order=95040, expected_primitive=True, expected_k=[],
                       source_note="negative control: Mathieu group M12"))
    recs.append(record("Sym(5)", ["(1,2)", "(1,2,3,4,5)"], 5, expected_order=120, expected_primitive=True,
                       skip_scan=True, source_note="full symmetric group; a single orbit never witnesses"))
    recs.append(record("Sym(8)", ["(1,2)", "(1,2,3,4,5,6,7,8)"], 8, expected_order=40320, expected_primitive=True,
                       skip_scan=True, source_note="full symmetric group; a single orbit never witnesses"))
    recs.append(record("trivial5", ["()"], 5, expected_order=1, expected_primitive=False, expected_k=[],
                       source_note="identity only"))
    return recs


HEADER = """\
# Built-in group catalogue. Regenerate with scripts/build_catalogue.py.
# Sixteen primitive groups with a witness, three transitive imprimitive
# examples, negative controls, and two symmetric groups for utilities.
"""


def main(argv: list[str]) -> None:
    out = Path(argv[1]) if len(argv) > 1 else OUT
    text = HEADER + "\n" + "\n".join(format_record(r) for r in build())
    out.write_text(text)
    print(f"wrote {out}")


if __name__ == "__main__":
    main(sys.argv)
