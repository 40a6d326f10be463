"""Finite fields, the projective line PG(q), and PSL/PGL(2,q) as permutation groups.

Field elements are integers 0..q-1 whose base-p digits are the polynomial
coefficients (lowest degree first).  For prime q this is the usual residue.
Projective points are coded 0..q-1 for span(1, x) and ``INF`` for span(0, 1);
as permutation points, code x is point x+1 and ``INF`` is point q+1.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from math import comb, gcd

from .action import setwise_stab_order, setwise_stabilizer_elements, subset_orbit
from .bsgs import GeneratedGroup, build_chain
from .perm import KSubset, Permutation

INF = "inf"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise ValueError."""
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# dense polynomials over GF(p): lists of coefficients, lowest degree first


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _poly_trim(a)
    return a


def _monic_polys(p: int, deg: int) -> Iterator[list[int]]:
    for low in range(p**deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(low % p)
            low //= p
        yield coeffs + [1]


def _is_irreducible(m: list[int], p: int) -> bool:
    e = len(m) - 1
    if e <= 1:
        return True
    for d in range(1, e // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(m, f, p):
                return False
    return True


@dataclass(frozen=True)
class FiniteField:
    p: int
    e: int
    modulus: tuple[int, ...]  # monic, lowest degree first
    omega: int
    _exp: tuple[int, ...] = field(repr=False)
    _log: tuple[int, ...] = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.e

    def elements(self) -> range:
        return range(self.q)

    def add(self, x: int, y: int) -> int:
        p = self.p
        if self.e == 1:
            return (x + y) % p
        if p == 2:
            return x ^ y
        out, place = 0, 1
        while x or y:
            out += ((x % p + y % p) % p) * place
            x //= p
            y //= p
            place *= p
        return out

    def neg(self, x: int) -> int:
        p = self.p
        if self.e == 1:
            return -x % p
        if p == 2:
            return x
        out, place = 0, 1
        while x:
            out += (-(x % p) % p) * place
            x //= p
            place *= p
        return out

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self._exp[-self._log[x] % (self.q - 1)]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, k: int) -> int:
        if x == 0:
            return 0 if k > 0 else 1
        return self._exp[self._log[x] * k % (self.q - 1)]

    def is_square(self, x: int) -> bool:
        """True iff x = z*z for some z; 0 counts as a square."""
        if x == 0 or self.p == 2:
            return True
        return self.pow(x, (self.q - 1) // 2) == 1

    def element(self, n: int) -> int:
        """The image of the integer n under Z -> GF(q)."""
        return n % self.p

    def omega_power(self, a: int) -> int:
        return self._exp[a % (self.q - 1)]


def field_make(p: int, e: int = 1) -> FiniteField:
    """GF(p^e) with the least irreducible monic modulus and least primitive element.

    "Least" orders candidates by their integer encoding, i.e. by the base-p
    number whose digits are the coefficients below the leading one.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be at least 1")
    q = p**e
    if q > 1 << 16:
        raise ValueError("field order limited to 2^16")
    modulus = next(m for m in _monic_polys(p, e) if _is_irreducible(m, p))

    def digits(x: int) -> list[int]:
        out = []
        for _ in range(e):
            out.append(x % p)
            x //= p
        return out

    def encode(c: list[int]) -> int:
        return sum(d * p**i for i, d in enumerate(c))

    def pmul(x: int, y: int) -> int:
        a, b = digits(x), digits(y)
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        return encode(_poly_mod(prod, modulus, p))

    def ppow(x: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = pmul(r, x)
            x = pmul(x, x)
            k >>= 1
        return r

    factors = _prime_factors(q - 1)
    omega = next(
        x for x in range(1, q) if all(ppow(x, (q - 1) // r) != 1 for r in factors)
    )
    exp = [1] * (q - 1)
    for i in range(1, q - 1):
        exp[i] = pmul(exp[i - 1], omega)
    log = [0] * q
    for i, x in enumerate(exp):
        log[x] = i
    return FiniteField(p, e, tuple(modulus), omega, tuple(exp), tuple(log))


def field_of_order(q: int) -> FiniteField:
    p, e = prime_power(q)
    return field_make(p, e)


def field_arith(F: FiniteField, op: str, x: int, y: int | None = None):
    """Dispatch ``add|mul|inv|neg|is_square`` by name."""
    if op == "add":
        return F.add(x, y)
    if op == "mul":
        return F.mul(x, y)
    if op == "inv":
        return F.inv(x)
    if op == "neg":
        return F.neg(x)
    if op == "is_square":
        return F.is_square(x)
    raise ValueError(f"unknown field operation {op!r}")


@dataclass(frozen=True)
class Mat2:
    """Row-major [[a, b], [c, d]] over a FiniteField; acts on row vectors from the right."""

    a: int
    b: int
    c: int
    d: int

    def det(self, F: FiniteField) -> int:
        return F.sub(F.mul(self.a, self.d), F.mul(self.b, self.c))

    def matmul(self, other: Mat2, F: FiniteField) -> Mat2:
        m, n = self, other
        return Mat2(
            F.add(F.mul(m.a, n.a), F.mul(m.b, n.c)),
            F.add(F.mul(m.a, n.b), F.mul(m.b, n.d)),
            F.add(F.mul(m.c, n.a), F.mul(m.d, n.c)),
            F.add(F.mul(m.c, n.b), F.mul(m.d, n.d)),
        )

    def scale(self, lam: int, F: FiniteField) -> Mat2:
        return Mat2(F.mul(lam, self.a), F.mul(lam, self.b), F.mul(lam, self.c), F.mul(lam, self.d))


def point_index(code, q: int) -> int:
    """Permutation point for a projective code: x -> x+1, INF -> q+1."""
    return q + 1 if code == INF else code + 1


def point_code(index: int, q: int):
    return INF if index == q + 1 else index - 1


def line_points(F: FiniteField) -> list:
    return list(range(F.q)) + [INF]


def moebius_image(m: Mat2, code, F: FiniteField):
    if code == INF:
        x0, x1 = m.c, m.d
    else:
        x0 = F.add(m.a, F.mul(code, m.c))
        x1 = F.add(m.b, F.mul(code, m.d))
    if x0 == 0:
        return INF
    return F.div(x1, x0)


def moebius_perm(m: Mat2, F: FiniteField) -> Permutation:
    if m.det(F) == 0:
        raise ValueError(f"singular matrix {m}")
    q = F.q
    return Permutation(tuple(point_index(moebius_image(m, x, F), q) - 1 for x in line_points(F)))


def matrix_A(F: FiniteField, x: int) -> Mat2:
    """[[1, x], [-1, -1]]: swaps 0 with x and 1 with INF."""
    one = 1
    return Mat2(one, x, F.neg(one), F.neg(one))


def psl_pgl_groups(q: int, F: FiniteField | None = None) -> tuple[GeneratedGroup, GeneratedGroup]:
    """(PSL(2,q), PGL(2,q)) acting on the q+1 points of PG(q)."""
    if q < 4:
        raise ValueError("need q >= 4")
    F = F or field_of_order(q)
    w = F.omega
    minus1 = F.neg(1)
    pgl = [Mat2(w, 0, 0, 1), Mat2(1, 1, 0, 1), Mat2(0, 1, 1, 0)]
    psl = [Mat2(F.mul(w, w), 0, 0, 1), Mat2(1, 1, 0, 1), Mat2(0, 1, minus1, 0)]
    tag = f"{q}"
    small = GeneratedGroup(q + 1, [moebius_perm(m, F) for m in psl], f"L2({tag})")
    big = GeneratedGroup(q + 1, [moebius_perm(m, F) for m in pgl], f"PGL(2,{tag})")
    return small, big


def expected_orders(q: int) -> tuple[int, int]:
    full = q * (q * q - 1)
    return full // gcd(2, q - 1), full


def valid_exponents(F: FiniteField) -> list[int]:
    """Elements x != 0, 1 with x not in {-1, 2, 1/2} and x^2 - x + 1 != 0."""
    if F.p == 2:
        raise ValueError("exclusion set is degenerate in characteristic 2")
    two = F.element(2)
    excluded = {0, 1, F.neg(1), two, F.inv(two)}
    out = []
    for x in F.elements():
        if x in excluded:
            continue
        if F.add(F.sub(F.mul(x, x), x), 1) == 0:
            continue
        out.append(x)
    return out


def sigma_subset(x: int, q: int) -> KSubset:
    return KSubset.of(q + 1, [point_index(c, q) for c in (0, 1, INF, x)])


def restricted_cycles(p: Permutation, pts: list) -> list[tuple]:
    """Cycles of ``p`` on the invariant set ``pts`` (projective codes)."""
    # caller guarantees pts is p-invariant; this is asserted by the cycle walk
    q = p.degree - 1
    out, seen = [], set()
    for c in pts:
        if c in seen:
            continue
        cyc = [c]
        seen.add(c)
        nxt = point_code(p(point_index(c, q)), q)
        while nxt != c:
            if nxt not in pts:
                raise ValueError(f"{pts} not invariant")
            seen.add(nxt)
            cyc.append(nxt)
            nxt = point_code(p(point_index(nxt, q)), q)
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


@dataclass
class ExponentRow:
    x: int
    pgl_stab: int
    psl_stab: int
    pgl_stab_brute: int | None
    psl_stab_brute: int | None
    det_a: int
    det_a_square: bool
    a_in_psl: bool
    a_cycles: list[tuple]
    psl_orbit: int
    omega3: int

    @property
    def a_cycles_ok(self) -> bool:
        as_sets = {frozenset(c) for c in self.a_cycles}
        return as_sets == {frozenset((0, self.x)), frozenset((1, INF))}

    @property
    def orbit_exceeds(self) -> bool:
        return self.psl_orbit > self.omega3


@dataclass
class TheoremReport:
    q: int
    psl_order: int
    pgl_order: int
    rows: list[ExponentRow]
    k3_witnesses: dict[str, list] = field(default_factory=dict)

    @property
    def n_valid(self) -> int:
        return len(self.rows)

    @property
    def a_inside(self) -> int:
        return sum(r.a_in_psl for r in self.rows)

    @property
    def small_psl_stab(self) -> int:
        """Rows where the PSL stabilizer of the 4-set has order at most 2."""
        return sum(r.psl_stab <= 2 for r in self.rows)

    def consistent(self) -> bool:
        """Per-row facts that must hold for every admissible x."""
        return all(
            r.pgl_stab == 4
            and r.a_cycles_ok
            and r.det_a_square == r.a_in_psl
            and r.pgl_stab_brute in (None, r.pgl_stab)
            and r.psl_stab_brute in (None, r.psl_stab)
            for r in self.rows
        )

    def ok(self) -> bool:
        # one 4-set whose PSL orbit beats C(q+1, 3) already rules out a witness at k=3
        if self.rows:
            return self.consistent() and any(r.orbit_exceeds for r in self.rows)
        return all(self.k3_witnesses.values()) if self.k3_witnesses else True

    def lines(self) -> list[str]:
        fmt = lambda c: "inf" if c == INF else str(c)
        out = [
            f"projline q={self.q} |PSL|={self.psl_order} |PGL|={self.pgl_order}",
            f"valid_exponents {self.n_valid}",
        ]
        for r in self.rows:
            cyc = "".join("(" + ",".join(fmt(c) for c in cy) + ")" for cy in r.a_cycles)
            out.append(
                f"x={r.x} pgl_stab={r.pgl_stab} psl_stab={r.psl_stab}"
                f" detA={r.det_a} detA_square={str(r.det_a_square).lower()}"
                f" A_in_PSL={str(r.a_in_psl).lower()} A_on_sigma={cyc}"
                f" psl_orbit={r.psl_orbit} omega3={r.omega3}"
                f" exceeds={str(r.orbit_exceeds).lower()}"
            )
        if self.rows:
            out.append(f"A_membership inside={self.a_inside} outside={self.n_valid - self.a_inside}")
            out.append(f"psl_stab_at_most_2 holds={self.small_psl_stab} fails={self.n_valid - self.small_psl_stab}")
            out.append(f"orbit_exceeds holds={sum(r.orbit_exceeds for r in self.rows)}")
        for name, wit in self.k3_witnesses.items():
            out.append(f"k3_witnesses group={name} count={len(wit)}")
        out.append(f"verdict {'ok' if self.ok() else 'fail'}")
        return out


def theorem_check(q: int, brute_bound: int = 10**5) -> TheoremReport:
    """Mechanical check of the stabilizer argument excluding L2(q), q != 7.

    For every admissible fourth point x the report records the orders of the
    setwise stabilizers of {0, 1, inf, x} in PGL and PSL (via orbit lengths,
    and by brute force when the group order is at most ``brute_bound``), the
    behaviour of the matrix A, and the orbit-length comparison with C(q+1, 3).
    """
    p, _ = prime_power(q)
    if p == 2 or q < 7:
        raise ValueError(f"need an odd prime power q >= 7, got {q}")
    F = field_of_order(q)
    psl, pgl = psl_pgl_groups(q, F)
    psl_chain, pgl_chain = build_chain(psl), build_chain(pgl)
    omega3 = comb(q + 1, 3)
    rows = []
    for x in valid_exponents(F):
        sig = sigma_subset(x, q)
        pgl_orb = subset_orbit(pgl, pgl_chain, sig)
        psl_orb = subset_orbit(psl, psl_chain, sig)
        A = matrix_A(F, x)
        a_perm = moebius_perm(A, F)
        det_a = A.det(F)
        brute = lambda ch: (
            len(setwise_stabilizer_elements(ch, sig, brute_bound)) if ch.order() <= brute_bound else None
        )
        rows.append(
            ExponentRow(
                x=x,
                pgl_stab=setwise_stab_order(pgl_chain, pgl_orb),
                psl_stab=setwise_stab_order(psl_chain, psl_orb),
                pgl_stab_brute=brute(pgl_chain),
                psl_stab_brute=brute(psl_chain),
                det_a=det_a,
                det_a_square=F.is_square(det_a),
                a_in_psl=psl_chain.contains(a_perm),
                a_cycles=restricted_cycles(a_perm, [0, 1, INF, x]),
                psl_orbit=psl_orb.length,
                omega3=omega3,
            )
        )
    report = TheoremReport(q, psl_chain.order(), pgl_chain.order(), rows)
    if not rows:
        from .swcheck import sw_scan

        for g, ch in ((psl, psl_chain), (pgl, pgl_chain)):
            report.k3_witnesses[g.name] = sw_scan(g, ch, range(3, 4))
    return report
