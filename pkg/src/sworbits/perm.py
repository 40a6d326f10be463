"""Permutations on points 1..n and their induced action on subsets.

Points are 1-based at every public boundary.  Internally a permutation is a
tuple of 0-based images, which keeps composition a single comprehension.
Composition is left-to-right: ``p * q`` first applies ``p``, then ``q``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass


class PermutationError(ValueError):
    """Malformed cycle text or an invalid permutation."""


class DegreeMismatch(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Permutation:
    """Bijection of {1..n}; ``_img[i]`` is the 0-based image of point ``i+1``."""

    _img: tuple[int, ...]

    def __post_init__(self):
        if not self._img:
            raise PermutationError("degree must be at least 1")
        if sorted(self._img) != list(range(len(self._img))):
            raise PermutationError("images do not form a bijection")

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Permutation:
        """Build from 1-based images: ``images[i-1]`` is the image of ``i``."""
        return cls(tuple(x - 1 for x in images))

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def _raw(cls, img: tuple[int, ...]) -> Permutation:
        # trusted constructor, skips the bijection check
        obj = object.__new__(cls)
        object.__setattr__(obj, "_img", img)
        return obj

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._img)

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, ordered by it."""
        seen = [False] * len(self._img)
        out = []
        for i, x in enumerate(self._img):
            if seen[i] or x == i:
                continue
            cyc = [i + 1]
            seen[i] = True
            j = x
            while j != i:
                seen[j] = True
                cyc.append(j + 1)
                j = self._img[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        return print_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({print_cycles(self)!r}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return the permutation x -> (x^p)^q."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    qi = q._img
    return Permutation._raw(tuple(qi[x] for x in p._img))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p._img):
        inv[x] = i
    return Permutation._raw(tuple(inv))


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse a product of disjoint cycles such as ``"(4,7)(5,9)(6,1)"``.

    Whitespace between and inside cycles is ignored; ``""`` and ``"()"`` give
    the identity.  Singleton cycles are allowed.
    """
    if degree < 1:
        raise PermutationError("degree must be at least 1")
    img = list(range(degree))
    seen: set[int] = set()
    stripped = re.sub(r"\s+", "", text)
    pos = 0
    while pos < len(stripped):
        m = _CYCLE.match(stripped, pos)
        if m is None:
            raise PermutationError(f"malformed cycle text at column {pos + 1}: {text!r}")
        body = m.group(1)
        pos = m.end()
        if body == "":
            continue
        try:
            pts = [int(tok) for tok in body.split(",")]
        except ValueError:
            raise PermutationError(f"bad point in cycle ({body})") from None
        for x in pts:
            if not 1 <= x <= degree:
                raise PermutationError(f"point {x} out of range 1..{degree}")
            if x in seen:
                raise PermutationError(f"point {x} repeated")
            seen.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b - 1
    return Permutation._raw(tuple(img))


def print_cycles(p: Permutation) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


@dataclass(frozen=True, slots=True)
class KSubset:
    """A subset of {1..n} in canonical (sorted) form."""

    degree: int
    members: tuple[int, ...]

    def __post_init__(self):
        m = self.members
        if any(a >= b for a, b in zip(m, m[1:])):
            raise ValueError(f"members not strictly increasing: {m}")
        if m and not (1 <= m[0] and m[-1] <= self.degree):
            raise ValueError(f"members outside 1..{self.degree}: {m}")

    @classmethod
    def of(cls, degree: int, points: Iterable[int]) -> KSubset:
        return cls(degree, tuple(sorted(set(points))))

    @classmethod
    def from_mask(cls, degree: int, mask: int) -> KSubset:
        return cls(degree, mask_members(mask))

    @property
    def mask(self) -> int:
        return members_mask(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


def members_mask(members: Iterable[int]) -> int:
    """Bit ``i-1`` set for each point ``i``; Python ints make this width-free."""
    m = 0
    for x in members:
        m |= 1 << (x - 1)
    return m


def mask_members(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def image_of_subset(p: Permutation, s: KSubset) -> KSubset:
    if p.degree != s.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {s.degree} differ")
    img = p._img
    return KSubset(s.degree, tuple(sorted(img[x - 1] + 1 for x in s.members)))


def parse_subset(text: str, degree: int) -> KSubset:
    """Parse ``"{1,2,3}"`` (braces optional)."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    body = body.strip()
    if not body:
        return KSubset(degree, ())
    try:
        pts = [int(t) for t in body.split(",")]
    except ValueError:
        raise ValueError(f"bad subset syntax: {text!r}") from None
    if len(set(pts)) != len(pts):
        raise ValueError(f"repeated point in subset: {text!r}")
    return KSubset.of(degree, pts)
