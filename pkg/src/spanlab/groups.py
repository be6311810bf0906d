"""Finite abelian groups of rank at most 2 in invariant-factor form.

A group is stored as ``Z_c x Z_n`` with ``c | n``; cyclic groups use ``c = 1``.
Elements are reduced coordinate pairs and are addressed by the flat index
``x * n + y`` so that subsets of the group can live in plain boolean arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, order=True)
class GroupSpec:
    c: int
    n: int

    def __post_init__(self) -> None:
        if self.c < 1 or self.n < 1:
            raise ValueError(f"invariant factors must be positive, got {self.c}x{self.n}")
        if self.n % self.c:
            raise ValueError(f"{self.c} does not divide {self.n}")

    @classmethod
    def cyclic(cls, n: int) -> GroupSpec:
        return cls(1, n)

    @classmethod
    def from_factors(cls, a: int, b: int) -> GroupSpec:
        """Canonicalize ``Z_a x Z_b`` for arbitrary positive ``a``, ``b``."""
        g = gcd(a, b)
        return cls(g, a * b // g)

    @classmethod
    def parse(cls, text: str) -> GroupSpec:
        """Parse ``"3x12"``, ``"3 x 12"``, ``"1x13"`` or the cyclic shorthand ``"13"``."""
        parts = text.lower().replace(" ", "").split("x")
        try:
            if len(parts) == 1:
                return cls(1, int(parts[0]))
            if len(parts) == 2:
                return cls(int(parts[0]), int(parts[1]))
        except ValueError as exc:
            raise ValueError(f"bad group notation {text!r}: {exc}") from None
        raise ValueError(f"bad group notation {text!r}")

    def __str__(self) -> str:
        return f"{self.c}x{self.n}"

    def order(self) -> int:
        return self.c * self.n

    def rank(self) -> int:
        if self.c >= 2:
            return 2
        return 1 if self.n >= 2 else 0

    @property
    def k(self) -> int:
        """The cofactor ``n / c`` in the ``Z_c x Z_{ck}`` parametrization."""
        return self.n // self.c

    def is_cyclic(self) -> bool:
        return self.c == 1

    def element(self, x: int, y: int) -> Element:
        return Element(x % self.c, y % self.n)

    def element_from_index(self, i: int) -> Element:
        if not 0 <= i < self.order():
            raise IndexError(f"index {i} out of range for {self}")
        x, y = divmod(i, self.n)
        return Element(x, y)

    def index(self, e: Element) -> int:
        return e.x * self.n + e.y

    def contains(self, e: Element) -> bool:
        return 0 <= e.x < self.c and 0 <= e.y < self.n

    def elements(self) -> Iterator[Element]:
        for x in range(self.c):
            for y in range(self.n):
                yield Element(x, y)

    def zero(self) -> Element:
        return Element(0, 0)


@dataclass(frozen=True, order=True)
class Element:
    x: int
    y: int

    def as_list(self) -> list[int]:
        return [self.x, self.y]


def add(G: GroupSpec, a: Element, b: Element) -> Element:
    return Element((a.x + b.x) % G.c, (a.y + b.y) % G.n)


def neg(G: GroupSpec, a: Element) -> Element:
    return Element(-a.x % G.c, -a.y % G.n)


def scalar_mul(G: GroupSpec, t: int, a: Element) -> Element:
    return Element(t * a.x % G.c, t * a.y % G.n)


def linear_combination(G: GroupSpec, coeffs: Sequence[int], gens: Sequence[Element]) -> Element:
    x = sum(t * g.x for t, g in zip(coeffs, gens))
    y = sum(t * g.y for t, g in zip(coeffs, gens))
    return G.element(x, y)


def subgroup_index(G: GroupSpec, gens: Iterable[Element]) -> int:
    """Index of the subgroup generated by ``gens``.

    The subgroup corresponds to the lattice spanned by the generators together
    with ``(c, 0)`` and ``(0, n)``; its index in ``Z^2`` is the gcd of all 2x2
    minors of that generating matrix.
    """
    cols = [(g.x, g.y) for g in gens] + [(G.c, 0), (0, G.n)]
    d = 0
    for i in range(len(cols)):
        for j in range(i + 1, len(cols)):
            d = gcd(d, cols[i][0] * cols[j][1] - cols[i][1] * cols[j][0])
    return d


def generates(G: GroupSpec, gens: Iterable[Element]) -> bool:
    return subgroup_index(G, gens) == 1


class GeneratorSet(tuple):
    """Pairwise-distinct group elements kept in ascending index order."""

    def __new__(cls, G: GroupSpec, members: Iterable[Element]) -> GeneratorSet:
        members = [G.element(e.x, e.y) for e in members]
        if len(set(members)) != len(members):
            raise ValueError(f"generators must be pairwise distinct: {members}")
        members.sort(key=G.index)
        return super().__new__(cls, members)

    @classmethod
    def from_pairs(cls, G: GroupSpec, pairs: Iterable[Sequence[int]]) -> GeneratorSet:
        return cls(G, (Element(int(p[0]), int(p[1])) for p in pairs))

    @classmethod
    def cyclic(cls, G: GroupSpec, values: Iterable[int]) -> GeneratorSet:
        return cls(G, (Element(0, v) for v in values))

    def as_lists(self) -> list[list[int]]:
        return [e.as_list() for e in self]

    def __repr__(self) -> str:
        return "{" + ", ".join(f"({e.x},{e.y})" for e in self) + "}"


def enumerate_rank2_groups(max_order: int) -> list[GroupSpec]:
    """All ``Z_c x Z_n`` with ``c >= 2``, ``c | n`` and order at most ``max_order``.

    Sorted by order, then by ``c``.
    """
    out = []
    c = 2
    while c * c <= max_order:
        k = 1
        while c * c * k <= max_order:
            out.append(GroupSpec(c, c * k))
            k += 1
        c += 1
    out.sort(key=lambda G: (G.order(), G.c))
    return out


def groups_of_order(order: int) -> list[GroupSpec]:
    """Every abelian group of the given order whose rank is at most 2, sorted by ``c``."""
    return [GroupSpec(c, order // c) for c in range(1, order + 1)
            if order % (c * c) == 0]


def has_rank3_group(order: int) -> bool:
    """True when some abelian group of this order needs three or more generators."""
    m, p = order, 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e >= 3:
            return True
        p += 1
    return False
