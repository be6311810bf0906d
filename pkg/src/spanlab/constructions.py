"""Explicit two-element spanning sets and bases.

Builders only assemble the group and generators after checking their
parameter hypotheses; they never run a span computation themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .combinatorics import index_set_size, is_prime
from .groups import Element, GeneratorSet, GroupSpec


class ConstructionError(ValueError):
    pass


class RangeError(ConstructionError):
    pass


class HypothesisError(ConstructionError):
    pass


class DegenerateError(ConstructionError):
    pass


class DivisibilityError(ConstructionError):
    pass


class CongruenceError(ConstructionError):
    pass


class ConstructionName(str, Enum):
    CYCLIC = "cyclic"
    HALF = "half"
    FLOOR_CEILING = "floor-ceiling"
    PRIME_DIVISOR = "prime-divisor"
    Z2 = "z2"
    DIRECTED_NONCYCLIC = "directed-noncyclic"


@dataclass(frozen=True)
class Construction:
    name: ConstructionName
    group: GroupSpec
    generators: GeneratorSet
    s: int
    claimed_spanning: bool = True
    directed: bool = False
    degenerate: bool = False

    def describe(self) -> str:
        kind = "s-basis" if self.directed else "s-spanning set"
        return f"{self.name.value}: {self.generators} in Z_{self.group.c} x Z_{self.group.n} " \
               f"(order {self.group.order()}), claimed {kind} for s={self.s}"


def _pair(G: GroupSpec, a: tuple[int, int], b: tuple[int, int]) -> GeneratorSet:
    return GeneratorSet(G, [G.element(*a), G.element(*b)])


def cyclic_construction(s: int, n: int) -> Construction:
    """``{s, s+1}`` in ``Z_n`` for ``2 <= n <= 2s^2 + 2s + 1``."""
    if not 2 <= n <= index_set_size(s):
        raise RangeError(f"n={n} outside [2, {index_set_size(s)}] for s={s}")
    G = GroupSpec.cyclic(n)
    return Construction(ConstructionName.CYCLIC, G, _pair(G, (0, s), (0, s + 1)), s)


def half_construction(s: int) -> Construction:
    """``{(0,1), (1,1)}`` in ``Z_s x Z_2s``, of order ``2s^2``."""
    if s < 1:
        raise RangeError("s must be positive")
    G = GroupSpec.from_factors(s, 2 * s)
    if s == 1:
        # Z_1 x Z_2 collapses both generators to the element 1 of Z_2
        return Construction(ConstructionName.HALF, G, GeneratorSet(G, [Element(0, 1)]), s,
                            degenerate=True)
    return Construction(ConstructionName.HALF, G, _pair(G, (0, 1), (1, 1)), s)


def floor_ceiling_parameters(c: int, s: int) -> tuple[int, int, int]:
    """``(u, v, k)`` with ``u = floor(s/c)``, ``v = ceil(s/c)``, ``k = 2uv``."""
    u, r = divmod(s, c)
    v = u + (r > 0)
    return u, v, 2 * u * v


def floor_ceiling_construction(c: int, s: int) -> Construction:
    """``{(1,u), (1,v)}`` in ``Z_c x Z_{ck}`` when ``s mod c >= (c-1)/2``."""
    if c < 2 or s < 1:
        raise RangeError("need c >= 2 and s >= 1")
    if 2 * (s % c) < c - 1:
        raise HypothesisError(f"s mod c = {s % c} is below (c-1)/2 for c={c}")
    u, v, k = floor_ceiling_parameters(c, s)
    if u == 0:
        raise DegenerateError(f"s={s} < c={c} gives u=0")
    G = GroupSpec(c, c * k)
    return Construction(ConstructionName.FLOOR_CEILING, G, _pair(G, (1, u), (1, v)), s)


def prime_divisor_construction(s: int, p: int) -> Construction:
    """Floor/ceiling construction with ``c = p`` for a prime ``p`` dividing a composite ``2s+1``."""
    if not is_prime(p):
        raise DivisibilityError(f"{p} is not prime")
    if (2 * s + 1) % p:
        raise DivisibilityError(f"{p} does not divide 2s+1 = {2 * s + 1}")
    t = (2 * s + 1) // p
    if t < 2:
        raise DivisibilityError(f"2s+1 = {2 * s + 1} is prime")
    c = floor_ceiling_construction(p, s)
    assert c.group.k == (t * t - 1) // 2
    return Construction(ConstructionName.PRIME_DIVISOR, c.group, c.generators, s)


def z2_max_k(s: int) -> int:
    """Largest ``k`` for which ``z2_construction`` is proven to work."""
    return (s * s - 1) // 2 if s % 2 else (s * s - s) // 2


def z2_construction(s: int, k: int) -> Construction:
    """``{(1,u), (1,v)}`` in ``Z_2 x Z_2k`` with ``(u, v)`` chosen by the parity of ``s``."""
    if s < 1 or not 1 <= k <= z2_max_k(s):
        raise RangeError(f"k={k} outside [1, {z2_max_k(s)}] for s={s}")
    u, v = ((s - 1) // 2, (s + 1) // 2) if s % 2 else ((s - 2) // 2, s // 2)
    G = GroupSpec(2, 2 * k)
    return Construction(ConstructionName.Z2, G, _pair(G, (1, u), (1, v)), s)


def directed_noncyclic_basis(s: int) -> Construction:
    """The s-basis ``{(0,1), (1,3k-1)}`` of ``Z_k x Z_3k`` with ``k = (s+2)/3``."""
    if s < 1 or s % 3 != 1:
        raise CongruenceError(f"s={s} is not 1 mod 3")
    k = (s + 2) // 3
    G = GroupSpec(k, 3 * k)
    return Construction(ConstructionName.DIRECTED_NONCYCLIC, G,
                        _pair(G, (0, 1), (1, 3 * k - 1)), s, directed=True)


def build(name: ConstructionName | str, s: int, *, c: int | None = None, p: int | None = None,
          k: int | None = None, n: int | None = None) -> Construction:
    """Dispatch by construction name; used by the command line."""
    name = ConstructionName(name)

    def need(value: int | None, flag: str) -> int:
        if value is None:
            raise ConstructionError(f"{name.value} needs --{flag}")
        return value

    if name is ConstructionName.CYCLIC:
        return cyclic_construction(s, need(n, "n"))
    if name is ConstructionName.HALF:
        return half_construction(s)
    if name is ConstructionName.FLOOR_CEILING:
        return floor_ceiling_construction(need(c, "c"), s)
    if name is ConstructionName.PRIME_DIVISOR:
        return prime_divisor_construction(s, need(p, "p"))
    if name is ConstructionName.Z2:
        return z2_construction(s, need(k, "k"))
    return directed_noncyclic_basis(s)
