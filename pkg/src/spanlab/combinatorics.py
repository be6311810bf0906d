"""Exact counting functions and extremal-order formulas.

Everything here is integer arithmetic; floors are taken with ``//``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb


def delannoy(m: int, s: int) -> int:
    """Number of integer vectors of length ``m`` with l1-norm at most ``s``."""
    if m < 0 or s < 0:
        raise ValueError("delannoy is defined for nonnegative arguments")
    return sum(comb(m, i) * comb(s, i) * 2**i for i in range(min(m, s) + 1))


def directed_ball_size(m: int, s: int) -> int:
    """Number of multisets of size at most ``s`` drawn from ``m`` symbols."""
    return comb(m + s, s)


def lambda_count(s: int, h: int) -> int:
    """Points ``(l1, l2)`` with ``|l1| + |l2| <= s`` on the line ``l1 + l2 = h``."""
    if abs(h) > s:
        return 0
    return s + 1 if (s - h) % 2 == 0 else s


def index_set_size(s: int) -> int:
    return 2 * s * s + 2 * s + 1


def parity_class_sizes(s: int) -> tuple[int, int]:
    """(pairs whose coordinate sum has the parity of ``s``, pairs with the other parity)."""
    return (s + 1) ** 2, s * s


def residue_count(s: int, c: int, i: int) -> int:
    """Sum of ``lambda_count(s, h)`` over ``|h| <= s`` with ``h = i (mod c)``."""
    if not 0 <= i < c:
        raise ValueError(f"residue {i} not in [0, {c})")
    return sum(lambda_count(s, h) for h in range(-s, s + 1) if (h - i) % c == 0)


class BoundCase(str, Enum):
    EVEN_C = "even_c"
    EVEN_C_STRICT = "even_c_strict"
    ODD_C_DIVIDES_S = "odd_c_divides_s"
    ODD_C_HALF_REMAINDER = "odd_c_half_remainder"
    C3_REMAINDER_2 = "c3_remainder_2"
    STRICT_GENERIC = "strict_generic"


@dataclass(frozen=True)
class BoundReport:
    bound: int
    case_label: BoundCase
    equality_condition: str | None = None


def sregular_upper_bound(c: int, s: int) -> BoundReport:
    """Largest possible order of an s-regular group ``Z_c x Z_{ck}``.

    Strict inequalities ``|G| < 2s^2`` are reported as the inclusive bound
    ``2s^2 - 1``.
    """
    if c < 2 or s < 1:
        raise ValueError("need c >= 2 and s >= 1")
    r = s % c
    sq = 2 * s * s
    if c % 2 == 0:
        if r == 0:
            return BoundReport(sq, BoundCase.EVEN_C, f"s = 0 mod {c}")
        return BoundReport(sq - 1, BoundCase.EVEN_C_STRICT)
    if r == 0:
        return BoundReport(sq + s, BoundCase.ODD_C_DIVIDES_S)
    if 2 * r == c - 1:
        return BoundReport(sq + 2 * s - (c * c - 1) // 2, BoundCase.ODD_C_HALF_REMAINDER)
    if c == 3 and r == 2:
        return BoundReport(sq + 1, BoundCase.C3_REMAINDER_2)
    return BoundReport(sq - 1, BoundCase.STRICT_GENERIC)


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError(f"{n} has no prime factor")
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and smallest_prime_factor(n) == n


def prime_factors(n: int) -> list[int]:
    out = []
    while n > 1:
        p = smallest_prime_factor(n)
        out.append(p)
        while n % p == 0:
            n //= p
    return out


class FormulaKind(str, Enum):
    DIRECTED_CYCLIC = "directed_cyclic"
    DIRECTED_ABELIAN = "directed_abelian"
    UNDIRECTED_CYCLIC = "undirected_cyclic"
    UNDIRECTED_Z2 = "undirected_z2"
    CONJECTURED_NONCYCLIC = "conjectured_noncyclic"
    SREGULAR_MAX = "sregular_max"


def extremal_formula(kind: FormulaKind | str, s: int) -> int:
    """Closed-form extremal order for 2-element generating sets of diameter ``s``."""
    kind = FormulaKind(kind)
    if s < 1:
        raise ValueError("s must be positive")
    if kind is FormulaKind.DIRECTED_CYCLIC:
        return (s * s + 4 * s + 3) // 3
    if kind is FormulaKind.DIRECTED_ABELIAN:
        return (s * s + 4 * s + 4) // 3
    if kind is FormulaKind.UNDIRECTED_CYCLIC:
        return 2 * s * s + 2 * s + 1
    if kind is FormulaKind.UNDIRECTED_Z2:
        return 2 * s * s if s % 2 == 0 else 2 * s * s - 2
    if kind is FormulaKind.CONJECTURED_NONCYCLIC:
        if s == 2:
            return 9  # Z_3 x Z_3; the general statement starts at s = 3
        if s < 2:
            raise ValueError("no noncyclic prediction for s = 1")
        p = smallest_prime_factor(2 * s + 1)
        if p == 2 * s + 1:
            return 2 * s * s
        return 2 * s * s + 2 * s - (p * p - 1) // 2
    # SREGULAR_MAX
    return 2 * s * s + 2 * s - 4
