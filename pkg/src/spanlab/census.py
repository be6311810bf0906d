"""Exhaustive searches over groups and generating pairs.

Searches run in a fixed canonical order (groups by order then ``c``; pairs by
element index) and report the first witness, so results do not depend on the
number of worker threads.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import comb, gcd
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from .certificates import make_certificate
from .combinatorics import FormulaKind, delannoy, extremal_formula, is_prime
from .groups import (GeneratorSet, GroupSpec, enumerate_rank2_groups, groups_of_order,
                     has_rank3_group)
from .span import batch_covers, directed_coefficients, signed_coefficients

# elements touched per vectorized batch (rows x group order)
BATCH_CELLS = 1 << 21
DEFAULT_CAP = 200


class CapExceeded(ValueError):
    pass


class RankError(ValueError):
    pass


class Status(str, Enum):
    CONSISTENT = "CONSISTENT"
    INCONSISTENT = "INCONSISTENT"


def _neg_index(G: GroupSpec, idx: np.ndarray) -> np.ndarray:
    x, y = np.divmod(idx, G.n)
    return (-x) % G.c * G.n + (-y) % G.n


def _generating(G: GroupSpec, x1, y1, x2, y2) -> np.ndarray:
    """Vectorized test that two elements generate ``Z_c x Z_n``.

    The generated subgroup has index equal to the gcd of the 2x2 minors of the
    matrix with columns ``a1, a2, (c, 0), (0, n)``.
    """
    c, n = G.c, G.n
    d = np.gcd(x1 * y2 - x2 * y1, c * n)
    for term in (c * y1, c * y2, n * x1, n * x2):
        d = np.gcd(d, term)
    return d == 1


def candidate_pairs(G: GroupSpec) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs ``i < j`` that generate ``G``, one per negation class, in canonical order."""
    N = G.order()
    i, j = np.triu_indices(N, k=1)
    x1, y1 = np.divmod(i, G.n)
    x2, y2 = np.divmod(j, G.n)
    keep = _generating(G, x1, y1, x2, y2)
    ni, nj = _neg_index(G, i), _neg_index(G, j)
    lo, hi = np.minimum(ni, nj), np.maximum(ni, nj)
    keep &= (lo > i) | ((lo == i) & (hi >= j))
    return i[keep], j[keep]


def regular_candidates(G: GroupSpec) -> tuple[np.ndarray, np.ndarray]:
    """``u < v`` in ``Z_n`` with ``{(1,u),(1,v)}`` generating, one per ``(u,v) ~ (-u,-v)`` class."""
    u, v = np.triu_indices(G.n, k=1)
    ones = np.ones_like(u)
    keep = _generating(G, ones, u, ones, v)
    nu, nv = (-u) % G.n, (-v) % G.n
    lo, hi = np.minimum(nu, nv), np.maximum(nu, nv)
    keep &= (lo > u) | ((lo == u) & (hi >= v))
    return u[keep], v[keep]


def _chunks(total: int, size: int) -> list[tuple[int, int]]:
    return [(a, min(a + size, total)) for a in range(0, total, size)]


def _first_hit(G: GroupSpec, gx: np.ndarray, gy: np.ndarray, coeffs: np.ndarray,
               threads: int = 1) -> int | None:
    """Row of the first generator tuple covering ``G``, scanning contiguous chunks in order."""
    size = max(1, BATCH_CELLS // max(G.order(), coeffs.shape[0]))
    chunks = _chunks(gx.shape[0], size)

    def run(bounds: tuple[int, int]) -> int | None:
        a, b = bounds
        ok = np.flatnonzero(batch_covers(G, gx[a:b], gy[a:b], coeffs))
        return a + int(ok[0]) if ok.size else None

    if threads <= 1 or len(chunks) <= 1:
        for bounds in chunks:
            hit = run(bounds)
            if hit is not None:
                return hit
        return None
    with ThreadPoolExecutor(threads) as pool:
        # map yields in submission order, which keeps the earliest witness
        for hit in pool.map(run, chunks):
            if hit is not None:
                pool.shutdown(wait=False, cancel_futures=True)
                return hit
    return None


def _pair_search(G: GroupSpec, coeffs: np.ndarray, threads: int) -> GeneratorSet | None:
    if G.order() < 2:
        raise ValueError("group must have at least two elements")
    i, j = candidate_pairs(G)
    x1, y1 = np.divmod(i, G.n)
    x2, y2 = np.divmod(j, G.n)
    gx, gy = np.stack([x1, x2], axis=1), np.stack([y1, y2], axis=1)
    hit = _first_hit(G, gx, gy, coeffs, threads)
    if hit is None:
        return None
    return GeneratorSet(G, [G.element_from_index(int(i[hit])), G.element_from_index(int(j[hit]))])


def has_spanning_pair(G: GroupSpec, s: int, threads: int = 1) -> tuple[bool, GeneratorSet | None]:
    """Search for a 2-subset whose s-span is all of ``G``."""
    witness = _pair_search(G, signed_coefficients(2, s), threads)
    return witness is not None, witness


def has_basis_pair(G: GroupSpec, s: int, threads: int = 1) -> tuple[bool, GeneratorSet | None]:
    """Search for a 2-subset that is an s-basis of ``G``."""
    witness = _pair_search(G, directed_coefficients(2, s), threads)
    return witness is not None, witness


def is_s_regular(G: GroupSpec, s: int) -> tuple[bool, GeneratorSet | None]:
    """Search for an s-spanning set of the form ``{(1,u), (1,v)}``."""
    if G.rank() != 2:
        raise RankError(f"{G} is not of rank 2")
    u, v = regular_candidates(G)
    ones = np.ones((u.size, 2), dtype=np.int64)
    hit = _first_hit(G, ones, np.stack([u, v], axis=1), signed_coefficients(2, s))
    if hit is None:
        return False, None
    return True, GeneratorSet(G, [G.element(1, int(u[hit])), G.element(1, int(v[hit]))])


@dataclass(frozen=True)
class CensusRecord:
    group: GroupSpec
    s: int
    has_spanning_pair: bool
    witness: GeneratorSet | None
    is_regular: bool | None = None
    regular_witness: GeneratorSet | None = None

    FIELDS = ("group", "c", "n", "order", "s", "has_spanning_pair", "witness",
              "is_regular", "regular_witness")

    def row(self) -> dict:
        def gens(A: GeneratorSet | None) -> str:
            return "" if A is None else ";".join(f"{e.x},{e.y}" for e in A)

        return {
            "group": str(self.group), "c": self.group.c, "n": self.group.n,
            "order": self.group.order(), "s": self.s,
            "has_spanning_pair": self.has_spanning_pair, "witness": gens(self.witness),
            "is_regular": "" if self.is_regular is None else self.is_regular,
            "regular_witness": gens(self.regular_witness),
        }

    def json_obj(self) -> dict:
        return {
            "group": str(self.group), "order": self.group.order(), "s": self.s,
            "has_spanning_pair": self.has_spanning_pair,
            "witness": None if self.witness is None else self.witness.as_lists(),
            "is_regular": self.is_regular,
            "regular_witness": None if self.regular_witness is None
            else self.regular_witness.as_lists(),
        }


def census_record(G: GroupSpec, s: int, regularity: bool = True) -> CensusRecord:
    found, witness = has_spanning_pair(G, s)
    if not found:
        return CensusRecord(G, s, False, None, False if regularity else None)
    if not regularity:
        return CensusRecord(G, s, True, witness)
    regular, rw = is_s_regular(G, s)
    return CensusRecord(G, s, True, witness, regular, rw)


def _ordered_map(fn: Callable, items: list, threads: int) -> list:
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(fn, items))


def rank2_census(s: int, threads: int = 1, max_order: int | None = None) -> list[CensusRecord]:
    """One record per rank-2 group of order at most ``a(2, s)``."""
    limit = delannoy(2, s) if max_order is None else min(max_order, delannoy(2, s))
    groups = enumerate_rank2_groups(limit) if limit >= 4 else []
    return _ordered_map(lambda G: census_record(G, s), groups, threads)


def format_csv(records: Iterable[CensusRecord]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CensusRecord.FIELDS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(rec.row())
    return buf.getvalue()


def format_jsonl(records: Iterable[CensusRecord]) -> str:
    return "".join(json.dumps(rec.json_obj(), separators=(",", ":")) + "\n" for rec in records)


def emit_certificates(records: Iterable[CensusRecord], directory: str | Path) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for rec in records:
        if rec.witness is None:
            continue
        path = out / f"{rec.group.c}x{rec.group.n}_s{rec.s}.json"
        make_certificate(rec.group, rec.witness, rec.s).write(path)
        paths.append(path)
    return paths


class ExtremalKind(str, Enum):
    CYCLIC = "cyclic"
    NONCYCLIC = "noncyclic"
    Z2 = "z2"
    DIRECTED_CYCLIC = "directed_cyclic"
    DIRECTED_ABELIAN = "directed_abelian"


_FORMULA_FOR = {
    ExtremalKind.CYCLIC: FormulaKind.UNDIRECTED_CYCLIC,
    ExtremalKind.NONCYCLIC: FormulaKind.CONJECTURED_NONCYCLIC,
    ExtremalKind.Z2: FormulaKind.UNDIRECTED_Z2,
    ExtremalKind.DIRECTED_CYCLIC: FormulaKind.DIRECTED_CYCLIC,
    ExtremalKind.DIRECTED_ABELIAN: FormulaKind.DIRECTED_ABELIAN,
}


@dataclass(frozen=True)
class ExtremalReport:
    s: int
    kind: ExtremalKind
    max_order: int
    attaining_groups: tuple[GroupSpec, ...]
    witnesses: tuple[GeneratorSet, ...]
    formula_value: int | None
    agrees: bool | None

    @property
    def status(self) -> Status | None:
        if self.agrees is None:
            return None
        return Status.CONSISTENT if self.agrees else Status.INCONSISTENT

    def json_obj(self) -> dict:
        return {
            "s": self.s, "kind": self.kind.value, "max_order": self.max_order,
            "attaining_groups": [str(G) for G in self.attaining_groups],
            "witnesses": [A.as_lists() for A in self.witnesses],
            "formula_value": self.formula_value, "agrees": self.agrees,
        }


def _family(kind: ExtremalKind, order: int) -> list[GroupSpec]:
    if kind in (ExtremalKind.CYCLIC, ExtremalKind.DIRECTED_CYCLIC):
        return [GroupSpec.cyclic(order)]
    if kind is ExtremalKind.NONCYCLIC:
        return [G for G in groups_of_order(order) if G.rank() == 2]
    if kind is ExtremalKind.Z2:
        return [GroupSpec(2, order // 2)] if order % 4 == 0 else []
    return groups_of_order(order)


def extremal_order(kind: ExtremalKind | str, s: int, threads: int = 1) -> ExtremalReport:
    """Largest order in the family admitting a 2-element s-spanning set (or s-basis)."""
    kind = ExtremalKind(kind)
    directed = kind in (ExtremalKind.DIRECTED_CYCLIC, ExtremalKind.DIRECTED_ABELIAN)
    top = comb(2 + s, s) if directed else delannoy(2, s)
    search = has_basis_pair if directed else has_spanning_pair
    try:
        formula = extremal_formula(_FORMULA_FOR[kind], s)
    except ValueError:
        formula = None
    for order in range(top, 1, -1):
        found = [(G, w) for G in _family(kind, order)
                 for ok, w in [search(G, s, threads)] if ok]
        if found:
            agrees = None if formula is None else order == formula
            return ExtremalReport(s, kind, order, tuple(G for G, _ in found),
                                  tuple(w for _, w in found), formula, agrees)
    agrees = None if formula is None else formula == 0
    return ExtremalReport(s, kind, 0, (), (), formula, agrees)


def sregular_groups(s: int, max_order: int | None = None) -> list[tuple[GroupSpec, GeneratorSet]]:
    """All s-regular rank-2 groups of order at most ``a(2, s)``, with a witness each."""
    limit = delannoy(2, s) if max_order is None else max_order
    out = []
    for G in enumerate_rank2_groups(limit) if limit >= 4 else []:
        ok, w = is_s_regular(G, s)
        if ok:
            out.append((G, w))
    return out


def _canonical_rows(G: GroupSpec, subsets: np.ndarray) -> np.ndarray:
    """Mask of sorted index rows that are lexicographically no larger than their negation."""
    neg = np.sort(_neg_index(G, subsets), axis=1)
    diff = subsets != neg
    first = np.argmax(diff, axis=1)
    rows = np.arange(subsets.shape[0])
    return ~diff.any(axis=1) | (subsets[rows, first] < neg[rows, first])


def _subset_search(G: GroupSpec, m: int, coeffs: np.ndarray) -> list[GeneratorSet]:
    """All m-subsets (one per negation class) whose combinations hit every element once."""
    subsets = np.array(list(combinations(range(G.order()), m)), dtype=np.int64).reshape(-1, m)
    subsets = subsets[_canonical_rows(G, subsets)]
    gx, gy = np.divmod(subsets, G.n)
    # the coefficient count equals |G|, so full coverage means each element is hit once
    assert coeffs.shape[0] == G.order()
    found = []
    size = max(1, BATCH_CELLS // G.order())
    for a, b in _chunks(subsets.shape[0], size):
        ok = np.flatnonzero(batch_covers(G, gx[a:b], gy[a:b], coeffs))
        for r in ok:
            found.append(GeneratorSet(G, [G.element_from_index(int(v)) for v in subsets[a + r]]))
    return found


def _target_groups(order: int, m: int) -> list[GroupSpec]:
    if m >= 3 and has_rank3_group(order):
        raise NotImplementedError(
            f"order {order} admits groups of rank >= 3, which this search does not enumerate")
    return groups_of_order(order)


def perfect_census(m: int, s: int, cap: int = DEFAULT_CAP) -> list[tuple[GroupSpec, GeneratorSet]]:
    """Every perfect s-spanning m-set, up to negation, over groups of order ``a(m, s)``."""
    if not 1 <= m <= 3:
        raise ValueError("m must be in [1, 3]")
    order = delannoy(m, s)
    if order > cap:
        raise CapExceeded(f"a({m},{s}) = {order} exceeds cap {cap}")
    coeffs = signed_coefficients(m, s)
    return [(G, A) for G in _target_groups(order, m) for A in _subset_search(G, m, coeffs)]


def perfect_basis_census(m: int, s: int,
                         cap: int = DEFAULT_CAP) -> list[tuple[GroupSpec, GeneratorSet]]:
    """Every perfect s-basis of size ``m``, up to negation, over groups of order ``C(m+s, s)``."""
    if not 1 <= m <= 3:
        raise ValueError("m must be in [1, 3]")
    order = comb(m + s, s)
    if order > cap:
        raise CapExceeded(f"C({m}+{s},{s}) = {order} exceeds cap {cap}")
    coeffs = directed_coefficients(m, s)
    return [(G, A) for G in _target_groups(order, m) for A in _subset_search(G, m, coeffs)]


def negation_class(G: GroupSpec, A: GeneratorSet) -> GeneratorSet:
    """Canonical representative of ``{A, -A}``."""
    neg = GeneratorSet(G, [G.element(-e.x, -e.y) for e in A])
    return min(A, neg, key=lambda S: tuple(G.index(e) for e in S))


def conjectured_perfect_spanning(m: int, s: int) -> set[tuple[GroupSpec, GeneratorSet]]:
    """The three predicted families of perfect spanning sets, reduced modulo negation."""
    order = delannoy(m, s)
    out = set()
    for G in groups_of_order(order):
        elements = list(G.elements())
        if m == 1 and G.is_cyclic():
            for a in range(1, order):
                if gcd(a, order) == 1:
                    out.add((G, negation_class(G, GeneratorSet.cyclic(G, [a]))))
        if s == 1:
            # {0}, A and -A partition G
            for A in combinations(elements[1:], m):
                negs = {G.element(-e.x, -e.y) for e in A}
                if not negs & set(A) and len(negs | set(A)) == order - 1:
                    out.add((G, negation_class(G, GeneratorSet(G, A))))
        if m == 2 and G.is_cyclic():
            for d in range(1, order):
                if gcd(d, order) == 1:
                    A = GeneratorSet.cyclic(G, [d * s % order, d * (s + 1) % order])
                    out.add((G, negation_class(G, A)))
    return out


def characterized_perfect_bases(m: int, s: int) -> set[tuple[GroupSpec, GeneratorSet]]:
    """The two known families of perfect bases, reduced modulo negation."""
    order = comb(m + s, s)
    out = set()
    for G in groups_of_order(order):
        if s == 1 and m == order - 1:
            out.add((G, negation_class(G, GeneratorSet(G, list(G.elements())[1:]))))
        if m == 1 and G.is_cyclic():
            for a in range(1, order):
                if gcd(a, order) == 1:
                    out.add((G, negation_class(G, GeneratorSet.cyclic(G, [a]))))
    return out


def conjecture41_prediction(s: int, k: int) -> bool:
    """Predicted existence of an s-spanning pair in ``Z_2 x Z_2k``."""
    lo, hi = (s * s - s) // 2, s * s // 2
    if s % 2:
        return k <= (s * s - 1) // 2
    if k <= lo:
        return True
    if s % 4 == 0:
        return k % 2 == 0 and lo < k <= hi
    return k % 4 == 2 and lo < k <= hi


@dataclass(frozen=True)
class Conjecture41Row:
    k: int
    has_spanning_pair: bool
    predicted: bool

    @property
    def matches_conjecture(self) -> bool:
        return self.has_spanning_pair == self.predicted


def conjecture41_probe(s: int, threads: int = 1) -> list[Conjecture41Row]:
    """Ground truth for ``Z_2 x Z_2k``, ``1 <= k <= s^2/2 + 2``, next to the prediction."""
    rows = []
    for k in range(1, s * s // 2 + 3):
        found, _ = has_spanning_pair(GroupSpec(2, 2 * k), s, threads)
        rows.append(Conjecture41Row(k, found, conjecture41_prediction(s, k)))
    return rows


def conjecture41_status(rows: Iterable[Conjecture41Row]) -> Status:
    return Status.CONSISTENT if all(r.matches_conjecture for r in rows) else Status.INCONSISTENT


def odd_prime_regularity_violations(s: int) -> list[GroupSpec]:
    """Groups with odd prime ``c`` having a spanning pair but no regular one (expected empty)."""
    bad = []
    for G in enumerate_rank2_groups(delannoy(2, s)) if delannoy(2, s) >= 4 else []:
        if G.c % 2 and is_prime(G.c) and has_spanning_pair(G, s)[0] and not is_s_regular(G, s)[0]:
            bad.append(G)
    return bad

