"""Signed sumsets, Cayley-graph balls and diameters.

Two independent routes compute the same set. ``signed_span`` evaluates every
coefficient vector in the l1-ball of radius ``s``. ``bfs_ball`` walks the
Cayley graph outward from the identity. The test suite holds them equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb

import numpy as np

from .combinatorics import delannoy
from .groups import Element, GeneratorSet, GroupSpec

MAX_SIGNED_M = 4
INFINITE = None


@lru_cache(maxsize=None)
def signed_coefficients(m: int, s: int) -> np.ndarray:
    """All integer vectors of length ``m`` with l1-norm at most ``s``.

    Rows are sorted by norm, then lexicographically, which is the certificate
    tie-break order.
    """
    if not 1 <= m <= MAX_SIGNED_M:
        raise ValueError(f"signed enumeration supports 1 <= m <= {MAX_SIGNED_M}, got {m}")
    rows = [v for v in product(range(-s, s + 1), repeat=m) if sum(map(abs, v)) <= s]
    rows.sort(key=lambda v: (sum(map(abs, v)), v))
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), m)
    arr.flags.writeable = False
    return arr


@lru_cache(maxsize=None)
def directed_coefficients(m: int, s: int) -> np.ndarray:
    """Nonnegative integer vectors of length ``m`` with sum at most ``s``."""
    rows = [v for v in product(range(s + 1), repeat=m) if sum(v) <= s]
    rows.sort(key=lambda v: (sum(v), v))
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), m)
    arr.flags.writeable = False
    return arr


def _gen_arrays(A: GeneratorSet) -> tuple[np.ndarray, np.ndarray]:
    return (np.array([e.x for e in A], dtype=np.int64),
            np.array([e.y for e in A], dtype=np.int64))


def combination_indices(G: GroupSpec, A: GeneratorSet, coeffs: np.ndarray) -> np.ndarray:
    """Element index of ``sum coeffs[r, i] * A[i]`` for every row ``r``."""
    gx, gy = _gen_arrays(A)
    return (coeffs @ gx) % G.c * G.n + (coeffs @ gy) % G.n


@dataclass(frozen=True)
class SpanResult:
    group: GroupSpec
    generators: GeneratorSet
    s: int
    covered: np.ndarray = field(repr=False)
    cover_count: int

    def covers_group(self) -> bool:
        return self.cover_count == self.group.order()

    def elements(self) -> list[Element]:
        return [self.group.element_from_index(int(i)) for i in np.flatnonzero(self.covered)]


def _result(G: GroupSpec, A: GeneratorSet, s: int, covered: np.ndarray) -> SpanResult:
    covered.flags.writeable = False
    return SpanResult(G, A, s, covered, int(covered.sum()))


def _check_generators(G: GroupSpec, A: GeneratorSet) -> None:
    if not A:
        raise ValueError("generator set must be nonempty")
    for e in A:
        if not G.contains(e):
            raise ValueError(f"{e} is not an element of {G}")


def signed_span(G: GroupSpec, A: GeneratorSet, s: int) -> SpanResult:
    """The s-span of ``A``: all signed sums of at most ``s`` generators."""
    _check_generators(G, A)
    covered = np.zeros(G.order(), dtype=bool)
    covered[combination_indices(G, A, signed_coefficients(len(A), s))] = True
    return _result(G, A, s, covered)


def directed_span(G: GroupSpec, A: GeneratorSet, s: int) -> SpanResult:
    """All sums of at most ``s`` generators, repetition allowed, no negation."""
    _check_generators(G, A)
    covered = np.zeros(G.order(), dtype=bool)
    covered[combination_indices(G, A, directed_coefficients(len(A), s))] = True
    return _result(G, A, s, covered)


def translation_table(G: GroupSpec, a: Element) -> np.ndarray:
    """``table[i]`` is the index of ``element(i) + a``."""
    idx = np.arange(G.order(), dtype=np.int64)
    x, y = np.divmod(idx, G.n)
    return (x + a.x) % G.c * G.n + (y + a.y) % G.n


def _steps(G: GroupSpec, A: GeneratorSet, directed: bool) -> list[np.ndarray]:
    steps = []
    for a in A:
        steps.append(translation_table(G, a))
        if not directed:
            steps.append(translation_table(G, Element(-a.x % G.c, -a.y % G.n)))
    return steps


def bfs_distances(G: GroupSpec, A: GeneratorSet, directed: bool = False,
                  radius: int | None = None) -> np.ndarray:
    """Graph distance from the identity to every vertex; ``-1`` if unreached.

    ``radius`` stops the search after that many layers.
    """
    _check_generators(G, A)
    steps = _steps(G, A, directed)
    dist = np.full(G.order(), -1, dtype=np.int64)
    dist[0] = 0
    frontier = np.array([0], dtype=np.int64)
    layer = 0
    while frontier.size and (radius is None or layer < radius):
        layer += 1
        nxt = np.unique(np.concatenate([t[frontier] for t in steps]))
        nxt = nxt[dist[nxt] < 0]
        dist[nxt] = layer
        frontier = nxt
    return dist


def bfs_ball(G: GroupSpec, A: GeneratorSet, s: int) -> SpanResult:
    """Vertices within distance ``s`` of the identity in the undirected Cayley graph."""
    dist = bfs_distances(G, A, radius=s)
    return _result(G, A, s, dist >= 0)


def directed_bfs_ball(G: GroupSpec, A: GeneratorSet, s: int) -> SpanResult:
    dist = bfs_distances(G, A, directed=True, radius=s)
    return _result(G, A, s, dist >= 0)


@dataclass(frozen=True)
class DiameterResult:
    value: int | None  # None means infinite: A does not generate G
    witness_element: Element | None

    @property
    def infinite(self) -> bool:
        return self.value is None


def _eccentricity(G: GroupSpec, dist: np.ndarray) -> DiameterResult:
    if (dist < 0).any():
        return DiameterResult(INFINITE, None)
    value = int(dist.max())
    # flat index order is lexicographic on (x, y)
    witness = G.element_from_index(int(np.argmax(dist == value)))
    return DiameterResult(value, witness)


def undirected_diameter(G: GroupSpec, A: GeneratorSet) -> DiameterResult:
    """Diameter of the undirected Cayley graph, via the eccentricity of 0."""
    return _eccentricity(G, bfs_distances(G, A))


def directed_covering_radius(G: GroupSpec, A: GeneratorSet) -> DiameterResult:
    """Least ``s`` for which ``A`` is an s-basis of ``G``."""
    return _eccentricity(G, bfs_distances(G, A, directed=True))


def all_pairs_diameter(G: GroupSpec, A: GeneratorSet) -> int | None:
    """Brute-force diameter over every source vertex. Quadratic; for tests."""
    steps = _steps(G, A, directed=False)
    best = 0
    for src in range(G.order()):
        dist = np.full(G.order(), -1, dtype=np.int64)
        dist[src] = 0
        frontier = np.array([src])
        layer = 0
        while frontier.size:
            layer += 1
            nxt = np.unique(np.concatenate([t[frontier] for t in steps]))
            nxt = nxt[dist[nxt] < 0]
            dist[nxt] = layer
            frontier = nxt
        if (dist < 0).any():
            return None
        best = max(best, int(dist.max()))
    return best


def is_perfect_s_spanning(G: GroupSpec, A: GeneratorSet, s: int) -> bool:
    """Every element is a signed sum of at most ``s`` generators in exactly one way."""
    if G.order() != delannoy(len(A), s):
        return False
    idx = combination_indices(G, A, signed_coefficients(len(A), s))
    return bool((np.bincount(idx, minlength=G.order()) == 1).all())


def is_perfect_s_basis(G: GroupSpec, A: GeneratorSet, s: int) -> bool:
    """Every element is a sum of at most ``s`` generators in exactly one way."""
    if G.order() != comb(len(A) + s, s):
        return False
    idx = combination_indices(G, A, directed_coefficients(len(A), s))
    return bool((np.bincount(idx, minlength=G.order()) == 1).all())


def batch_covers(G: GroupSpec, gx: np.ndarray, gy: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Coverage test for many generator tuples at once.

    ``gx`` and ``gy`` have shape ``(B, m)``; returns a length-``B`` boolean
    array telling which tuples reach every element with the given coefficients.
    """
    N = G.order()
    B = gx.shape[0]
    if B == 0:
        return np.zeros(0, dtype=bool)
    idx = (gx @ coeffs.T) % G.c * G.n + (gy @ coeffs.T) % G.n
    hit = np.zeros((B, N), dtype=bool)
    hit[np.arange(B)[:, None], idx] = True
    return hit.all(axis=1)
