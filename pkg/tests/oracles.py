"""Brute-force reference implementations, deliberately free of numpy and spanlab internals."""

from collections import deque
from itertools import product


def index_points(s, m=2):
    return [v for v in product(range(-s, s + 1), repeat=m) if sum(map(abs, v)) <= s]


def brute_span(c, n, gens, s):
    out = set()
    for coeffs in index_points(s, len(gens)):
        x = sum(t * g[0] for t, g in zip(coeffs, gens)) % c
        y = sum(t * g[1] for t, g in zip(coeffs, gens)) % n
        out.add((x, y))
    return out


def brute_directed_span(c, n, gens, s):
    out = set()
    for coeffs in product(range(s + 1), repeat=len(gens)):
        if sum(coeffs) <= s:
            out.add((sum(t * g[0] for t, g in zip(coeffs, gens)) % c,
                     sum(t * g[1] for t, g in zip(coeffs, gens)) % n))
    return out


def queue_distances(c, n, gens, directed=False):
    steps = list(gens) + ([] if directed else [(-g[0], -g[1]) for g in gens])
    dist = {(0, 0): 0}
    q = deque([(0, 0)])
    while q:
        x, y = q.popleft()
        for dx, dy in steps:
            nb = ((x + dx) % c, (y + dy) % n)
            if nb not in dist:
                dist[nb] = dist[(x, y)] + 1
                q.append(nb)
    return dist


def rank2_pairs_ck(max_order):
    return sorted((c * c * k, c, c * k) for c in range(2, max_order + 1)
                  for k in range(1, max_order + 1) if c * c * k <= max_order)

