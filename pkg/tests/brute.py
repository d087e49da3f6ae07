"""Brute-force filter for characteristic sequences on a finite spectrum.

Works from the raw order pairs only: every tuple of subsets is tested for
lower-closure, nesting, and the Bass clause with relaxation heights.
"""
import itertools


def heights(k, pairs):
    # longest chain ending at each node, by relaxation
    h = [0] * k
    for _ in range(k):
        for a, b in pairs:
            h[b] = max(h[b], h[a] + 1)
    return h


def lower_masks(k, pairs):
    return [s for s in range(1 << k) if all(not (s >> b & 1) or (s >> a & 1) for a, b in pairs)]


def brute_sequences(ring, n):
    sp = ring.spectrum
    k = len(sp.nodes)
    pairs = [(sp.index[a], sp.index[b]) for a, b in sp.order]
    height = heights(k, pairs)
    lower = set(lower_masks(k, pairs))
    out = []
    for levels in itertools.product(range(1 << k), repeat=n):
        if not all(s in lower for s in levels):
            continue
        if any(levels[i] & ~levels[i + 1] for i in range(n - 1)):
            continue
        bass = [sum(1 << v for v in range(k) if height[v] == i) for i in range(n)]
        if all(not (b & ~s) for b, s in zip(bass, levels)):
            out.append(levels)
    return out
