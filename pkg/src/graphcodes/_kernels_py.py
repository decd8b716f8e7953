"""Numpy reference implementations of the two hot kernels.

The compiled extension (_kernels.pyx) provides the same two functions with
byte-identical results; _backend picks whichever imports.

Kernel 1 scans all vertex quadruples of an edge-colored complete graph for one
whose six edge colors can be split into equal pairs (every color class among
the six has even size).

Kernel 2 builds, for all 2^C(k,2) graphs on k labeled vertices at once, the
table of which graphs admit an even decomposition, from the tables for k-1 and
k-2 vertices.  A graph is decomposable iff it can reach the empty graph by
repeatedly removing either a single vertex of even degree or a non-adjacent
vertex pair with equal degree parity (each removal is one independent layer
with an even cut; steps of size <= 2 are complete for this search).
"""

from __future__ import annotations

import numpy as np


def find_even_k4_quadruple(colors):
    """First quadruple a<b<c<d (lexicographic) whose six pairwise colors all
    occur an even number of times, or None.

    colors: symmetric (n, n) integer array; the diagonal is ignored.
    """
    colors = np.ascontiguousarray(colors, dtype=np.int32)
    n = colors.shape[0]
    tail_pairs: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for a in range(n - 3):
        for b in range(a + 1, n - 2):
            if b not in tail_pairs:
                cu, du = np.triu_indices(n - b - 1, 1)
                tail_pairs[b] = (cu + b + 1, du + b + 1)
            cs, ds = tail_pairs[b]
            six = np.stack(
                [
                    np.broadcast_to(colors[a, b], cs.shape),
                    colors[a, cs],
                    colors[a, ds],
                    colors[b, cs],
                    colors[b, ds],
                    colors[cs, ds],
                ]
            )
            six = np.sort(six, axis=0)
            # Sorted values pair up adjacently iff every value has even count.
            hit = (six[0] == six[1]) & (six[2] == six[3]) & (six[4] == six[5])
            idx = np.flatnonzero(hit)
            if idx.size:
                i = int(idx[0])  # triu_indices order = lexicographic (c, d)
                return (a, b, int(cs[i]), int(ds[i]))
    return None


def _pair_index(u: int, v: int) -> int:
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def _deletion_shifts(k: int, removed: tuple[int, ...]):
    """Old-index/new-index pairs mapping an edge mask on k vertices to the
    mask induced on the remaining vertices (relabeled in order)."""
    keep = [x for x in range(k) if x not in removed]
    moves = []
    for i in range(len(keep)):
        for j in range(i + 1, len(keep)):
            moves.append((_pair_index(keep[i], keep[j]), _pair_index(i, j)))
    return moves


def _delete_masks(masks, k: int, removed: tuple[int, ...]):
    out = np.zeros(masks.shape, dtype=np.uint32)
    for old, new in _deletion_shifts(k, removed):
        out |= ((masks >> np.uint32(old)) & np.uint32(1)) << np.uint32(new)
    return out


def decomposability_step(k: int, dec1, dec2):
    """Decomposability table for all graphs on k >= 2 vertices.

    dec1, dec2: boolean tables for k-1 and k-2 vertices (index = edge mask).
    Returns a boolean array of length 2^C(k,2).
    """
    num_edges = k * (k - 1) // 2
    size = 1 << num_edges
    masks = np.arange(size, dtype=np.uint32)
    incident = [0] * k
    for v in range(k):
        for w in range(k):
            if w != v:
                incident[v] |= 1 << _pair_index(v, w)
    parity = [
        (np.bitwise_count(masks & np.uint32(incident[v])) & 1).astype(bool)
        for v in range(k)
    ]
    dec1 = np.asarray(dec1, dtype=bool)
    dec2 = np.asarray(dec2, dtype=bool)
    result = np.zeros(size, dtype=bool)
    for v in range(k):
        result |= ~parity[v] & dec1[_delete_masks(masks, k, (v,))]
    for u in range(k):
        for w in range(u + 1, k):
            non_adjacent = (masks >> np.uint32(_pair_index(u, w))) & 1 == 0
            equal_parity = parity[u] == parity[w]
            result |= non_adjacent & equal_parity & dec2[_delete_masks(masks, k, (u, w))]
    return result
