"""Graphs on labeled vertices {0..n-1}, stored as edge-indicator bit vectors.

The edge on vertices u < v has canonical index v*(v-1)//2 + u, so a graph on n
vertices is an integer bitmask over the n*(n-1)//2 possible edges.  Indices do
not depend on n: a graph extends to a larger vertex set (adding isolated
vertices) without renumbering, and the mask is unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import isqrt

from .errors import CapacityError, FormatError

__all__ = [
    "LabeledGraph",
    "edge_index",
    "edge_endpoints",
    "num_pairs",
    "graph_sum",
    "non_isolated_vertices",
    "induced_subgraph",
    "permute_graph",
    "is_isomorphic",
    "is_isomorphic_brute",
    "is_copy_of",
    "is_bipartite",
    "enumerate_graphs",
    "distinct_placements",
    "complete_graph",
    "empty_graph",
    "path_graph",
    "cycle_graph",
    "matching_graph",
    "parse_gl1",
    "format_gl1",
    "load_gl1",
    "save_gl1",
]

ENUMERATION_LIMIT = 8  # largest vertex count for exhaustive graph/permutation scans


def num_pairs(n: int) -> int:
    """Number of vertex pairs on n vertices, i.e. the length of the edge vector."""
    return n * (n - 1) // 2


def edge_index(u: int, v: int) -> int:
    """Canonical index of the edge {u, v}; order of the arguments is ignored."""
    if u == v or u < 0 or v < 0:
        raise ValueError(f"not an edge: ({u}, {v})")
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def edge_endpoints(j: int) -> tuple[int, int]:
    """Inverse of edge_index: the pair (u, v) with u < v at index j."""
    if j < 0:
        raise ValueError(f"negative edge index: {j}")
    v = (1 + isqrt(1 + 8 * j)) // 2
    u = j - v * (v - 1) // 2
    return u, v


@dataclass(frozen=True)
class LabeledGraph:
    """Immutable graph on vertices {0..n-1} with edges as a bitmask."""

    n: int
    edges: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative vertex count: {self.n}")
        if not 0 <= self.edges < 1 << num_pairs(self.n):
            raise ValueError(f"edge mask out of range for n={self.n}")

    @classmethod
    def from_edge_list(cls, n: int, pairs) -> "LabeledGraph":
        mask = 0
        for u, v in pairs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex out of range for n={n}: ({u}, {v})")
            mask |= 1 << edge_index(u, v)
        return cls(n, mask)

    @property
    def num_edges(self) -> int:
        return self.edges.bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return self.edges >> edge_index(u, v) & 1 == 1

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges as (u, v) pairs with u < v, in ascending index order."""
        out = []
        m = self.edges
        while m:
            j = (m & -m).bit_length() - 1
            out.append(edge_endpoints(j))
            m &= m - 1
        return out

    def adjacency_masks(self) -> list[int]:
        """Per-vertex neighbor bitsets: bit w of entry v is set iff {v, w} is an edge."""
        if num_pairs(self.n) >= 4096:
            return self._adjacency_masks_packed()
        adj = [0] * self.n
        for u, v in self.edge_list():
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def _adjacency_masks_packed(self) -> list[int]:
        # Vectorized route for large hosts: unpack the edge bitmask into a
        # boolean adjacency matrix and repack each row into an integer.
        import numpy as np

        nb = num_pairs(self.n)
        raw = np.frombuffer(self.edges.to_bytes((nb + 7) // 8, "little"), dtype=np.uint8)
        idx = np.flatnonzero(np.unpackbits(raw, bitorder="little")[:nb])
        v = ((1 + np.sqrt(8.0 * idx + 1)) / 2).astype(np.int64)
        v -= v * (v - 1) // 2 > idx
        v += (v + 1) * v // 2 <= idx
        u = idx - v * (v - 1) // 2
        mat = np.zeros((self.n, self.n), dtype=bool)
        mat[u, v] = True
        mat[v, u] = True
        packed = np.packbits(mat, axis=1, bitorder="little")
        return [int.from_bytes(row.tobytes(), "little") for row in packed]

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adjacency_masks()]


def graph_sum(a: LabeledGraph, b: LabeledGraph) -> LabeledGraph:
    """GF(2) sum: the symmetric difference of the edge sets."""
    if a.n != b.n:
        raise ValueError(f"vertex counts differ: {a.n} != {b.n}")
    return LabeledGraph(a.n, a.edges ^ b.edges)


def non_isolated_vertices(g: LabeledGraph) -> list[int]:
    """Vertices with degree >= 1, ascending."""
    support = 0
    m = g.edges
    while m:
        j = (m & -m).bit_length() - 1
        u, v = edge_endpoints(j)
        support |= 1 << u | 1 << v
        m &= m - 1
    out = []
    while support:
        out.append((support & -support).bit_length() - 1)
        support &= support - 1
    return out


def induced_subgraph(g: LabeledGraph, vertices) -> LabeledGraph:
    """Subgraph induced on the given vertices, relabeled 0..k-1 in sorted order."""
    vs = sorted(vertices)
    if len(set(vs)) != len(vs):
        raise ValueError("duplicate vertices")
    if vs and not 0 <= vs[0] <= vs[-1] < g.n:
        raise ValueError("vertex out of range")
    pairs = []
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if g.has_edge(vs[i], vs[j]):
                pairs.append((i, j))
    return LabeledGraph.from_edge_list(len(vs), pairs)


def permute_graph(g: LabeledGraph, perm) -> LabeledGraph:
    """Relabel vertices: vertex i becomes perm[i]."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("not a permutation of 0..n-1")
    return LabeledGraph.from_edge_list(g.n, ((perm[u], perm[v]) for u, v in g.edge_list()))


def is_isomorphic_brute(a: LabeledGraph, b: LabeledGraph) -> bool:
    """Reference isomorphism test: try every vertex bijection (small n only)."""
    if a.n != b.n:
        return False
    if a.num_edges != b.num_edges:
        return False
    if a.n > ENUMERATION_LIMIT:
        raise CapacityError(f"brute-force isomorphism limited to n <= {ENUMERATION_LIMIT}")
    return any(permute_graph(a, p).edges == b.edges for p in permutations(range(a.n)))


def is_isomorphic(a: LabeledGraph, b: LabeledGraph) -> bool:
    """True iff some vertex bijection maps the edges of a onto the edges of b."""
    if a.n != b.n:
        return False
    if a.num_edges != b.num_edges:
        return False
    deg_a = a.degrees()
    deg_b = b.degrees()
    if sorted(deg_a) != sorted(deg_b):
        return False
    adj_a = a.adjacency_masks()
    adj_b = b.adjacency_masks()

    # Refine candidate sets by degree and by the multiset of neighbor degrees.
    def profile(deg, adj, v):
        nd = []
        m = adj[v]
        while m:
            nd.append(deg[(m & -m).bit_length() - 1])
            m &= m - 1
        return deg[v], tuple(sorted(nd))

    prof_a = [profile(deg_a, adj_a, v) for v in range(a.n)]
    prof_b = [profile(deg_b, adj_b, v) for v in range(b.n)]
    if sorted(prof_a) != sorted(prof_b):
        return False
    candidates = [
        [w for w in range(b.n) if prof_b[w] == prof_a[v]] for v in range(a.n)
    ]
    # Map the most constrained vertices first.
    order = sorted(range(a.n), key=lambda v: (len(candidates[v]), -deg_a[v]))
    image = [-1] * a.n  # image[v] = assigned vertex of b, -1 if unassigned
    used = 0

    def extend(pos: int) -> bool:
        nonlocal used
        if pos == a.n:
            return True
        v = order[pos]
        for w in candidates[v]:
            if used >> w & 1:
                continue
            ok = True
            for prev in order[:pos]:
                if (adj_a[v] >> prev & 1) != (adj_b[w] >> image[prev] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used |= 1 << w
                if extend(pos + 1):
                    return True
                image[v] = -1
                used &= ~(1 << w)
        return False

    return extend(0)


def is_copy_of(g: LabeledGraph, h: LabeledGraph) -> bool:
    """True iff the non-isolated support of g induces a graph isomorphic to h
    once padded with isolated vertices up to h.n."""
    support = non_isolated_vertices(g)
    if len(support) > h.n or h.n > g.n:
        return False
    core = induced_subgraph(g, support)
    padded = LabeledGraph(h.n, core.edges)  # indices are n-independent
    return is_isomorphic(padded, h)


def is_bipartite(g: LabeledGraph) -> bool:
    """True iff the vertex set splits into two sides with no internal edges."""
    adj = g.adjacency_masks()
    side = [-1] * g.n
    for start in range(g.n):
        if side[start] != -1:
            continue
        side[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            rem = adj[v]
            while rem:
                w = (rem & -rem).bit_length() - 1
                rem &= rem - 1
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return False
    return True


def enumerate_graphs(v: int, predicate=None):
    """Yield every graph on v labeled vertices, optionally filtered."""
    if v > ENUMERATION_LIMIT:
        raise CapacityError(f"exhaustive enumeration limited to v <= {ENUMERATION_LIMIT}")
    for mask in range(1 << num_pairs(v)):
        g = LabeledGraph(v, mask)
        if predicate is None or predicate(g):
            yield g


def distinct_placements(h: LabeledGraph) -> list[int]:
    """All distinct edge masks obtainable by relabeling h on its own vertex set."""
    if h.n > ENUMERATION_LIMIT:
        raise CapacityError(f"placement enumeration limited to n <= {ENUMERATION_LIMIT}")
    return sorted({permute_graph(h, p).edges for p in permutations(range(h.n))})


def complete_graph(n: int) -> LabeledGraph:
    return LabeledGraph(n, (1 << num_pairs(n)) - 1)


def empty_graph(n: int) -> LabeledGraph:
    return LabeledGraph(n, 0)


def path_graph(n: int) -> LabeledGraph:
    """Path 0-1-...-(n-1) with n-1 edges."""
    return LabeledGraph.from_edge_list(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> LabeledGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    pairs = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return LabeledGraph.from_edge_list(n, pairs)


def matching_graph(k: int) -> LabeledGraph:
    """k disjoint edges on 2k vertices: {0,1}, {2,3}, ..."""
    return LabeledGraph.from_edge_list(2 * k, ((2 * i, 2 * i + 1) for i in range(k)))


# ---------------------------------------------------------------------------
# GL1 text format: first line "n", then one "u v" line per edge with u < v,
# listed in ascending canonical index order.  '#' starts a comment.


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_gl1(text: str) -> LabeledGraph:
    n = None
    mask = 0
    last_index = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body:
            continue
        fields = body.split()
        if n is None:
            if len(fields) != 1:
                raise FormatError(f"expected a single vertex count, got {body!r}", lineno)
            try:
                n = int(fields[0])
            except ValueError:
                raise FormatError(f"vertex count is not an integer: {fields[0]!r}", lineno) from None
            if n < 0:
                raise FormatError(f"negative vertex count: {n}", lineno)
            continue
        if len(fields) != 2:
            raise FormatError(f"expected 'u v', got {body!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise FormatError(f"edge endpoints are not integers: {body!r}", lineno) from None
        if not 0 <= u < v < n:
            raise FormatError(f"edge ({u}, {v}) violates 0 <= u < v < {n}", lineno)
        j = edge_index(u, v)
        if j <= last_index:
            if mask >> j & 1:
                raise FormatError(f"duplicate edge ({u}, {v})", lineno)
            raise FormatError(f"edge ({u}, {v}) out of ascending index order", lineno)
        mask |= 1 << j
        last_index = j
    if n is None:
        raise FormatError("empty input: missing vertex count")
    return LabeledGraph(n, mask)


def format_gl1(g: LabeledGraph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(lines) + "\n"


def load_gl1(path) -> LabeledGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_gl1(fh.read())


def save_gl1(g: LabeledGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_gl1(g))
