"""Edge colorings of K_n, even-chromatic copy search, and the explicit
coloring that avoids even-chromatic K4 copies.

An even-chromatic copy of a pattern h under a coloring chi is an injective
vertex map from h into the host such that every color class among the image
edges has even size.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, log2, sqrt

import numpy as np

from . import _backend
from .errors import FormatError
from .graphs import LabeledGraph, edge_endpoints, edge_index, num_pairs

__all__ = [
    "EdgeColoring",
    "Embedding",
    "K4ColoringParams",
    "find_even_chromatic_embedding",
    "admits_even_chromatic_copy",
    "embedding_is_even_chromatic",
    "build_k4_coloring",
    "coloring_from_matrix",
    "canonicalize_coloring",
    "monochromatic_coloring",
    "rainbow_coloring",
    "color_matrix",
    "parse_cl1",
    "format_cl1",
    "load_cl1",
    "save_cl1",
]


@dataclass(frozen=True)
class EdgeColoring:
    """Total color assignment to the C(n,2) edges of K_n.

    colors[j] is the color of the edge with canonical index j; the palette is
    stored surjectively: every color in [0, palette_size) occurs.
    """

    n: int
    colors: tuple[int, ...]
    palette_size: int

    def __post_init__(self):
        if len(self.colors) != num_pairs(self.n):
            raise ValueError(
                f"expected {num_pairs(self.n)} colors for n={self.n}, got {len(self.colors)}"
            )
        distinct = set(self.colors)
        if self.colors and (min(distinct) < 0 or max(distinct) >= self.palette_size):
            raise ValueError("color out of range")
        if len(distinct) != self.palette_size:
            raise ValueError(
                f"palette size {self.palette_size} but {len(distinct)} distinct colors present"
            )

    @classmethod
    def from_values(cls, n: int, values) -> "EdgeColoring":
        """Build from any color identifiers, relabeled to a canonical palette."""
        values = list(values)
        relabel: dict = {}
        colors = []
        for v in values:
            if v not in relabel:
                relabel[v] = len(relabel)
            colors.append(relabel[v])
        return cls(n, tuple(colors), len(relabel))

    def color_of(self, u: int, v: int) -> int:
        return self.colors[edge_index(u, v)]


@dataclass(frozen=True)
class Embedding:
    """Injective vertex map from a pattern graph into a host vertex range."""

    pattern: LabeledGraph
    vertex_map: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertex_map) != self.pattern.n:
            raise ValueError("map length must equal the pattern's vertex count")
        if len(set(self.vertex_map)) != len(self.vertex_map):
            raise ValueError("map must be injective")

    def image_edges(self) -> list[tuple[int, int]]:
        f = self.vertex_map
        return [(f[u], f[v]) for u, v in self.pattern.edge_list()]


def monochromatic_coloring(n: int) -> EdgeColoring:
    return EdgeColoring(n, (0,) * num_pairs(n), 1 if n >= 2 else 0)


def rainbow_coloring(n: int) -> EdgeColoring:
    return EdgeColoring(n, tuple(range(num_pairs(n))), num_pairs(n))


def canonicalize_coloring(chi: EdgeColoring) -> EdgeColoring:
    """Relabel colors to first-appearance order along ascending edge index."""
    return EdgeColoring.from_values(chi.n, chi.colors)


def color_matrix(chi: EdgeColoring) -> np.ndarray:
    """Symmetric (n, n) int32 matrix of edge colors (diagonal zero)."""
    m = np.zeros((chi.n, chi.n), dtype=np.int32)
    for j, c in enumerate(chi.colors):
        u, v = edge_endpoints(j)
        m[u, v] = m[v, u] = c
    return m


def embedding_is_even_chromatic(chi: EdgeColoring, emb: Embedding) -> bool:
    """True iff every color class among the embedding's image edges is even."""
    odd: set[int] = set()
    for u, v in emb.image_edges():
        odd ^= {chi.color_of(u, v)}
    return not odd


def find_even_chromatic_embedding(chi: EdgeColoring, h: LabeledGraph):
    """Lexicographically least even-chromatic embedding of h, or None.

    Pattern vertices are assigned in ascending order, host candidates tried in
    ascending order, so the witness is deterministic.
    """
    n, k = chi.n, h.n
    if k > n:
        raise ValueError(f"pattern has {k} vertices but host only {n}")
    if h.num_edges % 2 == 1:
        # Color-class sizes sum to e(h); an odd total forces an odd class.
        return None
    if h.num_edges == 0:
        return Embedding(h, tuple(range(k)))
    if k == 4 and h.edges == 0b111111:
        quad = _backend.find_even_k4_quadruple(color_matrix(chi))
        return None if quad is None else Embedding(h, tuple(int(x) for x in quad))
    return _embedding_backtrack(chi, h)


def _embedding_backtrack(chi: EdgeColoring, h: LabeledGraph):
    n, k = chi.n, h.n
    back_edges = [[j for j in range(i) if h.has_edge(j, i)] for i in range(k)]
    edges_after = [sum(len(back_edges[t]) for t in range(i + 1, k)) for i in range(k)]
    image = [0] * k
    used = [False] * n
    odd: set[int] = set()

    def extend(i: int):
        if i == k:
            return tuple(image) if not odd else None
        for cand in range(n):
            if used[cand]:
                continue
            touched = [chi.color_of(image[j], cand) for j in back_edges[i]]
            for c in touched:
                odd.symmetric_difference_update((c,))
            # Each odd class still needs at least one more image edge.
            if len(odd) <= edges_after[i]:
                image[i] = cand
                used[cand] = True
                found = extend(i + 1)
                if found is not None:
                    return found
                used[cand] = False
            for c in touched:
                odd.symmetric_difference_update((c,))
        return None

    found = extend(0)
    return None if found is None else Embedding(h, found)


def admits_even_chromatic_copy(chi: EdgeColoring, h: LabeledGraph) -> bool:
    return find_even_chromatic_embedding(chi, h) is not None


@dataclass(frozen=True)
class K4ColoringParams:
    """Tuple-space parameters for the explicit K4-avoiding coloring."""

    n: int
    d: int
    m: int

    def __post_init__(self):
        if self.m**self.d < self.n:
            raise ValueError("tuple space smaller than the vertex count")

    @classmethod
    def from_n(cls, n: int) -> "K4ColoringParams":
        if n < 2:
            raise ValueError("need at least 2 vertices")
        d = ceil(sqrt(log2(n)))
        return cls(n, d, 2**d)


def _tuple_of_rank(rank: int, d: int, m: int) -> tuple[int, ...]:
    """rank-th tuple of [m]^d in lexicographic order (coordinate 0 most
    significant), with 1-based entries."""
    digits = []
    for _ in range(d):
        digits.append(rank % m + 1)
        rank //= m
    return tuple(reversed(digits))


def build_k4_coloring(n: int) -> EdgeColoring:
    """Edge coloring of K_n with no even-chromatic K4 and a palette strictly
    below 3^d * m^2.

    Vertices are the first n tuples of [m]^d in lexicographic order.  For
    vertices v < w the color is the pair (psi, {v_delta, w_delta}) where
    psi records, per coordinate, the sign of w_i - v_i, and delta is the
    first coordinate where v and w differ.
    """
    params = K4ColoringParams.from_n(n)
    d, m = params.d, params.m
    tuples = [_tuple_of_rank(i, d, m) for i in range(n)]
    values = []
    for j in range(num_pairs(n)):
        u, v = edge_endpoints(j)
        tu, tv = tuples[u], tuples[v]  # tu < tv lexicographically since u < v
        psi = tuple(0 if a == b else (1 if b > a else -1) for a, b in zip(tu, tv))
        delta = next(i for i in range(d) if tu[i] != tv[i])
        low, high = sorted((tu[delta], tv[delta]))
        values.append((psi, low, high))
    return EdgeColoring.from_values(n, values)


def coloring_from_matrix(matrix) -> EdgeColoring:
    """Coloring whose edge colors are the columns of a parity-check matrix,
    compacted to dense identifiers in first-appearance order."""
    n = matrix.n
    columns = []
    for j in range(num_pairs(n)):
        col = 0
        for i, row in enumerate(matrix.rows):
            col |= (row >> j & 1) << i
        columns.append(col)
    return EdgeColoring.from_values(n, columns)


# ---------------------------------------------------------------------------
# CL1 text format: line 1 = "n r"; then exactly C(n,2) lines "u v c" with
# 0 <= c < r, each unordered pair exactly once; the palette must be fully used.


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_cl1(text: str) -> EdgeColoring:
    n = r = None
    colors: list = []
    seen = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body:
            continue
        fields = body.split()
        if n is None:
            if len(fields) != 2:
                raise FormatError(f"expected 'n r', got {body!r}", lineno)
            try:
                n, r = int(fields[0]), int(fields[1])
            except ValueError:
                raise FormatError(f"header is not two integers: {body!r}", lineno) from None
            if n < 0 or r < 0:
                raise FormatError("negative header value", lineno)
            colors = [None] * num_pairs(n)
            continue
        if len(fields) != 3:
            raise FormatError(f"expected 'u v c', got {body!r}", lineno)
        try:
            u, v, c = (int(x) for x in fields)
        except ValueError:
            raise FormatError(f"non-integer entry: {body!r}", lineno) from None
        if not 0 <= u < v < n:
            raise FormatError(f"edge ({u}, {v}) violates 0 <= u < v < {n}", lineno)
        if not 0 <= c < r:
            raise FormatError(f"color {c} outside [0, {r})", lineno)
        j = edge_index(u, v)
        if colors[j] is not None:
            raise FormatError(f"duplicate pair ({u}, {v})", lineno)
        colors[j] = c
        seen += 1
    if n is None:
        raise FormatError("empty input: missing 'n r' header")
    if seen != num_pairs(n):
        missing = next(edge_endpoints(j) for j, c in enumerate(colors) if c is None)
        raise FormatError(f"missing pair {missing}; got {seen} of {num_pairs(n)} edges")
    if len(set(colors)) != r:
        raise FormatError(f"palette declares {r} colors but {len(set(colors))} are used")
    return EdgeColoring(n, tuple(colors), r)


def format_cl1(chi: EdgeColoring) -> str:
    lines = [f"{chi.n} {chi.palette_size}"]
    for j, c in enumerate(chi.colors):
        u, v = edge_endpoints(j)
        lines.append(f"{u} {v} {c}")
    return "\n".join(lines) + "\n"


def load_cl1(path) -> EdgeColoring:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_cl1(fh.read())


def save_cl1(chi: EdgeColoring, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_cl1(chi))
