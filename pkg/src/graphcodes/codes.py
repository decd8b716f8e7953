"""Linear graph codes as kernels of GF(2) parity-check matrices.

A parity-check matrix has one column per edge of K_n (canonical index order);
its kernel is the code.  Verification that a kernel contains no copy of a
pattern h is exhaustive over all placements of h in the host.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb

from .colorings import EdgeColoring, Embedding
from .errors import CapacityError, FormatError
from .graphs import (
    LabeledGraph,
    edge_index,
    induced_subgraph,
    non_isolated_vertices,
    num_pairs,
    permute_graph,
)

__all__ = [
    "ParityCheckMatrix",
    "VectorFamily",
    "FamilyCheck",
    "HFreeResult",
    "CodeSummary",
    "ComplementMapCode",
    "gf2_rank",
    "gf2_nullspace_basis",
    "kernel_dimension",
    "syndrome",
    "kernel_contains",
    "matrix_columns",
    "copy_records",
    "verify_h_free",
    "greedy_vector_family",
    "verify_vector_family",
    "identity_vector_family",
    "code_from_coloring",
    "random_code_search",
    "complement_map_code",
    "code_summary",
    "parse_pm1",
    "format_pm1",
    "load_pm1",
    "save_pm1",
]

RNG_NAME = "mt19937"  # random.Random; recorded in reports of seeded runs


# ---------------------------------------------------------------------------
# GF(2) linear algebra on integer bitsets (bit j = coordinate j).


def gf2_rank(rows) -> int:
    pivots: dict[int, int] = {}
    for row in rows:
        cur = row
        while cur:
            msb = cur.bit_length() - 1
            if msb in pivots:
                cur ^= pivots[msb]
            else:
                pivots[msb] = cur
                break
    return len(pivots)


def gf2_nullspace_basis(rows, width: int) -> list[int]:
    """Basis of {x in F_2^width : row . x = 0 for every row}."""
    pivot_rows: dict[int, int] = {}  # pivot column -> fully reduced row
    for row in rows:
        cur = row
        for p in sorted(pivot_rows, reverse=True):
            if cur >> p & 1:
                cur ^= pivot_rows[p]
        if cur == 0:
            continue
        p = cur.bit_length() - 1
        for pp in pivot_rows:
            if pivot_rows[pp] >> p & 1:
                pivot_rows[pp] ^= cur
        pivot_rows[p] = cur
    basis = []
    for j in range(width):
        if j in pivot_rows:
            continue
        x = 1 << j
        for p, rr in pivot_rows.items():
            if rr >> j & 1:
                x |= 1 << p
        basis.append(x)
    return basis


@dataclass(frozen=True)
class ParityCheckMatrix:
    """t GF(2) rows of length C(n,2); the kernel is the code."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        width = num_pairs(self.n)
        for i, row in enumerate(self.rows):
            if not 0 <= row < 1 << width:
                raise ValueError(f"row {i} out of range for n={self.n}")

    @property
    def t(self) -> int:
        return len(self.rows)


def kernel_dimension(matrix: ParityCheckMatrix) -> int:
    return num_pairs(matrix.n) - gf2_rank(matrix.rows)


def syndrome(matrix: ParityCheckMatrix, x: int) -> int:
    """Bit i is the parity of |row_i AND x|."""
    out = 0
    for i, row in enumerate(matrix.rows):
        out |= ((row & x).bit_count() & 1) << i
    return out


def kernel_contains(matrix: ParityCheckMatrix, x: int) -> bool:
    return syndrome(matrix, x) == 0


def matrix_columns(matrix: ParityCheckMatrix) -> list[int]:
    """Column j as an integer over F_2^t (bit i = row i)."""
    cols = [0] * num_pairs(matrix.n)
    for i, row in enumerate(matrix.rows):
        rem = row
        while rem:
            j = (rem & -rem).bit_length() - 1
            cols[j] |= 1 << i
            rem &= rem - 1
    return cols


# ---------------------------------------------------------------------------
# Copies of a pattern inside a host and H-freeness of a kernel.


def copy_records(h: LabeledGraph, n: int):
    """Yield (edge_mask, embedding) for every copy of h in a host on n
    vertices, in deterministic order (support subsets lexicographic, then
    placements by ascending mask)."""
    if h.n > n:
        raise ValueError(f"pattern has {h.n} vertices but host only {n}")
    support = non_isolated_vertices(h)
    core = induced_subgraph(h, support)
    k = core.n
    placement_maps = []  # (mask, lex-least permutation realizing it)
    seen = {}
    for p in permutations(range(k)):
        mask = permute_graph(core, p).edges
        if mask not in seen:
            seen[mask] = p
    for mask in sorted(seen):
        placement_maps.append((mask, seen[mask]))

    support_index = {v: i for i, v in enumerate(support)}
    core_edges = core.edge_list()
    for subset in combinations(range(n), k):
        for _, perm in placement_maps:
            host_mask = 0
            for u, v in core_edges:
                host_mask |= 1 << edge_index(subset[perm[u]], subset[perm[v]])
            # Embedding of the full pattern: non-isolated vertices through the
            # placement, isolated ones onto the smallest unused hosts.
            image = [-1] * h.n
            for v_pat in support:
                image[v_pat] = subset[perm[support_index[v_pat]]]
            used = set(subset)
            fill = (x for x in range(n) if x not in used)
            for v_pat in range(h.n):
                if image[v_pat] < 0:
                    image[v_pat] = next(fill)
            yield host_mask, Embedding(h, tuple(image))


@dataclass(frozen=True)
class HFreeResult:
    h_free: bool
    witness: Embedding | None  # an embedding whose image lies in the kernel


def verify_h_free(matrix: ParityCheckMatrix, h: LabeledGraph) -> HFreeResult:
    """Exhaustively check that no copy of h lies in the kernel."""
    cols = matrix_columns(matrix)
    for mask, embedding in copy_records(h, matrix.n):
        synd = 0
        rem = mask
        while rem:
            j = (rem & -rem).bit_length() - 1
            synd ^= cols[j]
            rem &= rem - 1
        if synd == 0:
            return HFreeResult(False, embedding)
    return HFreeResult(True, None)


# ---------------------------------------------------------------------------
# Column families with no small zero-sum subset (distance-(s+1) codes).


@dataclass(frozen=True)
class VectorFamily:
    """Vectors in F_2^t with no nonempty subset of size <= s summing to zero."""

    t: int
    s: int
    vectors: tuple[int, ...]

    def __post_init__(self):
        for i, v in enumerate(self.vectors):
            if not 0 <= v < 1 << self.t:
                raise ValueError(f"vector {i} out of range for t={self.t}")


@dataclass(frozen=True)
class FamilyCheck:
    ok: bool
    mode: str  # "exhaustive" | "sampled"
    witness: tuple[int, ...] | None  # indices of a zero-sum subset


def verify_vector_family(
    fam: VectorFamily,
    seed: int = 0,
    exhaustive_limit: int = 10**7,
    samples: int = 10**6,
) -> FamilyCheck:
    r = len(fam.vectors)
    total = sum(comb(r, k) for k in range(1, fam.s + 1))
    if total <= exhaustive_limit:
        for k in range(1, fam.s + 1):
            for idxs in combinations(range(r), k):
                acc = 0
                for i in idxs:
                    acc ^= fam.vectors[i]
                if acc == 0:
                    return FamilyCheck(False, "exhaustive", idxs)
        return FamilyCheck(True, "exhaustive", None)
    rng = random.Random(seed)
    for _ in range(samples):
        k = rng.randint(1, fam.s)
        idxs = tuple(sorted(rng.sample(range(r), k)))
        acc = 0
        for i in idxs:
            acc ^= fam.vectors[i]
        if acc == 0:
            return FamilyCheck(False, "sampled", idxs)
    return FamilyCheck(True, "sampled", None)


def greedy_vector_family(r: int, s: int, subset_limit: int = 10**7) -> VectorFamily:
    """r vectors with no zero-sum subset of size <= s, built by a greedy
    lexicographic scan (lexicode); the final width satisfies
    t <= ceil((s+1)/2) * ceil(log2(r+1))."""
    if r < 1 or s < 1:
        raise ValueError("need r >= 1 and s >= 1")
    projected = sum(comb(r, k) for k in range(s))
    if projected > subset_limit:
        raise CapacityError(
            f"tracking XOR sums of subsets of size < {s} over {r} vectors "
            f"needs {projected} entries (limit {subset_limit})"
        )
    t = max(1, -(-(s + 1) // 2) * r.bit_length())  # r.bit_length() = ceil(log2(r+1))
    while True:
        vectors = _lexicode_scan(r, s, t)
        if vectors is not None:
            width = max(1, max(v.bit_length() for v in vectors))
            return VectorFamily(width, s, tuple(vectors))
        t += 1


def _lexicode_scan(r: int, s: int, t: int):
    by_size = [{0}] + [set() for _ in range(s - 1)]  # XORs of exactly-k accepted
    reachable = {0}
    accepted: list[int] = []
    for c in range(1, 1 << t):
        if c in reachable:
            continue
        for k in range(min(len(accepted), s - 2), -1, -1):
            grown = {x ^ c for x in by_size[k]}
            by_size[k + 1] |= grown
            reachable |= grown
        accepted.append(c)
        if len(accepted) == r:
            return accepted
    return None


def identity_vector_family(matrix: ParityCheckMatrix) -> VectorFamily:
    """Distinct columns of the matrix in first-appearance order; composing
    with the induced coloring reproduces the matrix exactly."""
    seen: dict[int, None] = {}
    for col in matrix_columns(matrix):
        seen.setdefault(col)
    return VectorFamily(matrix.t, 0, tuple(seen))


def code_from_coloring(chi: EdgeColoring, fam: VectorFamily) -> ParityCheckMatrix:
    """Parity-check matrix whose column at edge j is fam.vectors[chi(j)]."""
    if len(fam.vectors) < chi.palette_size:
        raise ValueError(
            f"family has {len(fam.vectors)} vectors but the palette needs "
            f"{chi.palette_size}"
        )
    rows = [0] * fam.t
    for j, c in enumerate(chi.colors):
        v = fam.vectors[c]
        while v:
            i = (v & -v).bit_length() - 1
            rows[i] |= 1 << j
            v &= v - 1
    return ParityCheckMatrix(chi.n, tuple(rows))


def random_code_search(
    h: LabeledGraph, n: int, t: int, seed: int = 0, attempts: int = 100
):
    """Sample uniform t-row matrices until the kernel avoids copies of h.
    Returns the first hit or None; deterministic given (seed, attempts)."""
    width = num_pairs(n)
    rng = random.Random(seed)
    for _ in range(attempts):
        rows = tuple(rng.getrandbits(width) for _ in range(t))
        matrix = ParityCheckMatrix(n, rows)
        if verify_h_free(matrix, h).h_free:
            return matrix
    return None


# ---------------------------------------------------------------------------
# The complement-map code: phi maps a graph to itself (even size) or to its
# complement (odd size); the code is the phi-image of all small graphs.


@dataclass(frozen=True)
class ComplementMapCode:
    n: int

    def __post_init__(self):
        if self.n % 4 not in (0, 1):
            raise ValueError(
                f"n={self.n}: the edge-complement map is only invertible for "
                "n = 0 or 1 (mod 4)"
            )
        if self.n < 4:
            raise ValueError("need n >= 4")

    @property
    def num_slots(self) -> int:
        return num_pairs(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.num_slots) - 1

    @property
    def max_edges(self) -> int:
        return self.num_slots // 2 - 2

    def phi(self, x: int) -> int:
        """Linear extension of edge -> complement-of-edge; an involution."""
        if x.bit_count() % 2 == 0:
            return x
        return x ^ self.full_mask

    def contains(self, x: int) -> bool:
        return self.phi(x).bit_count() <= self.max_edges

    def cardinality(self) -> int:
        return sum(comb(self.num_slots, k) for k in range(self.max_edges + 1))

    def members(self, limit: int = 10**6):
        """All members, as phi-images of the sparse graphs, in ascending order
        of preimage edge count then preimage mask."""
        if self.cardinality() > limit:
            raise CapacityError(
                f"code has {self.cardinality()} members (limit {limit})"
            )
        for k in range(self.max_edges + 1):
            for edges in combinations(range(self.num_slots), k):
                a = 0
                for j in edges:
                    a |= 1 << j
                yield self.phi(a)

    def sample_member(self, rng: random.Random) -> int:
        """Uniform member via rejection sampling of the sparse preimage."""
        while True:
            a = rng.getrandbits(self.num_slots)
            if a.bit_count() <= self.max_edges:
                return self.phi(a)


def complement_map_code(n: int) -> ComplementMapCode:
    return ComplementMapCode(n)


# ---------------------------------------------------------------------------
# Summary bundle and the PM1 text format.


@dataclass(frozen=True)
class CodeSummary:
    n: int
    t: int
    kernel_dim: int
    density_log2: int  # density is exactly 2**density_log2
    h_free: bool
    witness: Embedding | None


def code_summary(matrix: ParityCheckMatrix, h: LabeledGraph) -> CodeSummary:
    dim = kernel_dimension(matrix)
    res = verify_h_free(matrix, h)
    return CodeSummary(
        n=matrix.n,
        t=matrix.t,
        kernel_dim=dim,
        density_log2=dim - num_pairs(matrix.n),
        h_free=res.h_free,
        witness=res.witness,
    )


def parse_pm1(text: str) -> ParityCheckMatrix:
    """PM1: line 1 = 'n t'; then t lines of C(n,2) characters over {0,1},
    character j = column j."""
    header = None
    rows = []
    expected_rows = 0
    width = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if header is None:
            fields = body.split()
            if len(fields) != 2:
                raise FormatError(f"expected 'n t', got {body!r}", lineno)
            try:
                n, expected_rows = int(fields[0]), int(fields[1])
            except ValueError:
                raise FormatError(f"header is not two integers: {body!r}", lineno) from None
            if n < 0 or expected_rows < 0:
                raise FormatError("negative header value", lineno)
            header = (n, expected_rows)
            width = num_pairs(n)
            continue
        if len(rows) == expected_rows:
            raise FormatError(f"more than {expected_rows} matrix rows", lineno)
        if len(body) != width or set(body) - {"0", "1"}:
            raise FormatError(
                f"expected {width} characters of 0/1, got {body!r}", lineno
            )
        rows.append(int(body[::-1], 2) if body else 0)
    if header is None:
        raise FormatError("empty input: missing 'n t' header")
    if len(rows) != expected_rows:
        raise FormatError(f"expected {expected_rows} rows, got {len(rows)}")
    return ParityCheckMatrix(header[0], tuple(rows))


def format_pm1(matrix: ParityCheckMatrix) -> str:
    width = num_pairs(matrix.n)
    lines = [f"{matrix.n} {matrix.t}"]
    for row in matrix.rows:
        lines.append("".join("1" if row >> j & 1 else "0" for j in range(width)))
    return "\n".join(lines) + "\n"


def load_pm1(path) -> ParityCheckMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_pm1(fh.read())


def save_pm1(matrix: ParityCheckMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_pm1(matrix))
