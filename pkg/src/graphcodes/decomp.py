"""Even decompositions.

An even decomposition of a graph is a chain of vertex sets V_0 > V_1 > ... >
V_k = {} starting at the full vertex set, where every removed layer
V_{i-1} \\ V_i is an independent set sending an even number of edges to V_i.

Provides: a validity checker, exact existence search (removals of at most two
vertices per layer, which is complete, plus an unrestricted oracle), a
nine-step seeded greedy algorithm for large hosts, and census harnesses over
all graphs on a small vertex count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, log, log2, sqrt

import numpy as np

from . import _backend
from .errors import CapacityError
from .graphs import LabeledGraph

__all__ = [
    "EvenDecomposition",
    "AlgorithmParams",
    "RunReport",
    "CensusRecord",
    "is_even_decomposition",
    "find_even_decomposition",
    "find_even_decomposition_unrestricted",
    "run_greedy_algorithm",
    "smallest_viable_n",
    "decomposability_tables",
    "decomposition_census",
    "run_report_json",
    "census_json",
    "RESTRICTED_VERTEX_LIMIT",
    "UNRESTRICTED_VERTEX_LIMIT",
    "EXHAUSTIVE_CENSUS_LIMIT",
]

RESTRICTED_VERTEX_LIMIT = 24
UNRESTRICTED_VERTEX_LIMIT = 12
EXHAUSTIVE_CENSUS_LIMIT = 7


@dataclass(frozen=True)
class EvenDecomposition:
    """Chain of vertex sets, each a sorted tuple, from the full set to ()."""

    chain: tuple[tuple[int, ...], ...]


def _mask_of(vertices) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return tuple(out)


def is_even_decomposition(g: LabeledGraph, d: EvenDecomposition) -> bool:
    """Validity check of the three chain invariants."""
    if not d.chain:
        return False
    full = (1 << g.n) - 1
    masks = []
    for level in d.chain:
        m = _mask_of(level)
        if m & ~full or len(set(level)) != len(level):
            raise ValueError("chain is not over the graph's vertex set")
        masks.append(m)
    if masks[0] != full or masks[-1] != 0:
        return False
    adj = g.adjacency_masks()
    for prev, cur in zip(masks, masks[1:]):
        if cur & ~prev or cur == prev:
            return False  # not strictly decreasing
        layer = prev & ~cur
        cut = 0
        rem = layer
        while rem:
            v = (rem & -rem).bit_length() - 1
            if adj[v] & layer:
                return False  # layer not independent
            cut += (adj[v] & cur).bit_count()
            rem &= rem - 1
        if cut % 2 != 0:
            return False
    return True


def _chain_from_layers(n: int, layers) -> EvenDecomposition:
    full = (1 << n) - 1
    chain = [full]
    for layer in layers:
        chain.append(chain[-1] & ~_mask_of(layer))
    return EvenDecomposition(tuple(_vertices_of(m) for m in chain))


def find_even_decomposition(g: LabeledGraph):
    """Witness chain or None; removals of one even-degree vertex or a
    non-adjacent equal-parity pair per layer (complete for this problem)."""
    if g.n > RESTRICTED_VERTEX_LIMIT:
        raise CapacityError(f"restricted search limited to {RESTRICTED_VERTEX_LIMIT} vertices")
    adj = g.adjacency_masks()
    failed: set[int] = set()

    def solve(s: int):
        if s == 0:
            return []
        if s in failed:
            return None
        verts = _vertices_of(s)
        for v in verts:
            if (adj[v] & s).bit_count() % 2 == 0:
                rest = solve(s & ~(1 << v))
                if rest is not None:
                    return [(v,)] + rest
        for i, u in enumerate(verts):
            pu = (adj[u] & s).bit_count() & 1
            for w in verts[i + 1 :]:
                if adj[u] >> w & 1:
                    continue
                if pu != (adj[w] & s).bit_count() & 1:
                    continue
                rest = solve(s & ~(1 << u) & ~(1 << w))
                if rest is not None:
                    return [(u, w)] + rest
        failed.add(s)
        return None

    layers = solve((1 << g.n) - 1)
    return None if layers is None else _chain_from_layers(g.n, layers)


def find_even_decomposition_unrestricted(g: LabeledGraph):
    """Same contract with layers of any size; oracle for the restricted search."""
    if g.n > UNRESTRICTED_VERTEX_LIMIT:
        raise CapacityError(f"unrestricted search limited to {UNRESTRICTED_VERTEX_LIMIT} vertices")
    adj = g.adjacency_masks()
    failed: set[int] = set()

    def solve(s: int):
        if s == 0:
            return []
        if s in failed:
            return None
        sub = s
        while sub:
            layer = sub
            rest_mask = s & ~layer
            ok = True
            cut = 0
            rem = layer
            while rem:
                v = (rem & -rem).bit_length() - 1
                if adj[v] & layer:
                    ok = False
                    break
                cut += (adj[v] & rest_mask).bit_count()
                rem &= rem - 1
            if ok and cut % 2 == 0:
                tail = solve(rest_mask)
                if tail is not None:
                    return [_vertices_of(layer)] + tail
            sub = (sub - 1) & s
        failed.add(s)
        return None

    layers = solve((1 << g.n) - 1)
    return None if layers is None else _chain_from_layers(g.n, layers)


# ---------------------------------------------------------------------------
# The nine-step seeded greedy algorithm for large hosts.


@dataclass(frozen=True)
class AlgorithmParams:
    """Host partition parameters; requires p, m, q >= 1 to run."""

    n: int
    p: int
    m: int
    q: int
    x_size: int
    seed: int = 0

    def __post_init__(self):
        if min(self.p, self.m, self.q) < 1:
            raise ValueError(
                f"degenerate parameters (p={self.p}, m={self.m}, q={self.q}); "
                "the host is too small for this regime"
            )
        if not 1 <= self.x_size <= self.m:
            raise ValueError(f"x_size={self.x_size} must be in [1, m={self.m}]")

    @classmethod
    def from_n(cls, n: int, x_size: int | None = None, seed: int = 0) -> "AlgorithmParams":
        if n < 2:
            raise ValueError("need n >= 2")
        p = ceil(2 * log(n) / log(4 / 3))
        m = n // (p + 1)
        q = floor(sqrt(log2(m)) / 2) if m >= 1 else 0
        if x_size is None:
            x_size = 2 * q * q
        return cls(n=n, p=p, m=m, q=q, x_size=x_size, seed=seed)


@lru_cache(maxsize=1)
def smallest_viable_n() -> int:
    """Smallest host size whose derived parameters satisfy q >= 1."""
    n = 2
    while True:
        p = ceil(2 * log(n) / log(4 / 3))
        m = n // (p + 1)
        if m >= 1 and floor(sqrt(log2(m)) / 2) >= 1:
            return n
        n += 1


@dataclass(frozen=True)
class RunReport:
    outcome: str  # "success" | "failure"
    failed_step: int | None
    seed: int
    params: AlgorithmParams
    removals: tuple[tuple[int, tuple[int, ...]], ...]  # (step, vertices)
    decomposition: EvenDecomposition | None


def run_greedy_algorithm(g: LabeledGraph, params: AlgorithmParams) -> RunReport:
    """Nine steps: reserve an independent set X inside A and helper sets
    P_v/Q_v/R_v, then peel vertices off in an order that keeps every removal
    an even-cut independent layer.  A step that cannot proceed is a failure
    outcome, not an error."""
    if g.n != params.n:
        raise ValueError(f"graph has {g.n} vertices but params expect {params.n}")
    n, p, m, q = params.n, params.p, params.m, params.q
    adj = g.adjacency_masks()
    remaining = (1 << n) - 1
    removals: list[tuple[int, tuple[int, ...]]] = []

    def deg(v: int) -> int:
        return (adj[v] & remaining).bit_count()

    def fail(step: int) -> RunReport:
        return RunReport("failure", step, params.seed, params, tuple(removals), None)

    def remove(step: int, verts: tuple[int, ...]):
        nonlocal remaining
        for v in verts:
            remaining &= ~(1 << v)
        removals.append((step, verts))

    # Host split: A = the first m vertices, B the rest, carved into m
    # consecutive helper slices P_v (sizes as equal as possible, each >= p).
    a_vertices = list(range(m))
    b_lo, b_size = m, n - m
    base, extra = divmod(b_size, m)
    slices = []
    start = b_lo
    for i in range(m):
        size = base + (1 if i < extra else 0)
        slices.append(list(range(start, start + size)))
        start += size
    p_sets = {v: slices[i] for i, v in enumerate(a_vertices)}
    q_sets = {v: slice_[:q] for v, slice_ in p_sets.items()}

    rng = random.Random(params.seed)

    # Step 1: independent X inside A, greedy over seeded random orders.
    x_set: list[int] | None = None
    for _ in range(100):
        order = a_vertices[:]
        rng.shuffle(order)
        chosen: list[int] = []
        chosen_mask = 0
        for v in order:
            if adj[v] & chosen_mask:
                continue
            chosen.append(v)
            chosen_mask |= 1 << v
            if len(chosen) == params.x_size:
                break
        if len(chosen) == params.x_size:
            x_set = sorted(chosen)
            break
    if x_set is None:
        return fail(1)
    x_mask = _mask_of(x_set)

    # Step 2: the anchor a is the smallest vertex of A outside X.
    rest_a = [v for v in a_vertices if not x_mask >> v & 1]
    if not rest_a:
        return fail(2)
    a_vertex = rest_a[0]

    def clean(step: int, targets: list[int], helper_of) -> bool:
        """Steps 3, 4 and 8: remove each target alone when its remaining
        degree is even, else together with the smallest odd-degree
        non-neighbor in its helper set."""
        for v in targets:
            if deg(v) % 2 == 0:
                remove(step, (v,))
                continue
            partner = None
            for w in helper_of(v):
                if not remaining >> w & 1:
                    continue
                if adj[v] >> w & 1:
                    continue
                if deg(w) % 2 == 1:
                    partner = w
                    break
            if partner is None:
                return False
            remove(step, (v, partner))
        return True

    # Step 3: clean A minus X and the anchor, helpers P_v.
    targets3 = [v for v in rest_a if v != a_vertex]
    if not clean(3, targets3, lambda v: p_sets[v]):
        return fail(3)

    # Step 4: clean the anchor itself, helper Q_a.
    if not clean(4, [a_vertex], lambda v: q_sets[a_vertex]):
        return fail(4)

    # Step 5: shrink C (remaining B minus Q_a) to q vertices, always removing
    # the smallest even-degree one.
    qa_mask = _mask_of(q_sets[a_vertex])
    c_mask = remaining & ~((1 << m) - 1) & ~qa_mask
    c_count = c_mask.bit_count()
    if c_count < q:
        return fail(5)
    while c_count > q:
        pick = None
        rem = c_mask
        while rem:
            v = (rem & -rem).bit_length() - 1
            if deg(v) % 2 == 0:
                pick = v
                break
            rem &= rem - 1
        if pick is None:
            return fail(5)
        remove(5, (pick,))
        c_mask &= ~(1 << pick)
        c_count -= 1

    # Step 6: Y = remaining B vertices; partition X in natural order into
    # blocks of size q, one per element of Y (no removals here).
    y_set = _vertices_of(remaining & ~((1 << m) - 1))
    if params.x_size < q * len(y_set):
        return fail(6)
    r_sets = {}
    for i, v in enumerate(y_set):
        r_sets[v] = x_set[i * q : (i + 1) * q]

    # Step 7: the anchor b is the smallest element of Y.
    if not y_set:
        return fail(7)
    b_vertex = y_set[0]

    # Step 8: clean Y minus b, helpers R_v.
    targets8 = [v for v in y_set if v != b_vertex]
    if not clean(8, targets8, lambda v: r_sets[v]):
        return fail(8)

    # Step 9: remove b (its remaining degree is even iff e(g) is even), then
    # the leftover independent set inside X in one layer.
    if deg(b_vertex) % 2 != 0:
        return fail(9)
    remove(9, (b_vertex,))
    leftover = _vertices_of(remaining)
    if leftover:
        remove(9, leftover)

    decomposition = _chain_from_layers(n, [verts for _, verts in removals])
    if not is_even_decomposition(g, decomposition):
        raise AssertionError("internal error: assembled chain failed validation")
    return RunReport("success", None, params.seed, params, tuple(removals), decomposition)


def run_report_json(report: RunReport) -> dict:
    return {
        "outcome": report.outcome,
        "failed_step": report.failed_step,
        "seed": report.seed,
        "params": {
            "n": report.params.n,
            "p": report.params.p,
            "m": report.params.m,
            "q": report.params.q,
            "x_size": report.params.x_size,
        },
        "removals": [[step, list(verts)] for step, verts in report.removals],
    }


# ---------------------------------------------------------------------------
# Census over all graphs on v vertices.


def decomposability_tables(vmax: int) -> list[np.ndarray]:
    """tables[k][mask] = True iff the graph (k, mask) has an even
    decomposition, for every k <= vmax."""
    if vmax > EXHAUSTIVE_CENSUS_LIMIT:
        raise CapacityError(f"exhaustive tables limited to {EXHAUSTIVE_CENSUS_LIMIT} vertices")
    tables = [np.array([True]), np.array([True])]
    for k in range(2, vmax + 1):
        tables.append(np.asarray(_backend.decomposability_step(k, tables[k - 1], tables[k - 2])))
    return tables[: vmax + 1]


@dataclass(frozen=True)
class CensusRecord:
    v: int
    mode: str  # "exhaustive" | "sampled"
    total_even: int
    undecomposable: int
    proportion_num: int
    proportion_den: int


def _record(v: int, mode: str, total_even: int, undecomposable: int) -> CensusRecord:
    frac = Fraction(undecomposable, total_even) if total_even else Fraction(0, 1)
    return CensusRecord(v, mode, total_even, undecomposable, frac.numerator, frac.denominator)


def undecomposable_even_masks(v: int) -> list[int]:
    """Edge masks of the even-edge graphs on v vertices with no even
    decomposition (exhaustive)."""
    tables = decomposability_tables(v)
    num_edges = v * (v - 1) // 2
    masks = np.arange(1 << num_edges, dtype=np.uint32)
    even = np.bitwise_count(masks) % 2 == 0
    bad = even & ~tables[v]
    return [int(x) for x in masks[bad]]


def decomposition_census(v: int, samples: int | None = None, seed: int = 0) -> CensusRecord:
    if samples is None:
        if v > EXHAUSTIVE_CENSUS_LIMIT:
            raise CapacityError(
                f"exhaustive census limited to v <= {EXHAUSTIVE_CENSUS_LIMIT}; "
                "pass a sample count for larger v"
            )
        num_edges = v * (v - 1) // 2
        if num_edges == 0:
            return _record(v, "exhaustive", 1, 0)
        tables = decomposability_tables(v)
        masks = np.arange(1 << num_edges, dtype=np.uint32)
        even = np.bitwise_count(masks) % 2 == 0
        total_even = int(even.sum())
        undecomposable = int((even & ~tables[v]).sum())
        return _record(v, "exhaustive", total_even, undecomposable)
    if v > RESTRICTED_VERTEX_LIMIT:
        raise CapacityError(f"sampled census limited to v <= {RESTRICTED_VERTEX_LIMIT}")
    rng = random.Random(seed)
    num_edges = v * (v - 1) // 2
    failures = 0
    for _ in range(samples):
        mask = rng.getrandbits(num_edges)
        while mask.bit_count() % 2 == 1:
            mask = rng.getrandbits(num_edges)
        if find_even_decomposition(LabeledGraph(v, mask)) is None:
            failures += 1
    return _record(v, "sampled", samples, failures)


def census_json(record: CensusRecord) -> dict:
    return {
        "v": record.v,
        "mode": record.mode,
        "total_even": record.total_even,
        "undecomposable": record.undecomposable,
        "proportion_num": record.proportion_num,
        "proportion_den": record.proportion_den,
    }
