"""Top-level acceptance suite.

Each test covers one numbered criterion and prints a single pass/fail line
(bypassing output capture) so a full run yields an eight-line scorecard.
"""

import random
import time
from fractions import Fraction
from itertools import combinations, permutations
from math import ceil, comb, log2

import numpy as np

from graphcodes.bounds import bound_k4_colors
from graphcodes.cli import main
from graphcodes.codes import (
    code_from_coloring,
    complement_map_code,
    greedy_vector_family,
    verify_h_free,
)
from graphcodes.colorings import build_k4_coloring, find_even_chromatic_embedding
from graphcodes.decomp import (
    AlgorithmParams,
    decomposability_tables,
    find_even_decomposition,
    find_even_decomposition_unrestricted,
    is_even_decomposition,
    run_greedy_algorithm,
    smallest_viable_n,
)
from graphcodes.extremal import (
    check_inequalities,
    echelon_bases,
    exact_d,
    exact_dlin,
    exact_r,
    gaussian_binomial,
)
from graphcodes.graphs import (
    LabeledGraph,
    complete_graph,
    edge_index,
    is_bipartite,
    is_isomorphic,
    num_pairs,
    path_graph,
    save_gl1,
)

K4 = complete_graph(4)
P3 = LabeledGraph.from_edge_list(3, [(0, 1), (0, 2)])
TRIANGLE = complete_graph(3)
EDGE = complete_graph(2)
DIAMOND = LabeledGraph.from_edge_list(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
STAR3 = LabeledGraph.from_edge_list(4, [(0, 1), (0, 2), (0, 3)])


def _verdict(capsys, num: int, ok: bool, summary: str) -> None:
    with capsys.disabled():
        print(f"\ncriterion {num}: {'PASS' if ok else 'FAIL'} - {summary}")
    assert ok, f"criterion {num}: {summary}"


def test_criterion_1_explicit_coloring_avoids_k4(capsys):
    hosts = (4, 8, 16, 32, 64, 81, 128)
    start = time.perf_counter()
    bad = []
    for n in hosts:
        chi = build_k4_coloring(n)
        if find_even_chromatic_embedding(chi, K4) is not None:
            bad.append(f"n={n}: even-chromatic K4 found")
        if not chi.palette_size < bound_k4_colors(n):
            bad.append(f"n={n}: palette {chi.palette_size} not below bound")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    _verdict(
        capsys,
        1,
        ok,
        bad[0]
        if bad
        else f"no even-chromatic K4 and palette below 3^d*m^2 on all of "
        f"n={list(hosts)} in {elapsed:.1f}s (budget 120s)",
    )


def test_criterion_2_coloring_to_code_pipeline(capsys):
    bad = []
    details = []
    for n in (8, 16):
        chi = build_k4_coloring(n)
        r = chi.palette_size
        matrix = code_from_coloring(chi, greedy_vector_family(r, 6))
        result = verify_h_free(matrix, K4)
        budget = ceil((K4.num_edges + 1) / 2) * ceil(log2(r + 1))
        if not result.h_free:
            bad.append(f"n={n}: kernel contains a K4")
        if matrix.t > budget:
            bad.append(f"n={n}: t={matrix.t} exceeds budget {budget}")
        details.append(f"n={n}: t={matrix.t}<={budget}, kernel K4-free")
    ok = not bad
    _verdict(capsys, 2, ok, bad[0] if bad else "; ".join(details))


def test_criterion_3_exact_extremal_anchors(capsys):
    failures = []

    def expect(label, actual, wanted):
        if actual != wanted:
            failures.append(f"{label}: got {actual}, wanted {wanted}")

    expect("r(K4, 4)", exact_r(K4, 4).value, 2)
    # colorings with no even-chromatic two-edge path are exactly the proper
    # edge colorings, so the least palette is the chromatic index of the host
    for n in (4, 5):
        chromatic_index = n - 1 if n % 2 == 0 else n
        expect(f"r(P3, {n})", exact_r(P3, n).value, chromatic_index)
    for h, label in (
        (EDGE, "edge"),
        (TRIANGLE, "triangle"),
        (path_graph(4), "three-edge path"),
        (STAR3, "three-edge star"),
        (DIAMOND, "five-edge diamond"),
    ):
        for n in (4, 5):
            expect(f"r({label}, {n})", exact_r(h, n).value, 1)

    dlin = exact_dlin(K4, 4)
    expect("dlin(K4, 4) status", dlin.status, "exact")
    expect("dlin(K4, 4)", dlin.value, Fraction(1, 2))
    per_dimension = [sum(1 for _ in echelon_bases(6, k)) for k in range(7)]
    expect("echelon bases per dimension", per_dimension,
           [gaussian_binomial(6, k) for k in range(7)])
    expect("total subspaces of GF(2)^6", sum(per_dimension), 2825)

    ok = not failures
    _verdict(
        capsys,
        3,
        ok,
        failures[0]
        if failures
        else "r(K4,4)=2, r(P3,4)=3, r(P3,5)=5 (chromatic-index check), "
        "odd-edge patterns give 1, dlin(K4,4)=1/2 over all 2825 subspaces",
    )


def _classes_on_four_vertices():
    reps = []
    for mask in range(64):
        g = LabeledGraph(4, mask)
        if not any(is_isomorphic(g, r) for r in reps):
            reps.append(g)
    return reps


def test_criterion_4_inequality_harness_full_sweep(capsys):
    classes = _classes_on_four_vertices()
    failures = []
    if len(classes) != 11:
        failures.append(f"expected 11 isomorphism classes, found {len(classes)}")
    for h in classes:
        outcome = check_inequalities(
            [exact_r(h, 4), exact_dlin(h, 4), exact_d(h, 4)]
        )
        for check in outcome["checks"]:
            allowed = {"pass"}
            if h.num_edges == 0 and check["name"] == "dlin_le_inv_r":
                allowed = {"skip"}  # r is unbounded for the edgeless pattern
            if check["status"] not in allowed:
                failures.append(
                    f"pattern mask {h.edges}: {check['name']} -> {check['status']}"
                )
    ok = not failures
    _verdict(
        capsys,
        4,
        ok,
        failures[0]
        if failures
        else "dlin <= 1/r and d >= dlin hold exactly on all 11 pattern classes at n=4",
    )


def _k4_placement_masks(v):
    masks = []
    for quad in combinations(range(v), 4):
        mask = 0
        for a, b in combinations(quad, 2):
            mask |= 1 << edge_index(a, b)
        masks.append(mask)
    return masks


def _cycle_masks(v, length):
    masks = set()
    for verts in combinations(range(v), length):
        first, rest = verts[0], verts[1:]
        for perm in permutations(rest):
            if perm[0] > perm[-1]:
                continue  # one orientation per cycle
            cycle = (first,) + perm
            mask = 0
            for i in range(length):
                a, b = cycle[i], cycle[(i + 1) % length]
                mask |= 1 << edge_index(min(a, b), max(a, b))
            masks.add(mask)
    return sorted(masks)


def test_criterion_5_census_properties(capsys):
    start = time.perf_counter()
    failures = []
    tables = decomposability_tables(7)
    table7 = tables[7]
    arr = np.arange(1 << num_pairs(7), dtype=np.int64)
    even = np.bitwise_count(arr) % 2 == 0

    # (a) every even K4-free graph on 7 vertices is decomposable
    k4_masks = _k4_placement_masks(7)
    if len(k4_masks) != 35:
        failures.append(f"expected 35 K4 placements, got {len(k4_masks)}")
    has_k4 = np.zeros(arr.shape, dtype=bool)
    for mask in k4_masks:
        has_k4 |= (arr & mask) == mask
    if not bool(table7[even & ~has_k4].all()):
        failures.append("an even K4-free graph on 7 vertices is undecomposable")

    # (b) every even bipartite graph on 7 vertices is decomposable
    odd_cycles = []
    for length, count in ((3, 35), (5, 252), (7, 360)):
        masks = _cycle_masks(7, length)
        if len(masks) != count:
            failures.append(f"expected {count} {length}-cycles, got {len(masks)}")
        odd_cycles.extend(masks)
    has_odd_cycle = np.zeros(arr.shape, dtype=bool)
    for mask in odd_cycles:
        has_odd_cycle |= (arr & mask) == mask
    rng = random.Random(0)
    for _ in range(500):  # the mask test must agree with the direct search
        mask = rng.getrandbits(num_pairs(7))
        if bool(has_odd_cycle[mask]) == is_bipartite(LabeledGraph(7, mask)):
            failures.append(f"odd-cycle scan disagrees with is_bipartite on {mask}")
            break
    if not bool(table7[even & ~has_odd_cycle].all()):
        failures.append("an even bipartite graph on 7 vertices is undecomposable")

    # (c) two-step-restricted search agrees with the unrestricted oracle, v <= 5
    for v in range(2, 6):
        for mask in range(1 << num_pairs(v)):
            g = LabeledGraph(v, mask)
            restricted = find_even_decomposition(g) is not None
            unrestricted = find_even_decomposition_unrestricted(g) is not None
            if restricted != unrestricted or restricted != bool(tables[v][mask]):
                failures.append(f"disagreement at v={v}, mask={mask}")
                break

    # (d) K4 and every complete-graph-plus-small-remainder instance with
    # 2k+4 <= 8 is undecomposable
    instances = [("K4", K4)]
    instances.append(("K6 + isolated vertex", LabeledGraph(7, complete_graph(6).edges)))
    k8 = complete_graph(8).edges
    instances.append(("K8 + two isolated vertices", LabeledGraph(10, k8)))
    instances.append(
        ("K8 + disjoint edge", LabeledGraph(10, k8 | 1 << edge_index(8, 9)))
    )
    for label, g in instances:
        if find_even_decomposition(g) is not None:
            failures.append(f"{label} reported decomposable")

    elapsed = time.perf_counter() - start
    if elapsed >= 300:
        failures.append(f"census took {elapsed:.0f}s, budget 300s")
    ok = not failures
    _verdict(
        capsys,
        5,
        ok,
        failures[0]
        if failures
        else "even K4-free and even bipartite graphs decompose at v=7; restricted "
        f"search matches the oracle for v<=5; K4/K6+1/K8+2 are undecomposable "
        f"({elapsed:.1f}s, budget 300s)",
    )


def test_criterion_6_greedy_runs_validate(capsys):
    n = smallest_viable_n()
    assert AlgorithmParams.from_n(n).q >= 1
    successes = 0
    failures = []
    step9_odd_sightings = 0
    for seed in range(200):
        mask = random.Random((1 << 20) + seed).getrandbits(num_pairs(n))
        g = LabeledGraph(n, mask)
        odd = g.num_edges % 2 == 1
        report = run_greedy_algorithm(g, AlgorithmParams.from_n(n, seed=seed))
        if report.outcome == "success":
            if odd:
                failures.append(f"seed {seed}: odd-edge input reported success")
            if not is_even_decomposition(g, report.decomposition):
                failures.append(f"seed {seed}: reported chain does not validate")
            successes += 1
        elif report.failed_step == 9:
            if odd:
                step9_odd_sightings += 1
            else:
                failures.append(f"seed {seed}: even-edge input failed at step 9")
    if step9_odd_sightings == 0:
        failures.append("no odd-edge run reached step 9; property not exercised")
    ok = not failures
    _verdict(
        capsys,
        6,
        ok,
        failures[0]
        if failures
        else f"200 seeded runs at n={n}: {successes} successes all validate; "
        f"odd-edge inputs never succeed and account for every step-9 failure "
        f"({step9_odd_sightings} seen); observed success rate "
        f"{successes / 200:.2f} (reported, not asserted)",
    )


def _triangle_masks(n):
    masks = set()
    for a, b, c in combinations(range(n), 3):
        masks.add(
            1 << edge_index(a, b) | 1 << edge_index(a, c) | 1 << edge_index(b, c)
        )
    return masks


def test_criterion_7_complement_map_code(capsys):
    start = time.perf_counter()
    failures = []
    for n in (4, 5):
        code = complement_map_code(n)
        slots = code.num_slots
        if not all(code.phi(code.phi(a)) == a for a in range(1 << slots)):
            failures.append(f"n={n}: phi is not an involution")
        members = list(code.members())
        expected = sum(comb(slots, k) for k in range(slots // 2 - 2 + 1))
        if not len(members) == len(set(members)) == expected == code.cardinality():
            failures.append(f"n={n}: cardinality mismatch ({len(members)})")
        triangles = _triangle_masks(n)
        if any((x ^ y) in triangles for x, y in combinations(members, 2)):
            failures.append(f"n={n}: two members differ by a triangle")

    pair_counts = {}
    for n in (8, 9):
        code = complement_map_code(n)
        rng = random.Random(n)
        for _ in range(1000):
            a = rng.getrandbits(code.num_slots)
            if code.phi(code.phi(a)) != a:
                failures.append(f"n={n}: involution spot check failed")
                break
        sample = np.array(
            [code.sample_member(rng) for _ in range(1500)], dtype=np.uint64
        )
        diffs = (sample[:, None] ^ sample[None, :]).ravel()
        triangles = np.array(sorted(_triangle_masks(n)), dtype=np.uint64)
        if int(np.isin(diffs, triangles).sum()) != 0:
            failures.append(f"n={n}: a sampled pair differs by a triangle")
        pair_counts[n] = len(sample) * (len(sample) - 1) // 2
    for n, count in pair_counts.items():
        if count < 10**6:
            failures.append(f"n={n}: only {count} sampled pairs, need >= 10^6")

    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        failures.append(f"took {elapsed:.0f}s, budget 60s")
    ok = not failures
    _verdict(
        capsys,
        7,
        ok,
        failures[0]
        if failures
        else "phi involutive, member counts match the binomial sums, and no "
        f"member pair differs by a triangle (n=4,5 exhaustive; n=8,9 with "
        f"{min(pair_counts.values())} seeded pairs each; {elapsed:.1f}s)",
    )


def test_criterion_8_reports_are_byte_identical(capsys, tmp_path):
    save_gl1(K4, tmp_path / "k4.gl1")
    save_gl1(P3, tmp_path / "p3.gl1")
    save_gl1(TRIANGLE, tmp_path / "tri.gl1")
    save_gl1(LabeledGraph.from_edge_list(4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
             tmp_path / "c4.gl1")
    save_gl1(LabeledGraph(768, 0), tmp_path / "empty768.gl1")
    main(["coloring", "build-k4", "--n", "8", "--out", str(tmp_path / "chi8.cl1"),
          "--report", str(tmp_path / "setup.json")])
    main(["code", "from-coloring", "--coloring", str(tmp_path / "chi8.cl1"),
          "--s", "6", "--out", str(tmp_path / "m8.pm1"),
          "--report", str(tmp_path / "setup.json")])

    def path(name):
        return str(tmp_path / name)

    commands = [
        ["coloring", "build-k4", "--n", "16", "--out", "OUT"],
        ["coloring", "verify", "--coloring", path("chi8.cl1"),
         "--pattern", path("k4.gl1")],
        ["code", "from-coloring", "--coloring", path("chi8.cl1"), "--s", "6",
         "--out", "OUT"],
        ["code", "verify", "--matrix", path("m8.pm1"), "--pattern", path("k4.gl1")],
        ["code", "random-search", "--pattern", path("tri.gl1"), "--n", "5",
         "--t", "3", "--seed", "11", "--attempts", "30", "--out", "OUT"],
        ["code", "complement", "--n", "5"],
        ["decomp", "exact", "--graph", path("c4.gl1")],
        ["decomp", "greedy", "--graph", path("empty768.gl1"), "--seed", "7"],
        ["decomp", "census", "--v", "6"],
        ["decomp", "census", "--v", "9", "--samples", "150", "--seed", "2"],
        ["extremal", "r", "--pattern", path("p3.gl1"), "--n", "4", "--out", "OUT"],
        ["extremal", "dlin", "--pattern", path("k4.gl1"), "--n", "4", "--out", "OUT"],
        ["extremal", "d", "--pattern", path("k4.gl1"), "--n", "4", "--out", "OUT"],
        ["bounds", "--name", "maxmin", "--args", "r1=4", "r2=6", "k=1", "n=1000"],
    ]
    failures = []
    for index, command in enumerate(commands):
        report = tmp_path / f"report_{index}.json"
        out = tmp_path / f"artifact_{index}"
        argv = [str(out) if a == "OUT" else a for a in command]
        argv += ["--report", str(report)]
        runs = []
        for _ in range(2):  # identical argv both times
            status = main(argv)
            artifact = out.read_bytes() if out.exists() else None
            runs.append((status, report.read_bytes(), artifact))
        if runs[0] != runs[1]:
            failures.append(f"{' '.join(command[:2])}: reruns differ")
        if runs[0][0] not in (0, 1):
            failures.append(f"{' '.join(command[:2])}: unexpected status {runs[0][0]}")
    ok = not failures
    _verdict(
        capsys,
        8,
        ok,
        failures[0]
        if failures
        else f"all {len(commands)} representative commands produce byte-identical "
        "reports and artifacts on rerun with a fixed seed",
    )
