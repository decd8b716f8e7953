"""Parity-check codes: kernel algebra, H-freeness, families, complement code."""

import random

import pytest

from graphcodes.codes import (
    ComplementMapCode,
    ParityCheckMatrix,
    VectorFamily,
    code_from_coloring,
    code_summary,
    complement_map_code,
    copy_records,
    format_pm1,
    gf2_nullspace_basis,
    gf2_rank,
    greedy_vector_family,
    identity_vector_family,
    kernel_contains,
    kernel_dimension,
    matrix_columns,
    parse_pm1,
    random_code_search,
    syndrome,
    verify_h_free,
    verify_vector_family,
)
from graphcodes.colorings import (
    admits_even_chromatic_copy,
    build_k4_coloring,
    coloring_from_matrix,
    monochromatic_coloring,
    rainbow_coloring,
    EdgeColoring,
)
from graphcodes.errors import FormatError
from graphcodes.graphs import (
    LabeledGraph,
    complete_graph,
    cycle_graph,
    is_copy_of,
    matching_graph,
    num_pairs,
    path_graph,
)

ALL_ONES_4 = ParityCheckMatrix(4, (63,))


def test_gf2_rank():
    assert gf2_rank([]) == 0
    assert gf2_rank([0b101, 0b011, 0b110]) == 2  # third = sum of first two
    assert gf2_rank([1, 2, 4, 7]) == 3


def test_nullspace_basis_spans_kernel():
    rng = random.Random(1)
    for _ in range(40):
        width = rng.randint(1, 12)
        t = rng.randint(0, 5)
        rows = [rng.getrandbits(width) for _ in range(t)]
        basis = gf2_nullspace_basis(rows, width)
        assert len(basis) == width - gf2_rank(rows)
        for x in basis:
            assert all((row & x).bit_count() % 2 == 0 for row in rows)
        assert gf2_rank(basis) == len(basis)


def test_kernel_dimension_examples():
    assert kernel_dimension(ParityCheckMatrix(4, ())) == 6
    assert kernel_dimension(ParityCheckMatrix(4, (0,))) == 6
    assert kernel_dimension(ALL_ONES_4) == 5
    assert kernel_dimension(ParityCheckMatrix(4, (63, 63))) == 5


def test_syndrome_and_membership():
    m = ParityCheckMatrix(4, (0b000111, 0b111000))
    assert syndrome(m, 0b000011) == 0b0  # two bits in row 0: even
    assert syndrome(m, 0b000001) == 0b1
    assert syndrome(m, 0b001001) == 0b11
    assert kernel_contains(m, 0b011011)
    assert not kernel_contains(m, 0b000001)


def test_matrix_columns_align_with_rows():
    m = ParityCheckMatrix(4, (0b000111, 0b111000))
    cols = matrix_columns(m)
    assert cols == [1, 1, 1, 2, 2, 2]


def test_copy_records_against_membership_oracle():
    patterns = [
        complete_graph(3),
        path_graph(3),
        matching_graph(2),
        cycle_graph(4),
        complete_graph(4),
        LabeledGraph(4, 0b000001),  # edge plus two isolated vertices
    ]
    for h in patterns:
        masks = [mask for mask, _ in copy_records(h, 4)]
        assert len(masks) == len(set(masks))
        expected = {x for x in range(64) if is_copy_of(LabeledGraph(4, x), h)}
        assert set(masks) == expected


def test_copy_records_embedding_images():
    for mask, emb in copy_records(path_graph(3), 4):
        got = 0
        for u, v in emb.image_edges():
            got |= LabeledGraph.from_edge_list(4, [(u, v)]).edges
        assert got == mask


def test_verify_h_free_examples():
    res = verify_h_free(ALL_ONES_4, complete_graph(4))
    assert not res.h_free
    assert res.witness is not None and res.witness.vertex_map == (0, 1, 2, 3)
    assert verify_h_free(ALL_ONES_4, complete_graph(3)).h_free
    for n in (3, 4, 5):
        assert verify_h_free(ParityCheckMatrix(n, ((1 << num_pairs(n)) - 1,)), complete_graph(3)).h_free
    # Empty matrix: the kernel is everything, so any pattern that fits occurs.
    assert not verify_h_free(ParityCheckMatrix(4, ()), complete_graph(3)).h_free


def test_verify_h_free_rejects_oversized_pattern():
    with pytest.raises(ValueError):
        verify_h_free(ALL_ONES_4, complete_graph(5))


def test_greedy_family_small_examples():
    fam = greedy_vector_family(3, 2)
    assert fam.vectors == (1, 2, 3) and fam.t == 2
    fam = greedy_vector_family(1, 6)
    assert fam.vectors == (1,) and fam.t == 1


def test_greedy_family_meets_budget_and_independence():
    for r, s in [(7, 6), (10, 4), (24, 6), (5, 1), (20, 2)]:
        fam = greedy_vector_family(r, s)
        assert len(fam.vectors) == r
        budget = -(-(s + 1) // 2) * r.bit_length()
        assert fam.t <= budget, (r, s, fam.t, budget)
        check = verify_vector_family(fam)
        assert check.ok and check.mode == "exhaustive"


def test_verify_vector_family_finds_violations():
    bad = VectorFamily(3, 3, (1, 2, 3))  # 1^2^3 = 0
    check = verify_vector_family(bad)
    assert not check.ok and check.witness == (0, 1, 2)
    dup = VectorFamily(2, 2, (1, 1))
    assert not verify_vector_family(dup).ok
    zero = VectorFamily(2, 1, (0,))
    assert not verify_vector_family(zero).ok


def test_verify_vector_family_sampled_mode():
    # Make the subset space too large for exhaustion: r=80, s=6.
    fam = greedy_vector_family(80, 2)
    big = VectorFamily(fam.t, 6, fam.vectors)
    check = verify_vector_family(big, seed=0, exhaustive_limit=10**4, samples=2000)
    assert check.mode == "sampled"


def test_code_from_coloring_monochromatic():
    chi = monochromatic_coloring(4)
    fam = VectorFamily(3, 1, (0b101,))
    m = code_from_coloring(chi, fam)
    assert matrix_columns(m) == [0b101] * 6
    with pytest.raises(ValueError):
        code_from_coloring(rainbow_coloring(4), fam)  # 6 colors, 1 vector


def test_rainbow_code_is_k4_free():
    fam = greedy_vector_family(6, 6)
    m = code_from_coloring(rainbow_coloring(4), fam)
    assert verify_h_free(m, complete_graph(4)).h_free


def test_pipeline_small():
    chi = build_k4_coloring(8)
    fam = greedy_vector_family(chi.palette_size, 6)
    m = code_from_coloring(chi, fam)
    assert verify_h_free(m, complete_graph(4)).h_free
    summary = code_summary(m, complete_graph(4))
    assert summary.h_free and summary.density_log2 == kernel_dimension(m) - num_pairs(8)


def test_identity_family_round_trip():
    rng = random.Random(9)
    for n in (3, 4, 5, 6):
        width = num_pairs(n)
        for _ in range(20):
            t = rng.randint(0, 4)
            m = ParityCheckMatrix(n, tuple(rng.getrandbits(width) for _ in range(t)))
            chi = coloring_from_matrix(m)
            rebuilt = code_from_coloring(chi, identity_vector_family(m))
            assert rebuilt.rows == m.rows


def test_coloring_matrix_correspondence():
    # With an s >= e(h) independent family, the kernel contains a copy of h
    # exactly when the induced coloring admits an even-chromatic copy.
    rng = random.Random(17)
    patterns = [path_graph(3), complete_graph(3), cycle_graph(4), matching_graph(2)]
    for n in (4, 5):
        for _ in range(15):
            values = [rng.randrange(3) for _ in range(num_pairs(n))]
            chi = EdgeColoring.from_values(n, values)
            for h in patterns:
                fam = greedy_vector_family(chi.palette_size, max(1, h.num_edges))
                m = code_from_coloring(chi, fam)
                admits = admits_even_chromatic_copy(coloring_from_matrix(m), h)
                has_copy = not verify_h_free(m, h).h_free
                assert admits == has_copy, (n, h, chi.colors)


def test_kernel_closed_under_sum():
    rng = random.Random(23)
    chi = build_k4_coloring(8)
    fam = greedy_vector_family(chi.palette_size, 6)
    m = code_from_coloring(chi, fam)
    basis = gf2_nullspace_basis(m.rows, num_pairs(8))
    for _ in range(50):
        x = y = 0
        for b in basis:
            if rng.random() < 0.5:
                x ^= b
            if rng.random() < 0.5:
                y ^= b
        assert kernel_contains(m, x) and kernel_contains(m, y)
        assert kernel_contains(m, x ^ y)


def test_random_code_search():
    found = random_code_search(complete_graph(3), 5, 1, seed=0, attempts=50)
    assert found is not None
    assert verify_h_free(found, complete_graph(3)).h_free
    again = random_code_search(complete_graph(3), 5, 1, seed=0, attempts=50)
    assert again.rows == found.rows  # deterministic
    assert random_code_search(complete_graph(3), 5, 1, seed=0, attempts=0) is None


def test_complement_code_rejects_bad_n():
    for n in (6, 7, 10, 11):
        with pytest.raises(ValueError):
            complement_map_code(n)


def test_complement_code_involution_exhaustive():
    for n in (4, 5):
        code = complement_map_code(n)
        for x in range(1 << code.num_slots):
            assert code.phi(code.phi(x)) == x


def test_complement_code_involution_spot_checks():
    rng = random.Random(4)
    for n in (8, 9):
        code = complement_map_code(n)
        for _ in range(200):
            x = rng.getrandbits(code.num_slots)
            assert code.phi(code.phi(x)) == x


def test_complement_code_cardinality():
    assert complement_map_code(5).cardinality() == 176  # 1 + 10 + 45 + 120
    assert complement_map_code(4).cardinality() == 7  # 1 + 6
    code5 = complement_map_code(5)
    members = list(code5.members())
    assert len(members) == 176 and len(set(members)) == 176
    assert all(code5.contains(x) for x in members)
    outside = [x for x in range(1024) if not code5.contains(x)]
    assert len(outside) == 1024 - 176


def test_complement_code_odd_members_have_sparse_images():
    code = complement_map_code(5)
    bound = code.num_slots - 4
    for x in code.members():
        if x.bit_count() % 2 == 1:
            assert code.phi(x).bit_count() <= bound


def _is_triangle_mask(n, z):
    if z.bit_count() != 3:
        return False
    return is_copy_of(LabeledGraph(n, z), complete_graph(3))


def test_complement_code_difference_has_no_triangle():
    for n in (4, 5):
        code = complement_map_code(n)
        members = list(code.members())
        for i, x in enumerate(members):
            for y in members[i + 1 :]:
                assert not _is_triangle_mask(n, x ^ y)


def test_complement_code_random_pairs_no_triangle():
    rng = random.Random(0)
    for n in (8, 9):
        code = complement_map_code(n)
        for _ in range(20_000):
            x = code.sample_member(rng)
            y = code.sample_member(rng)
            z = x ^ y
            if z.bit_count() == 3:
                assert not _is_triangle_mask(n, z)


def test_code_summary_examples():
    s = code_summary(ParityCheckMatrix(4, ()), complete_graph(3))
    assert s.kernel_dim == 6 and s.density_log2 == 0 and not s.h_free
    s = code_summary(ALL_ONES_4, complete_graph(3))
    assert s.kernel_dim == 5 and s.density_log2 == -1 and s.h_free


def test_pm1_round_trip():
    m = ParityCheckMatrix(4, (0b101010, 0b000111))
    assert parse_pm1(format_pm1(m)) == m
    text = format_pm1(m)
    assert text.splitlines()[0] == "4 2"
    assert text.splitlines()[1] == "010101"  # column j = character j


def test_pm1_rejects_malformed():
    with pytest.raises(FormatError):
        parse_pm1("")
    with pytest.raises(FormatError, match="line 2"):
        parse_pm1("4 1\n01010\n")  # too short
    with pytest.raises(FormatError, match="0/1"):
        parse_pm1("4 1\n01012x\n")
    with pytest.raises(FormatError, match="expected 1 rows"):
        parse_pm1("4 1\n")
    with pytest.raises(FormatError, match="more than"):
        parse_pm1("4 1\n010101\n010101\n")
