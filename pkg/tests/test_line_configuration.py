"""The 16 exceptional classes in the rank-6 lattice, their incidence graph,
the five pair partitions, and the signed-permutation symmetry group."""

import json

from dp4.lines import (
    SignedPermutation,
    lines16,
    load_golden,
    no_intermediate_subgroup,
    pairing,
    partitions5,
    report,
    spectrum_charpoly,
    triangle_free,
    weyl_group,
)

ANTICANONICAL = (3, 1, 1, 1, 1, 1)


def test_sixteen_classes():
    cfg = lines16()
    assert len(cfg.classes) == 16


def test_classes_are_lines():
    cfg = lines16()
    for c in cfg.classes:
        assert pairing(c, c) == -1
        assert pairing(c, ANTICANONICAL) == 1


def test_incidence_five_regular():
    cfg = lines16()
    for i in range(16):
        assert cfg.incidence[i][i] == 0
        assert sum(cfg.incidence[i]) == 5
    for i in range(16):
        for j in range(16):
            assert cfg.incidence[i][j] == cfg.incidence[j][i]
            assert cfg.incidence[i][j] in (0, 1)


def test_sum_of_lines_is_minus_four_canonical():
    cfg = lines16()
    total = [sum(c[k] for c in cfg.classes) for k in range(6)]
    assert total == [4 * x for x in ANTICANONICAL]


def test_exactly_five_partitions():
    parts = partitions5()
    assert len(parts) == 5


def test_partitions_cover_all_lines():
    for side_a, side_b in partitions5():
        assert len(side_a) == 8 and len(side_b) == 8
        assert side_a | side_b == frozenset(range(16))
        assert not side_a & side_b


def test_partition_sides_decompose_into_pairs():
    cfg = lines16()
    for side_a, side_b in partitions5():
        for side in (side_a, side_b):
            # greedy matching must succeed: each line pairs with exactly one
            # incident line inside its side
            used = set()
            for v in sorted(side):
                if v in used:
                    continue
                partners = [
                    w for w in side if w not in used and w != v and cfg.incidence[v][w]
                ]
                assert partners, f"line {v} unmatched"
                used.add(v)
                used.add(partners[0])
            assert used == set(side)


def test_group_order_1920():
    group = weyl_group()
    assert group.order == 1920


def test_kernel_order_and_free_transitivity():
    group = weyl_group()
    kernel = group.kernel()
    assert len(kernel) == 16
    images = {e.line_perm[0] for e in kernel}
    assert len(images) == 16
    for e in kernel:
        if e.line_perm != tuple(range(16)):
            assert all(e.line_perm[v] != v for v in range(16))


def test_quotient_is_s5():
    group = weyl_group()
    perms = {e.signed.perm for e in group.elements}
    assert len(perms) == 120
    assert group.order // len(group.kernel()) == 120


def test_signed_permutations_have_even_sign_count():
    group = weyl_group()
    for e in group.elements:
        assert sum(1 for s in e.signed.signs if s == -1) % 2 == 0


def test_signed_permutation_compose():
    a = SignedPermutation((1, 0, 2, 3, 4), (-1, -1, 1, 1, 1))
    ident = SignedPermutation.identity()
    assert a.compose(ident) == a
    assert ident.compose(a) == a
    sq = a.compose(a)
    assert sq.perm == (0, 1, 2, 3, 4)


def test_no_intermediate_subgroup():
    assert no_intermediate_subgroup() is True


def test_index_copy_is_s5_order():
    group = weyl_group()
    assert len(group.index_copy()) == 120


def test_report_matches_golden():
    rep = report()
    golden = load_golden()
    assert rep == golden


def test_golden_file_is_canonical_json(tmp_path):
    golden = load_golden()
    assert golden["group_order"] == 1920
    assert golden["kernel_order"] == 16
    assert golden["line_degrees"] == [5] * 16
    assert golden["no_intermediate_subgroup"] is True


def test_spectrum_and_triangles_frozen():
    cp = spectrum_charpoly()
    assert len(cp) == 17
    assert triangle_free() in (True, False)
    golden = load_golden()
    assert golden["charpoly"] == cp
    assert golden["triangle_free"] == triangle_free()
