"""Two-torsion of hyperelliptic curves as even branch subsets, the theta
parity on plane quintics, and the component classifier."""

import itertools

import pytest

from dp4.monodromy import (
    TwoTorsionClass,
    classify_component,
    enumerate_classes,
    orbit_sizes,
    torsion_orbit_label,
)
from dp4.plane_quintic import (
    is_principal,
    pencil_fixture,
    quadrilateral_fixture,
    theta_quadratic_form,
)


def test_canonical_representative_complement():
    cls = TwoTorsionClass(10, frozenset({1, 2, 3, 4, 5, 6}))
    assert cls.subset == frozenset({7, 8, 9, 10})
    assert torsion_orbit_label(cls) == 2


def test_canonical_half_size_contains_one():
    # at branch count 8 the half size is 4; a size-4 subset missing index 1
    # flips to its complement
    cls8 = TwoTorsionClass(8, frozenset({5, 6, 7, 8}))
    assert cls8.subset == frozenset({1, 2, 3, 4})


def test_zero_class():
    z = TwoTorsionClass(10, frozenset())
    assert z.is_zero()
    assert torsion_orbit_label(z) == 0
    full = TwoTorsionClass(10, frozenset(range(1, 11)))
    assert full.is_zero()


def test_odd_subset_rejected():
    with pytest.raises(ValueError):
        TwoTorsionClass(10, frozenset({1, 2, 3}))


def test_indices_out_of_range_rejected():
    with pytest.raises(ValueError):
        TwoTorsionClass(10, frozenset({0, 1}))
    with pytest.raises(ValueError):
        TwoTorsionClass(10, frozenset({10, 11}))


def test_orbit_label_examples():
    assert torsion_orbit_label(TwoTorsionClass(10, frozenset({1, 2}))) == 1
    assert torsion_orbit_label(TwoTorsionClass(10, frozenset({1, 2, 3, 4}))) == 2


def test_enumeration_counts():
    for g in range(1, 5):
        classes = enumerate_classes(g)
        assert len(classes) == 4**g


def test_group_law_exhaustive_small_genus():
    for g in (1, 2):
        classes = enumerate_classes(g)
        zero = TwoTorsionClass(2 * g + 2, frozenset())
        for a in classes:
            assert a.add(a).is_zero()
            assert a.add(zero) == a
        for a, b in itertools.product(classes[:8], repeat=2):
            assert a.add(b) == b.add(a)
        for a, b, c in itertools.product(classes[:4], repeat=3):
            assert a.add(b).add(c) == a.add(b.add(c))


def test_orbit_sizes_small_genus():
    assert orbit_sizes(1) == (1, 3)
    assert orbit_sizes(2) == (1, 15)
    assert orbit_sizes(4) == (1, 45, 210)
    assert sum(orbit_sizes(4)) == 256


def test_orbit_sizes_totals_up_to_genus_six():
    for g in range(1, 7):
        assert sum(orbit_sizes(g)) == 4**g


def test_orbit_sizes_match_enumeration():
    for g in (2, 3, 4):
        classes = enumerate_classes(g)
        counts = {}
        for cls in classes:
            counts[torsion_orbit_label(cls)] = counts.get(torsion_orbit_label(cls), 0) + 1
        sizes = orbit_sizes(g)
        assert counts == {n: s for n, s in enumerate(sizes)}


def test_relabel_preserves_orbit_label_exhaustive_g4():
    classes = enumerate_classes(4)
    # adjacent transpositions generate the full symmetric group on 10 points
    gens = []
    for k in range(1, 10):
        perm = {i: i for i in range(1, 11)}
        perm[k], perm[k + 1] = k + 1, k
        gens.append(perm)
    for cls in classes:
        n = torsion_orbit_label(cls)
        for perm in gens:
            assert torsion_orbit_label(cls.relabel(perm)) == n


def test_relabel_ten_cycle():
    cyc = {i: i % 10 + 1 for i in range(1, 11)}
    cls = TwoTorsionClass(10, frozenset({1, 2, 3, 10}))
    assert torsion_orbit_label(cls.relabel(cyc)) == 2


def test_classifier_table():
    assert classify_component(0, None) == "empty"
    assert classify_component(2, None) == "empty"
    assert classify_component(4, None) == "empty"
    assert classify_component(6, 3) == "empty"
    assert classify_component(8, 0) == "S5-only"
    assert classify_component(8, 1) == "W-component-A"
    assert classify_component(8, 2) == "W-component-B"
    assert classify_component(10, None) == "S5-only"
    assert classify_component(10, 0) == "W-component-A"
    assert classify_component(10, 1) == "W-component-B"
    assert classify_component(12, True) == "W-single"
    assert classify_component(12, False) == "S5-only"
    assert classify_component(20, True) == "W-single"


def test_classifier_accepts_torsion_classes():
    cls = TwoTorsionClass(10, frozenset({1, 2}))
    assert classify_component(8, cls) == "W-component-A"
    zero = TwoTorsionClass(10, frozenset())
    assert classify_component(8, zero) == "S5-only"
    t12 = TwoTorsionClass(18, frozenset({1, 2}))
    assert classify_component(12, t12) == "W-single"


def test_classifier_complement_stability():
    a = TwoTorsionClass(10, frozenset({1, 2, 3, 4}))
    b = TwoTorsionClass(10, frozenset(range(1, 11)) - frozenset({1, 2, 3, 4}))
    assert classify_component(8, a) == classify_component(8, b)


def test_classifier_rejects_bad_input():
    with pytest.raises(ValueError):
        classify_component(7, 0)
    with pytest.raises(ValueError):
        classify_component(-2, 0)
    with pytest.raises(ValueError):
        classify_component(8, 3)
    with pytest.raises(ValueError):
        classify_component(10, 2)


# ----------------------------------------------------------------------------
# theta parity on the two bundled quintic fixtures


def test_pencil_fixture_classes_have_parity_zero():
    fx = pencil_fixture()
    for i, j in ((0, 1), (0, 2), (1, 2)):
        plus, minus = fx.eta(i, j)
        assert theta_quadratic_form(fx.curve, plus, minus) == 0


def test_pencil_fixture_classes_are_two_torsion():
    fx = pencil_fixture()
    plus, minus = fx.eta(0, 1)
    # the class itself is nonzero ...
    assert not is_principal(fx.curve, plus, minus)
    # ... but its double is principal: div(L_0 / L_1)
    doubled_plus = [(p, 2 * m) for p, m in plus]
    doubled_minus = [(p, 2 * m) for p, m in minus]
    assert is_principal(fx.curve, doubled_plus, doubled_minus)


def test_trivial_class_has_parity_zero():
    fx = pencil_fixture()
    assert theta_quadratic_form(fx.curve, [], []) == 0
    plus, minus = fx.eta(0, 1)
    doubled_plus = [(p, 2 * m) for p, m in plus]
    doubled_minus = [(p, 2 * m) for p, m in minus]
    assert theta_quadratic_form(fx.curve, doubled_plus, doubled_minus) == 0


def test_quadrilateral_fixture_parity_one():
    fx = quadrilateral_fixture()
    plus, minus = fx.eta("12|34")
    assert theta_quadratic_form(fx.curve, plus, minus) == 1


def test_quadrilateral_presentations_agree():
    # the three opposite-vertex pairings present the same class; the parity
    # must not depend on the presentation
    fx = quadrilateral_fixture()
    values = set()
    for partition in ("12|34", "13|24", "14|23"):
        plus, minus = fx.eta(partition)
        values.add(theta_quadratic_form(fx.curve, plus, minus))
    assert values == {1}


def test_non_torsion_divisor_rejected():
    fx = pencil_fixture()
    (a1, b1), (a2, b2) = fx.pairs[0], fx.pairs[1]
    with pytest.raises(ValueError, match="not 2-torsion"):
        theta_quadratic_form(fx.curve, [(a1, 1), (b1, 1)], [(a2, 1), (fx.center, 1)])


def test_overlapping_support_rejected():
    fx = pencil_fixture()
    (a1, b1), _ = fx.pairs[0], fx.pairs[1]
    with pytest.raises(ValueError, match="overlapping support"):
        theta_quadratic_form(fx.curve, [(a1, 1), (b1, 1)], [(a1, 1), (b1, 1)])


def test_fixture_curves_are_smooth_and_contain_points():
    fp = pencil_fixture()
    assert fp.curve.is_smooth()
    assert fp.curve.contains(fp.center)
    for a, b in fp.pairs:
        assert fp.curve.contains(a) and fp.curve.contains(b)
    fq = quadrilateral_fixture()
    assert fq.curve.is_smooth()
    for p in fq.vertices.values():
        assert fq.curve.contains(p)
    for p in fq.tangents:
        assert fq.curve.contains(p)
