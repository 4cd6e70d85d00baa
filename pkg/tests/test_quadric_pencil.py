"""Pencils of quadrics in five variables: spectral quintic, degeneracy
profile, surface classification, and the conic blow-up round trip."""

import random
from fractions import Fraction

import pytest

from dp4.binforms import BinaryForm, mobius_substitute
from dp4.linalg import identity, mat_mul, transpose
from dp4.pencils import (
    SymmetricPencil,
    blowup_from_quintic,
    classify_surface,
    degeneracy_profile,
    roundtrip_check,
    spectral_quintic,
)
from dp4.quintic import moduli_point

F = Fraction


def diag(values):
    return tuple(
        tuple(F(values[i]) if i == j else F(0) for j in range(5)) for i in range(5)
    )


def random_symmetric(rng):
    m = [[F(0)] * 5 for _ in range(5)]
    for i in range(5):
        for j in range(i, 5):
            m[i][j] = m[j][i] = F(rng.randint(-6, 6))
    return tuple(tuple(row) for row in m)


def test_spectral_quintic_diagonal():
    pencil = SymmetricPencil(diag([1] * 5), diag([0, 1, 2, 3, 4]))
    f = spectral_quintic(pencil)
    expect = BinaryForm.constant(1)
    for k in range(5):
        expect = expect * BinaryForm(1, (F(1), F(k)))
    assert f == expect


def test_spectral_quintic_equal_members():
    pencil = SymmetricPencil(diag([1] * 5), diag([1] * 5))
    f = spectral_quintic(pencil)
    expect = BinaryForm(1, (F(1), F(1))).power(5)
    assert f == expect


def test_spectral_quintic_evaluation_oracle():
    from dp4.linalg import det

    rng = random.Random(301)
    for _ in range(3):
        P = random_symmetric(rng)
        Q = random_symmetric(rng)
        try:
            pencil = SymmetricPencil(P, Q)
            f = spectral_quintic(pencil)
        except ValueError:
            continue
        for _ in range(12):
            u0, v0 = F(rng.randint(-6, 6)), F(rng.randint(-6, 6))
            member = [
                [u0 * P[i][j] + v0 * Q[i][j] for j in range(5)] for i in range(5)
            ]
            assert f.evaluate(u0, v0) == det(member)


def test_spectral_quintic_congruence_covariance():
    rng = random.Random(302)
    P = diag([1, 2, 3, 4, 5])
    Q = random_symmetric(rng)
    pencil = SymmetricPencil(P, Q)
    f = spectral_quintic(pencil)
    g = [[F(rng.randint(-3, 3)) for _ in range(5)] for _ in range(5)]
    from dp4.linalg import det

    dg = det([row[:] for row in g])
    if dg == 0:
        g[0][0] += 7
        dg = det([row[:] for row in g])
    gP = mat_mul(mat_mul(g, [list(r) for r in P]), transpose(g))
    gQ = mat_mul(mat_mul(g, [list(r) for r in Q]), transpose(g))
    pencil2 = SymmetricPencil(
        tuple(tuple(r) for r in gP), tuple(tuple(r) for r in gQ)
    )
    assert spectral_quintic(pencil2) == f.scale(dg * dg)


def test_spectral_quintic_basis_change_is_mobius():
    rng = random.Random(303)
    P = diag([1, 2, 3, 4, 5])
    Q = random_symmetric(rng)
    f = spectral_quintic(SymmetricPencil(P, Q))
    # (u, v) -> (a u + b v, c u + d v) replaces the pencil members
    a, b, c, d = 2, 1, 1, 1
    P2 = tuple(
        tuple(a * P[i][j] + c * Q[i][j] for j in range(5)) for i in range(5)
    )
    Q2 = tuple(
        tuple(b * P[i][j] + d * Q[i][j] for j in range(5)) for i in range(5)
    )
    f2 = spectral_quintic(SymmetricPencil(P2, Q2))
    assert f2 == mobius_substitute(f, ((a, b), (c, d)))
    prof1 = sorted((m, r.corank) for r in degeneracy_profile(SymmetricPencil(P, Q)) for m in [r.multiplicity])
    prof2 = sorted((m, r.corank) for r in degeneracy_profile(SymmetricPencil(P2, Q2)) for m in [r.multiplicity])
    assert prof1 == prof2


def test_degenerate_pencil_rejected():
    zero = diag([0] * 5)
    with pytest.raises(ValueError, match="degenerate"):
        spectral_quintic(SymmetricPencil(zero, zero))


def test_asymmetric_matrix_rejected():
    bad = [[F(0)] * 5 for _ in range(5)]
    bad[0][1] = F(1)
    with pytest.raises(ValueError):
        SymmetricPencil(tuple(tuple(r) for r in bad), diag([1] * 5))


def test_profile_distinct_diagonal():
    pencil = SymmetricPencil(diag([1] * 5), diag([0, 1, 2, 3, 4]))
    prof = degeneracy_profile(pencil)
    assert len(prof) == 5
    assert all(r.multiplicity == 1 and r.corank == 1 for r in prof)


def test_profile_double_eigenvalue():
    pencil = SymmetricPencil(diag([1] * 5), diag([0, 0, 1, 2, 3]))
    prof = degeneracy_profile(pencil)
    key = sorted((r.multiplicity, r.corank) for r in prof)
    assert key == [(1, 1), (1, 1), (1, 1), (2, 2)]


def test_profile_total_multiplicity_five():
    rng = random.Random(304)
    count = 0
    while count < 5:
        P = random_symmetric(rng)
        Q = random_symmetric(rng)
        try:
            pencil = SymmetricPencil(P, Q)
            prof = degeneracy_profile(pencil)
        except ValueError:
            continue
        count += 1
        assert sum(r.multiplicity * r.factor.degree for r in prof) == 5
        assert all(r.corank >= 1 for r in prof)


def test_classify_smooth():
    pencil = SymmetricPencil(diag([1] * 5), diag([0, 1, 2, 3, 4]))
    assert classify_surface(pencil).label == "smooth"


def test_classify_corank2_double_is_boundary():
    pencil = SymmetricPencil(diag([1] * 5), diag([0, 0, 1, 2, 3]))
    assert classify_surface(pencil).label == "boundary-U"


def test_classify_outside_u():
    pencil = SymmetricPencil(diag([1] * 5), diag([0, 0, 0, 1, 2]))
    assert classify_surface(pencil).label == "outside-U"


def test_blowup_split_quintic_moduli_roundtrip():
    _, pencil = blowup_from_quintic([0, -1, -2, -3, -4])
    f = spectral_quintic(pencil)
    g = BinaryForm.from_roots([0, -1, -2, -3, -4])
    assert moduli_point(f) == moduli_point(g)


def test_blowup_coincidence_gives_one_a1():
    _, pencil = blowup_from_quintic([0, 0, 1, 2, 3])
    assert classify_surface(pencil).label == "one-A1"


def test_blowup_unstable_rejected():
    with pytest.raises(ValueError, match="unstable"):
        blowup_from_quintic([1, 1, 1, 2, 3])


def test_blowup_model_dimensions():
    rng = random.Random(305)
    for _ in range(5):
        rs = rng.sample(range(-10, 11), 5)
        model, pencil = blowup_from_quintic(rs)
        assert len(model.cubic_basis) == 5
        assert len(model.points) == 5
        for (x, y, z), r in zip(model.points, model.parameters):
            assert (x, y, z) == (r * r, r, 1)
        # pencil is a valid symmetric pencil with nonzero spectral form
        assert not spectral_quintic(pencil).is_zero


def test_roundtrip_simple_and_double():
    assert roundtrip_check(BinaryForm.from_roots([0, 1, 2, 3, 4]))
    assert roundtrip_check(BinaryForm.from_roots([0, 0, 1, 2, 3]))


def test_roundtrip_random_split_quintics():
    rng = random.Random(306)
    for _ in range(10):
        roots = rng.sample(range(-9, 10), 5)
        f = BinaryForm.from_roots(roots, scale=rng.choice((1, 2, -3)))
        assert roundtrip_check(f)


def test_roundtrip_rejects_irrational():
    # x^5 - 2 y^5 does not split over the rationals
    f = BinaryForm(5, (F(1), 0, 0, 0, 0, F(-2)))
    with pytest.raises(ValueError):
        roundtrip_check(f)
