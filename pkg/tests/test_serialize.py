"""JSON codecs: rationals as strings, forms, matrices, pencils, families,
conic bundles, plane curves, divisors, canonical rendering."""

import json
import random
from fractions import Fraction

import pytest

from dp4.biforms import BiForm
from dp4.binforms import BinaryForm
from dp4.models import build_example, random_conic_bundle
from dp4.pencils import SymmetricPencil
from dp4.plane_quintic import pencil_fixture
from dp4.serialize import (
    decode_biform,
    decode_conic,
    decode_curve,
    decode_divisor,
    decode_family,
    decode_form,
    decode_matrix,
    decode_pencil,
    decode_rational,
    dumps_canonical,
    encode_biform,
    encode_conic,
    encode_curve,
    encode_divisor,
    encode_family,
    encode_form,
    encode_matrix,
    encode_pencil,
    encode_rational,
)

F = Fraction


def test_rational_roundtrip():
    for x in (F(0), F(5), F(-7, 3), F(22, 7)):
        assert decode_rational(encode_rational(x)) == x
    assert encode_rational(F(1, 2)) == "1/2"
    assert encode_rational(F(3)) == "3"
    assert decode_rational("4") == F(4)


def test_rational_decode_rejects_garbage():
    with pytest.raises(ValueError):
        decode_rational("one half")


def test_form_roundtrip():
    rng = random.Random(501)
    for _ in range(10):
        d = rng.randint(0, 6)
        f = BinaryForm(d, tuple(F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(d + 1)))
        assert decode_form(encode_form(f)) == f


def test_biform_roundtrip():
    rng = random.Random(502)
    for _ in range(10):
        m, n = rng.randint(0, 3), rng.randint(0, 3)
        grid = tuple(
            tuple(F(rng.randint(-9, 9)) for _ in range(n + 1)) for _ in range(m + 1)
        )
        f = BiForm(m, n, grid)
        assert decode_biform(encode_biform(f)) == f


def test_matrix_roundtrip():
    rng = random.Random(503)
    m = [[F(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(5)] for _ in range(5)]
    out = decode_matrix(encode_matrix(m))
    assert out == m


def test_pencil_roundtrip():
    grams = (
        tuple(tuple(F(1) if i == j else F(0) for j in range(5)) for i in range(5)),
        tuple(tuple(F(i) if i == j else F(0) for j in range(5)) for i in range(5)),
    )
    pencil = SymmetricPencil(*grams)
    tree = encode_pencil(pencil)
    assert tree["type"] == "pencil"
    back = decode_pencil(tree)
    assert back.P == pencil.P and back.Q == pencil.Q


def test_pencil_decode_rejects_malformed():
    with pytest.raises(ValueError, match="pencil needs"):
        decode_pencil({"type": "pencil", "P": [["1"]]})
    bad5 = [["1"] * 5 for _ in range(5)]
    bad5[0][1] = "2"  # asymmetric
    good5 = [["1" if i == j else "0" for j in range(5)] for i in range(5)]
    with pytest.raises(ValueError, match="malformed pencil"):
        decode_pencil({"type": "pencil", "P": bad5, "Q": good5})


def test_family_roundtrip():
    spec = build_example("h10_ci", seed=1)
    tree = encode_family(spec)
    assert tree["type"] == "family"
    back = decode_family(tree)
    assert back == spec


def test_family_roundtrip_h8():
    spec = build_example("h8_ci", seed=1)
    back = decode_family(encode_family(spec))
    assert back == spec


def test_conic_roundtrip():
    spec = random_conic_bundle(77)
    tree = encode_conic(spec)
    assert tree["type"] == "conic-bundle"
    back = decode_conic(tree)
    assert back == spec


def test_curve_roundtrip():
    fx = pencil_fixture()
    tree = encode_curve(fx.curve)
    assert tree["type"] == "plane-quintic"
    assert tree["degree"] == 5
    assert len(tree["coeffs"]) == 21
    back = decode_curve(tree)
    assert back == fx.curve


def test_divisor_roundtrip():
    div = [((F(1), F(2), F(3)), 1), ((F(0), F(1), F(-1)), 2)]
    tree = encode_divisor(div)
    back = decode_divisor(tree)
    assert back == [((F(1), F(2), F(3)), 1), ((F(0), F(1), F(-1)), 2)]


def test_divisor_rejects_zero_point():
    with pytest.raises(ValueError):
        decode_divisor([{"point": ["0", "0", "0"], "mult": 1}])


def test_divisor_rejects_bad_multiplicity():
    with pytest.raises(ValueError):
        decode_divisor([{"point": ["1", "0", "0"], "mult": 0}])


def test_dumps_canonical_stable():
    tree = {"b": [1, 2], "a": {"y": "2", "x": "1"}}
    s1 = dumps_canonical(tree)
    s2 = dumps_canonical({"a": {"x": "1", "y": "2"}, "b": [1, 2]})
    assert s1 == s2
    assert s1.endswith("\n")
    assert json.loads(s1) == tree


def test_dumps_canonical_sorted_keys():
    s = dumps_canonical({"z": 1, "a": 2})
    assert s.index('"a"') < s.index('"z"')
