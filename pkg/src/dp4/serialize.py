"""JSON encoding and decoding for the exact types.

Rationals travel as strings "p/q" (or "p" when q = 1) so nothing is ever
rounded.  Encoders produce plain dict/list trees ready for json.dumps with
sort_keys; decoders validate shape and raise ValueError on malformed input.
"""

from __future__ import annotations

from fractions import Fraction

from .biforms import BiForm
from .binforms import BinaryForm


def encode_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def decode_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"expected rational string, got {type(s).__name__}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {s!r}") from exc


def encode_form(f: BinaryForm) -> dict:
    return {"degree": f.degree, "coeffs": [encode_rational(c) for c in f.coeffs]}


def decode_form(d) -> BinaryForm:
    if not isinstance(d, dict) or "degree" not in d or "coeffs" not in d:
        raise ValueError("binary form needs 'degree' and 'coeffs'")
    degree = d["degree"]
    coeffs = [decode_rational(c) for c in d["coeffs"]]
    if len(coeffs) != degree + 1:
        raise ValueError(f"degree {degree} form needs {degree + 1} coefficients")
    return BinaryForm(degree, tuple(coeffs))


def encode_biform(f: BiForm) -> dict:
    return {
        "bidegree": [f.m, f.n],
        "grid": [[encode_rational(c) for c in row] for row in f.grid],
    }


def decode_biform(d) -> BiForm:
    if not isinstance(d, dict) or "bidegree" not in d or "grid" not in d:
        raise ValueError("biform needs 'bidegree' and 'grid'")
    m, n = d["bidegree"]
    grid = [[decode_rational(c) for c in row] for row in d["grid"]]
    if len(grid) != m + 1 or any(len(row) != n + 1 for row in grid):
        raise ValueError(f"bidegree ({m},{n}) grid must be {m + 1}x{n + 1}")
    return BiForm(m, n, tuple(tuple(row) for row in grid))


def encode_matrix(m) -> list:
    return [[encode_rational(c) for c in row] for row in m]


def decode_matrix(d) -> list[list[Fraction]]:
    if not isinstance(d, list) or not d:
        raise ValueError("matrix must be a nonempty list of rows")
    rows = [[decode_rational(c) for c in row] for row in d]
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("matrix rows must share a length")
    return rows


def encode_pencil(pencil) -> dict:
    return {
        "type": "pencil",
        "P": encode_matrix(pencil.P),
        "Q": encode_matrix(pencil.Q),
    }


def decode_pencil(d):
    from .pencils import SymmetricPencil

    if not isinstance(d, dict) or "P" not in d or "Q" not in d:
        raise ValueError("pencil needs 'P' and 'Q' matrices")
    p = decode_matrix(d["P"])
    q = decode_matrix(d["Q"])
    try:
        return SymmetricPencil(tuple(map(tuple, p)), tuple(map(tuple, q)))
    except ValueError as exc:
        raise ValueError(f"malformed pencil: {exc}") from exc


def encode_family(spec) -> dict:
    return {
        "type": "family",
        "d": list(spec.d),
        "e": list(spec.e),
        "A1": [[encode_form(x) for x in row] for row in spec.A1],
        "A2": [[encode_form(x) for x in row] for row in spec.A2],
    }


def decode_family(d):
    from .families import FamilySpec

    if not isinstance(d, dict) or not {"d", "e", "A1", "A2"} <= set(d):
        raise ValueError("family needs 'd', 'e', 'A1', 'A2'")
    try:
        mats = [
            tuple(tuple(decode_form(x) for x in row) for row in d[key])
            for key in ("A1", "A2")
        ]
        return FamilySpec(
            tuple(int(x) for x in d["d"]),
            tuple(int(x) for x in d["e"]),
            mats[0],
            mats[1],
        )
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed family: {exc}") from exc


def encode_conic(spec) -> dict:
    return {
        "type": "conic-bundle",
        "entries": [[encode_biform(x) for x in row] for row in spec.entries],
    }


def decode_conic(d):
    from .models import ConicBundleSpec

    if not isinstance(d, dict) or "entries" not in d:
        raise ValueError("conic bundle needs 'entries'")
    try:
        entries = tuple(
            tuple(decode_biform(x) for x in row) for row in d["entries"]
        )
        return ConicBundleSpec(entries)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed conic bundle: {exc}") from exc


def encode_curve(curve) -> dict:
    """Plane quintic against the monomial order of monomials(5)."""
    return {
        "type": "plane-quintic",
        "degree": 5,
        "coeffs": [encode_rational(c) for c in curve.coeffs],
    }


def decode_curve(d):
    from .plane_quintic import PlaneQuintic

    if not isinstance(d, dict) or "coeffs" not in d:
        raise ValueError("plane quintic needs 'coeffs'")
    if d.get("degree", 5) != 5:
        raise ValueError("only degree-5 plane curves are supported")
    coeffs = [decode_rational(c) for c in d["coeffs"]]
    if len(coeffs) != 21:
        raise ValueError("plane quintic needs 21 coefficients")
    return PlaneQuintic(tuple(coeffs))


def encode_divisor(div) -> list:
    return [
        {"point": [encode_rational(c) for c in point], "mult": int(mult)}
        for point, mult in div
    ]


def decode_divisor(x) -> list:
    if not isinstance(x, list):
        raise ValueError("divisor must be a list of {point, mult} items")
    out = []
    for item in x:
        if not isinstance(item, dict) or "point" not in item:
            raise ValueError("divisor item needs a 'point'")
        point = tuple(decode_rational(c) for c in item["point"])
        if len(point) != 3 or all(c == 0 for c in point):
            raise ValueError("divisor points are nonzero projective triples")
        mult = item.get("mult", 1)
        if not isinstance(mult, int) or mult < 1:
            raise ValueError("divisor multiplicities are positive integers")
        out.append((point, mult))
    return out


def dumps_canonical(tree) -> str:
    """Stable JSON text: sorted keys, two-space indent, trailing newline."""
    import json

    return json.dumps(tree, sort_keys=True, indent=2) + "\n"
