"""Pencils of quadrics on P^4: spectral quintic, degeneracy data, surface
classification, and the blow-up model.

A pencil is a pair of symmetric 5x5 rational matrices (P, Q); the base
surface is the intersection of the two quadrics.  The spectral quintic
det(uP + vQ) controls everything here: its roots are the singular members of
the pencil, multiplicities and coranks classify the surface, and a quintic
with rational roots can be rebuilt into a pencil by blowing up the plane
along five points of a conic (projection from a line identifies the surface
with that blow-up, and the identification is validated through the moduli
point of the spectral quintic).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .binforms import BinaryForm, pdeg, pdivmod, pmul, pscale, psub
from .factor_search import _wq_xgcd, uni_irreducible_factors
from .quintic import moduli_point, stability_classify


def _check_symmetric(m, name):
    if len(m) != 5 or any(len(row) != 5 for row in m):
        raise ValueError(f"{name} must be 5x5")
    for i in range(5):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError(f"{name} must be symmetric")


@dataclass(frozen=True)
class SymmetricPencil:
    """A pencil u*P + v*Q of quadrics on P^4."""

    P: tuple[tuple[Fraction, ...], ...]
    Q: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        p = tuple(tuple(Fraction(x) for x in row) for row in self.P)
        q = tuple(tuple(Fraction(x) for x in row) for row in self.Q)
        _check_symmetric(p, "P")
        _check_symmetric(q, "Q")
        object.__setattr__(self, "P", p)
        object.__setattr__(self, "Q", q)

    def member(self, u: Fraction, v: Fraction):
        return [
            [u * self.P[i][j] + v * self.Q[i][j] for j in range(5)] for i in range(5)
        ]


def spectral_quintic(pencil: SymmetricPencil) -> BinaryForm:
    """det(uP + vQ) as a binary quintic, by column-mixing expansion: the
    u^(5-k) v^k coefficient sums det over all ways to take k columns from Q."""
    coeffs = [Fraction(0)] * 6
    for k in range(6):
        for cols in combinations(range(5), k):
            chosen = set(cols)
            m = [
                [
                    (pencil.Q[i][j] if j in chosen else pencil.P[i][j])
                    for j in range(5)
                ]
                for i in range(5)
            ]
            coeffs[k] += linalg.det(m)
    f = BinaryForm(5, tuple(coeffs))
    if f.is_zero:
        raise ValueError("degenerate pencil")
    return f


def irreducible_profile(f: BinaryForm):
    """Factorization into rational irreducibles with multiplicities,
    deterministic order (multiplicity, degree, coefficients)."""
    from .binforms import squarefree_profile

    out = []
    for factor, mult in squarefree_profile(f):
        if factor.y_valuation() >= 1:
            out.append((factor, mult))
            continue
        for p, _ in uni_irreducible_factors(list(factor.x_poly())):
            out.append((BinaryForm.from_x_poly(p, pdeg(p)), mult))
    out.sort(key=lambda fm: (fm[1], fm[0].degree, fm[0].coeffs))
    return out


class _QuotientField:
    """Arithmetic in Q[w]/(phi) for irreducible phi, elements as unipolys."""

    def __init__(self, phi):
        self.phi = list(phi)

    def reduce(self, p):
        return pdivmod(list(p), self.phi)[1]

    def add(self, a, b):
        from .binforms import padd

        return self.reduce(padd(a, b))

    def mul(self, a, b):
        return self.reduce(pmul(a, b))

    def neg(self, a):
        return pscale(a, -1)

    def inv(self, a):
        g, s, _ = _wq_xgcd(a, self.phi)
        if pdeg(g) != 0:
            raise ZeroDivisionError("not invertible in the quotient field")
        return self.reduce(pscale(s, 1 / g[0]))

    def is_zero(self, a):
        return not a


@dataclass(frozen=True)
class ProfileRecord:
    factor: BinaryForm
    multiplicity: int
    corank: int


def degeneracy_profile(pencil: SymmetricPencil) -> list[ProfileRecord]:
    """Per irreducible factor of the spectral quintic: its multiplicity and
    the corank of the member quadric at a root of that factor, computed over
    the factor's residue field."""
    f = spectral_quintic(pencil)
    records = []
    for factor, mult in irreducible_profile(f):
        if factor.y_valuation() >= 1:
            # root (1:0): member is P itself
            m = [[Fraction(x) for x in row] for row in pencil.P]
            corank = 5 - linalg.rank(m)
        else:
            phi = list(factor.x_poly())
            field = _QuotientField(phi)
            w = field.reduce([Fraction(0), Fraction(1)])
            m = [
                [
                    field.add(
                        field.mul(w, [Fraction(pencil.P[i][j])]),
                        [Fraction(pencil.Q[i][j])],
                    )
                    for j in range(5)
                ]
                for i in range(5)
            ]
            corank = 5 - linalg.rank_over_field(m, field)
        if corank < 1:
            raise RuntimeError("root of the spectral quintic with full rank")
        records.append(ProfileRecord(factor, mult, corank))
    return records


@dataclass(frozen=True)
class SurfaceLabel:
    label: str
    profile: tuple[ProfileRecord, ...]


def classify_surface(pencil: SymmetricPencil) -> SurfaceLabel:
    """smooth / one-A1 / boundary-U / outside-U from the degeneracy profile.

    one-A1 means exactly one rational double root with corank 1 and simple
    roots elsewhere.  All other multiplicity-2 patterns (conjugate double
    roots, corank 2, two doubles) are surfaced as boundary-U with raw data.
    """
    profile = tuple(degeneracy_profile(pencil))
    if any(rec.multiplicity >= 3 for rec in profile):
        return SurfaceLabel("outside-U", profile)
    doubles = [rec for rec in profile if rec.multiplicity == 2]
    if not doubles:
        for rec in profile:
            if rec.corank != 1:
                raise RuntimeError("simple root with corank > 1")
        return SurfaceLabel("smooth", profile)
    if (
        len(doubles) == 1
        and doubles[0].factor.degree == 1
        and doubles[0].corank == 1
    ):
        return SurfaceLabel("one-A1", profile)
    return SurfaceLabel("boundary-U", profile)


# ---------------------------------------------------------------------------
# blow-up model: five points on a conic in the plane


_CUBIC_MONOMIALS = [
    (a, b, 3 - a - b) for a in range(4) for b in range(4 - a)
]
_SEXTIC_MONOMIALS = [
    (a, b, 6 - a - b) for a in range(7) for b in range(7 - a)
]


def _eval_monomial_row(rho: Fraction, monomials):
    """Row of monomial values at the conic point (rho^2, rho, 1)."""
    return [rho ** (2 * a + b) for a, b, _ in monomials]


def _derivative_row(rho: Fraction, monomials):
    """d/drho of each monomial along the conic parameterization."""
    return [
        (2 * a + b) * rho ** (2 * a + b - 1) if 2 * a + b else Fraction(0)
        for a, b, _ in monomials
    ]


@dataclass(frozen=True)
class BlowupModel:
    parameters: tuple[Fraction, ...]
    points: tuple[tuple[Fraction, Fraction, Fraction], ...]
    cubic_basis: tuple[tuple[Fraction, ...], ...]
    pencil: SymmetricPencil


def blowup_from_quintic(parameters) -> tuple[BlowupModel, SymmetricPencil]:
    """Blow up the plane along the length-5 subscheme cut on the conic
    x0*x2 = x1^2 by parameters r_1..r_5; the anticanonical cubics through the
    subscheme map the plane to P^4, and the two quadric relations among them
    present the image as a pencil of quadrics.

    A repeated parameter contributes its point with a first-order condition
    along the conic; three equal parameters are rejected.
    """
    rs = tuple(Fraction(r) for r in parameters)
    if len(rs) != 5:
        raise ValueError("five parameters required")
    mults: dict[Fraction, int] = {}
    for r in rs:
        mults[r] = mults.get(r, 0) + 1
    if any(m >= 3 for m in mults.values()):
        raise ValueError("unstable configuration")

    rows = []
    for rho in sorted(mults):
        rows.append(_eval_monomial_row(rho, _CUBIC_MONOMIALS))
        if mults[rho] == 2:
            rows.append(_derivative_row(rho, _CUBIC_MONOMIALS))
    cubics = linalg.kernel_basis(rows)
    if len(cubics) != 5:
        raise RuntimeError("cubic system dimension != 5")

    products = {}
    pairs = [(i, j) for i in range(5) for j in range(i, 5)]
    for i, j in pairs:
        coeffs = {}
        for (a1, b1, c1), x in zip(_CUBIC_MONOMIALS, cubics[i]):
            if not x:
                continue
            for (a2, b2, c2), y in zip(_CUBIC_MONOMIALS, cubics[j]):
                if not y:
                    continue
                key = (a1 + a2, b1 + b2, c1 + c2)
                coeffs[key] = coeffs.get(key, Fraction(0)) + x * y
        products[(i, j)] = coeffs
    relation_matrix = [
        [products[pair].get(mono, Fraction(0)) for pair in pairs]
        for mono in _SEXTIC_MONOMIALS
    ]
    relations = linalg.kernel_basis(relation_matrix)
    if len(relations) != 2:
        raise RuntimeError("quadric relation dimension != 2")

    grams = []
    for rel in relations:
        g = [[Fraction(0)] * 5 for _ in range(5)]
        for (i, j), q in zip(pairs, rel):
            if i == j:
                g[i][i] = q
            else:
                g[i][j] = g[j][i] = q / 2
        grams.append(tuple(tuple(row) for row in g))
    pencil = SymmetricPencil(grams[0], grams[1])
    points = tuple((r * r, r, Fraction(1)) for r in rs)
    model = BlowupModel(rs, points, tuple(tuple(c) for c in cubics), pencil)
    return model, pencil


def roundtrip_check(f: BinaryForm) -> bool:
    """Whether the blow-up built from the rational roots of f has a spectral
    quintic with the same moduli point as f."""
    if f.degree != 5:
        raise ValueError("roundtrip needs a quintic")
    if stability_classify(f) == "unstable":
        raise ValueError("not in U")
    if f.y_valuation() >= 1:
        raise ValueError("roundtrip needs five affine rational roots")
    roots = []
    for factor, mult in irreducible_profile(f):
        if factor.degree != 1 or factor.y_valuation() >= 1:
            raise ValueError("quintic does not split over the rationals")
        # monic x - rho*y has coefficients (1, -rho)
        rho = -factor.coeffs[1] / factor.coeffs[0]
        roots.extend([rho] * mult)
    _, pencil = blowup_from_quintic(roots)
    return moduli_point(spectral_quintic(pencil)) == moduli_point(f)
