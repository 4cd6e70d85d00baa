"""One-parameter families of quartic Del Pezzo surfaces over the line.

A family is a pair of symmetric 5x5 matrices of (s,t)-forms twisted by
splitting degrees: d_1..d_5 for the rank-5 side, (e_1, e_2) for the pencil
side, with entry (i,j) of A_k homogeneous of degree d_i + d_j - e_k.  The
height is h = -2*sum(d), and sum(d) = e_1 + e_2 is enforced (both sides
compute the same pushforward degree).

The spectral form det(u*A1 + v*A2) is a quintic in (u,v) whose (s,t)
coefficient degrees vary linearly with the (u,v)-power, so it gets a
dedicated type rather than a BiForm.  Its (u,v)-discriminant has degree
exactly 2h whenever nonzero (every term of the determinant expansion has the
same isobaric weight), squarefreeness is the simple-branching flag, and a
bounded factor search plus a fiber irreducibility witness certify the full
Galois-group condition.  The Chern-class identity for the cube of the
relative dualizing sheaf is verified symbolically in a tiny Chow ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import sympy

from . import linalg
from .binforms import BinaryForm, squarefree_profile
from .biforms import BiForm
from .factor_search import twisted_factor_search, uni_irreducible_factors

_FORM_RING = {
    "add": lambda a, b: a + b,
    "mul": lambda a, b: a * b,
    "neg": lambda a: -a,
    "zero": BinaryForm.zero(0),
    "is_zero": lambda a: a.is_zero,
}


def _det_forms(matrix) -> BinaryForm:
    return linalg.det_minors(
        matrix,
        add=_FORM_RING["add"],
        mul=_FORM_RING["mul"],
        neg=_FORM_RING["neg"],
        zero=_FORM_RING["zero"],
        is_zero=_FORM_RING["is_zero"],
    )


@dataclass(frozen=True)
class FamilySpec:
    """Splitting degrees plus the two twisted symmetric matrices."""

    d: tuple[int, ...]
    e: tuple[int, int]
    A1: tuple[tuple[BinaryForm, ...], ...]
    A2: tuple[tuple[BinaryForm, ...], ...]

    def __post_init__(self):
        if len(self.d) != 5 or len(self.e) != 2:
            raise ValueError("need 5 degrees d and 2 degrees e")
        if sum(self.d) != self.e[0] + self.e[1]:
            raise ValueError(
                "splitting degrees must satisfy sum(d) = e1 + e2 "
                "(the two pushforwards have equal degree)"
            )
        for k, a in ((0, self.A1), (1, self.A2)):
            if len(a) != 5 or any(len(row) != 5 for row in a):
                raise ValueError("matrices must be 5x5")
            for i in range(5):
                for j in range(5):
                    if a[i][j].coeffs != a[j][i].coeffs:
                        raise ValueError("matrices must be symmetric")
                    expected = self.d[i] + self.d[j] - self.e[k]
                    entry = a[i][j]
                    if expected < 0 and not entry.is_zero:
                        raise ValueError(
                            f"entry ({i},{j}) of A{k + 1} must vanish "
                            f"(degree {expected} < 0)"
                        )
                    if not entry.is_zero and entry.degree != expected:
                        raise ValueError(
                            f"entry ({i},{j}) of A{k + 1} has degree "
                            f"{entry.degree}, expected {expected}"
                        )

    def matrix(self, k: int):
        return self.A1 if k == 0 else self.A2


def height(spec: FamilySpec) -> int:
    """h = -2*sum(d) = -2*(e1 + e2)."""
    return -2 * sum(spec.d)


def expected_coefficient_degree(spec: FamilySpec, j: int) -> int:
    """(s,t)-degree of the u^(5-j) v^j spectral coefficient."""
    return 2 * sum(spec.d) - (5 - j) * spec.e[0] - j * spec.e[1]


@dataclass(frozen=True)
class SpectralForm:
    """det(u*A1 + v*A2): coefficients[j] is the (s,t)-form on u^(5-j) v^j;
    the six degrees vary linearly in j when e_1 != e_2."""

    coefficients: tuple[BinaryForm, ...]

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coefficients)

    def fiber(self, s0, t0) -> BinaryForm:
        """The quintic in (u,v) over the base point (s0 : t0)."""
        return BinaryForm(
            5, tuple(c.evaluate(Fraction(s0), Fraction(t0)) for c in self.coefficients)
        )

    def degrees(self) -> tuple[int, ...]:
        return tuple(c.degree for c in self.coefficients)

    def as_biform(self) -> BiForm:
        degs = {c.degree for c in self.coefficients}
        if len(degs) != 1:
            raise ValueError("twisted spectral form has no single bidegree")
        return BiForm.from_uv_coefficients(list(self.coefficients))


def spectral_form(spec: FamilySpec) -> SpectralForm:
    """Column-mixing expansion: the u^(5-k) v^k coefficient sums, over all
    k-subsets T of columns, the determinant taking columns T from A2 and the
    rest from A1; every summand has the same (s,t)-degree."""
    coeffs = []
    for k in range(6):
        total = BinaryForm.zero(max(expected_coefficient_degree(spec, k), 0))
        for cols in combinations(range(5), k):
            chosen = set(cols)
            m = [
                [
                    (spec.A2[i][j] if j in chosen else spec.A1[i][j])
                    for j in range(5)
                ]
                for i in range(5)
            ]
            total = total + _det_forms(m)
        if not total.is_zero and total.degree != expected_coefficient_degree(spec, k):
            raise RuntimeError("spectral coefficient degree violates bookkeeping")
        coeffs.append(total)
    form = SpectralForm(tuple(coeffs))
    if form.is_zero:
        raise ValueError("generically degenerate family")
    return form


@dataclass(frozen=True)
class HirzebruchClass:
    """alpha * fiber + beta * xi on the surface F_n (xi^2 = -n)."""

    n: int
    alpha: int
    beta: int


@dataclass(frozen=True)
class SpectralClassReport:
    cls: HirzebruchClass
    a: int
    reduced_range_ok: bool
    irreducible_range_ok: bool


def spectral_class(spec: FamilySpec) -> SpectralClassReport:
    """The spectral curve class (-5a-h) f + 5 xi on F_n with a = min(e) and
    n = -2a - h/2, plus the admissibility ranges for a."""
    h = height(spec)
    a = min(spec.e)
    n = -2 * a - h // 2
    assert n == abs(spec.e[0] - spec.e[1])
    cls = HirzebruchClass(n, -5 * a - h, 5)
    reduced = Fraction(-h, 3) <= a <= Fraction(-h, 4)
    irreducible = Fraction(-3 * h, 10) <= a <= Fraction(-h, 4)
    return SpectralClassReport(cls, a, reduced, irreducible)


def arithmetic_genus(cls: HirzebruchClass) -> int:
    """p_a of a curve of class alpha f + beta xi on F_n by adjunction."""
    if cls.beta < 1:
        raise ValueError("need beta >= 1")
    return (cls.alpha - 1) * (cls.beta - 1) - cls.n * cls.beta * (cls.beta - 1) // 2


@dataclass(frozen=True)
class DiscriminantReport:
    delta: BinaryForm
    degree: int
    g1_prime: bool
    singular_fiber_count: int


def discriminant_family(spec: FamilySpec) -> DiscriminantReport:
    """The (u,v)-discriminant of the spectral form as an (s,t)-form of
    degree 2h, with the simple-branching flag (squarefree) and the count of
    distinct singular fibers."""
    sf = spectral_form(spec)
    c = sf.coefficients
    fu = [c[j].scale(5 - j) for j in range(5)]
    fv = [c[j + 1].scale(j + 1) for j in range(5)]
    size = 8
    zero = BinaryForm.zero(0)
    syl = [[zero] * size for _ in range(size)]
    for r in range(4):
        for j in range(5):
            syl[r][r + j] = fu[j]
            syl[4 + r][r + j] = fv[j]
    delta = _det_forms(syl).scale(Fraction(1, 125))
    if delta.is_zero:
        raise ValueError("non-generically-smooth")
    if delta.degree == 0:
        return DiscriminantReport(delta, 0, True, 0)
    profile = squarefree_profile(delta)
    g1 = all(mult == 1 for _, mult in profile)
    count = sum(factor.degree for factor, _ in profile)
    return DiscriminantReport(delta, delta.degree, g1, count)


@dataclass(frozen=True)
class GenericityReport:
    g1_prime: bool
    bounded_factor: object
    witness: object
    irreducible_certified: bool
    g2_prime: bool | None
    full_weyl_impossible: bool


def genericity_check(spec: FamilySpec) -> GenericityReport:
    """Simple branching from the discriminant; the full-Galois-group
    condition as a certificate: no rational factor of (u,v)-degree <= 2 in
    the spectral form, plus one fiber whose quintic has an irreducible
    factor of degree >= 2 (ruling out five conjugate sections).  A found
    factor settles the question negatively; no factor and no witness leaves
    the result inconclusive (None)."""
    sf = spectral_form(spec)
    try:
        disc = discriminant_family(spec)
        g1 = disc.g1_prime
        degenerate = False
    except ValueError:
        g1 = False
        degenerate = True
    factor = twisted_factor_search(list(sf.coefficients), 2)
    witness = None
    for s0, t0 in _witness_points():
        fiber = sf.fiber(s0, t0)
        if fiber.is_zero:
            continue
        x_part = list(fiber.x_poly())
        degs = [
            len(p) - 1 for p, _ in uni_irreducible_factors(x_part)
        ] if len(x_part) > 1 else []
        if any(deg >= 2 for deg in degs):
            witness = (s0, t0)
            break
    certified = factor is None and witness is not None
    if factor is not None or degenerate or not g1:
        g2 = False
    elif certified:
        g2 = True
    else:
        g2 = None
    genus = arithmetic_genus(spectral_class(spec).cls)
    return GenericityReport(g1, factor, witness, certified, g2, genus == 0)


def _witness_points():
    yield Fraction(1), Fraction(0)
    yield Fraction(0), Fraction(1)
    for k in range(1, 12):
        yield Fraction(k), Fraction(1)
        yield Fraction(-k), Fraction(1)


def dimension_report(h: int) -> dict:
    """The dimension bookkeeping at height h: moduli dimension, the
    linear-system dimension re-derived by Riemann-Roch on the Hirzebruch
    surface, the expected parameter-count dimension, the degree of the
    moduli map, and the fiberwise invariant pullback degrees d*h/4."""
    if h % 2 != 0 or h < 0:
        raise ValueError("height must be even and non-negative")
    linear_system = 3 * h // 2 + 5
    riemann_roch = 5 * h // 2 - (h - 4) + 1
    if linear_system != riemann_roch:
        raise RuntimeError("linear-system dimension disagrees with Riemann-Roch")
    return {
        "height": h,
        "moduli_dimension": 3 * h // 2 + 2,
        "linear_system_dimension": linear_system,
        "expected_dimension": 3 * h // 2 - 1,
        "map_degree": 6 * h,
        "invariant_pullback_degrees": {
            "J4": h,
            "J8": 2 * h,
            "J12": 3 * h,
            "J18": 9 * h // 2,
        },
    }


def dimension_identities_symbolic() -> bool:
    """The Riemann-Roch identity 5h/2 - (h-4) + 1 = 3h/2 + 5 and the genus
    identity p_a = h - 4 for alpha = -5a-h, beta = 5, n = -2a-h/2, both as
    polynomial identities."""
    h, a = sympy.symbols("h a")
    rr = sympy.expand(5 * h / 2 - (h - 4) + 1 - (3 * h / 2 + 5))
    alpha = -5 * a - h
    n = -2 * a - h / 2
    genus = sympy.expand((alpha - 1) * (5 - 1) - n * 5 * (5 - 1) / 2 - (h - 4))
    return rr == 0 and genus == 0


@dataclass(frozen=True)
class ScanRow:
    a: int
    n: int
    alpha: int
    genus: int
    full_weyl_impossible: bool


def height_bounds_scan(h: int) -> dict:
    """Admissible twists at height h: integers a with -h/3 <= a <= -h/4 for
    reduced spectral curves, -3h/10 <= a <= -h/4 for irreducible ones."""
    if h % 2 != 0 or h < 0:
        raise ValueError("height must be even and non-negative")

    def rows(lo: Fraction, hi: Fraction):
        out = []
        a = math.ceil(lo)
        while a <= hi:
            n = -2 * a - h // 2
            alpha = -5 * a - h
            genus = arithmetic_genus(HirzebruchClass(n, alpha, 5))
            out.append(ScanRow(a, n, alpha, genus, genus == 0))
            a += 1
        return out

    return {
        "height": h,
        "reduced": rows(Fraction(-h, 3), Fraction(-h, 4)),
        "irreducible": rows(Fraction(-3 * h, 10), Fraction(-h, 4)),
    }


# ---------------------------------------------------------------------------
# Chern-class identity in the Chow ring of the ambient bundle


def _chow_reduce(cls: dict, c1):
    out = {}
    for (i, j), v in cls.items():
        if j >= 2:
            continue
        if j == 0 and i >= 5:
            if i == 5:
                key = (4, 1)
                out[key] = sympy.expand(out.get(key, 0) + v * c1)
            # i > 5 lands in H^(i-1) F with i-1 >= 5, which dies against F
            continue
        if j == 1 and i >= 5:
            continue
        out[(i, j)] = sympy.expand(out.get((i, j), 0) + v)
    return {k: v for k, v in out.items() if v != 0}


def _chow_mul(x: dict, y: dict, c1):
    out = {}
    for (i1, j1), v1 in x.items():
        for (i2, j2), v2 in y.items():
            key = (i1 + i2, j1 + j2)
            out[key] = sympy.expand(out.get(key, 0) + v1 * v2)
    return _chow_reduce(out, c1)


def chern_sides(d, e):
    """(integral of c1(omega_rel)^3 over the family, -2*sum(d)); symbolic or
    numeric inputs.  The ambient Chow ring is generated by the relative
    hyperplane H and the fiber F modulo F^2 and H^5 - c1 H^4 F with
    c1 = sum(d); the family class is 4H^2 - 2(e1+e2) HF and omega_rel is
    -H + (sum(d) - e1 - e2) F."""
    d = [sympy.sympify(x) for x in d]
    e = [sympy.sympify(x) for x in e]
    if len(d) != 5 or len(e) != 2:
        raise ValueError("need 5 degrees d and 2 degrees e")
    c1 = sympy.expand(sum(d))
    se = sympy.expand(e[0] + e[1])
    x_class = {(2, 0): sympy.Integer(4), (1, 1): -2 * se}
    omega = {(1, 0): sympy.Integer(-1), (0, 1): sympy.expand(c1 - se)}
    cube = _chow_mul(_chow_mul(omega, omega, c1), omega, c1)
    total = _chow_mul(cube, x_class, c1)
    lhs = total.get((4, 1), sympy.Integer(0)) + c1 * total.get((5, 0), sympy.Integer(0))
    return sympy.expand(lhs), sympy.expand(-2 * c1)


def chern_verify(d, e) -> bool:
    """Whether c1(omega_rel)^3 integrates to -2*sum(d).  The identity only
    holds modulo sum(d) = e1 + e2; symbolic inputs have one e eliminated
    through the constraint, numeric inputs must satisfy it."""
    d = [sympy.sympify(x) for x in d]
    e = [sympy.sympify(x) for x in e]
    gap = sympy.expand(sum(d) - e[0] - e[1])
    if gap != 0:
        if isinstance(e[1], sympy.Symbol):
            e = [e[0], sympy.expand(sum(d) - e[0])]
        elif isinstance(e[0], sympy.Symbol):
            e = [sympy.expand(sum(d) - e[1]), e[1]]
        else:
            raise ValueError("sum(d) = e1 + e2 violated")
    lhs, rhs = chern_sides(d, e)
    return bool(sympy.simplify(lhs - rhs) == 0)


# ---------------------------------------------------------------------------
# complete-intersection presentations


def family_from_quadric_pair(pairs) -> FamilySpec:
    """Two symmetric Gram matrices of (s,t)-forms, the k-th quadratic in the
    fiber coordinates with (s,t)-degree m_k, as a FamilySpec: d_i = -(m1+m2)
    and e_k = -2(m1+m2) - m_k (pinned by the entry-degree bookkeeping)."""
    if len(pairs) != 2:
        raise ValueError("need exactly two quadratic forms")
    (m1, g1), (m2, g2) = pairs
    total = m1 + m2
    d = (-total,) * 5
    e = (-2 * total - m1, -2 * total - m2)
    return FamilySpec(d, e, _as_form_matrix(g1, m1), _as_form_matrix(g2, m2))


def _as_form_matrix(g, degree: int):
    rows = []
    for row in g:
        out = []
        for x in row:
            if isinstance(x, BinaryForm):
                out.append(x)
            elif degree == 0:
                out.append(BinaryForm.constant(Fraction(x)))
            else:
                raise ValueError("non-constant entries must be BinaryForms")
        rows.append(tuple(out))
    return tuple(rows)


def _integer_primitive_vector(vec):
    den = math.lcm(*(x.denominator for x in vec)) if vec else 1
    ints = [int(x * den) for x in vec]
    g = math.gcd(*ints) if any(ints) else 1
    return [Fraction(x, g) for x in ints]


def family_from_linear_plus_quadrics(alpha, beta, q1, q2) -> FamilySpec:
    """Eliminate one of six coordinates using the bilinear form with
    coefficient vectors alpha (s-part) and beta (t-part): restrict the two
    constant quadrics to the rank-5 kernel spanned by four constant vectors
    and one vector linear in (s,t).  Gives d = (0,-1,-1,-1,-1) and
    e = (-2,-2), so h = 8."""
    alpha = [Fraction(x) for x in alpha]
    beta = [Fraction(x) for x in beta]
    if len(alpha) != 6 or len(beta) != 6:
        raise ValueError("need 6 coefficients in each of alpha, beta")
    m = [alpha, beta]
    if linalg.rank([row[:] for row in m]) < 2:
        raise ValueError("elimination impossible: bilinear form has rank < 2")
    kern = linalg.kernel_basis([row[:] for row in m])
    p = linalg.solve([row[:] for row in m], [Fraction(1), Fraction(0)])
    q = linalg.solve([row[:] for row in m], [Fraction(0), Fraction(1)])
    # w = t*p - s*q: alpha.w = t, beta.w = -s, so the constraint
    # s*(alpha.z) + t*(beta.z) vanishes on w for every (s,t)
    joint = _integer_primitive_vector(list(p) + list(q))
    p, q = joint[:6], joint[6:]
    columns = []
    columns.append([BinaryForm(1, (-q[i], p[i])) for i in range(6)])
    for v in kern:
        v = _integer_primitive_vector(list(v))
        columns.append([BinaryForm(0, (x,)) for x in v])

    def restrict(quad):
        quad = [[Fraction(x) for x in row] for row in quad]
        a = [[None] * 5 for _ in range(5)]
        for i in range(5):
            for j in range(5):
                acc = BinaryForm.zero(0)
                for r in range(6):
                    if columns[i][r].is_zero:
                        continue
                    for c in range(6):
                        if quad[r][c] == 0 or columns[j][c].is_zero:
                            continue
                        acc = acc + (columns[i][r] * columns[j][c]).scale(quad[r][c])
                a[i][j] = acc
        return tuple(tuple(row) for row in a)

    d = (0, -1, -1, -1, -1)
    e = (-2, -2)
    return FamilySpec(d, e, restrict(q1), restrict(q2))


def family_from_ci(presentation: dict) -> FamilySpec:
    """Dispatch a complete-intersection presentation dict (see the JSON
    formats in serialize) to the typed constructors."""
    kind = presentation.get("presentation")
    if kind == "ci_p1xp4":
        from .serialize import decode_form

        pairs = []
        for item in presentation["forms"]:
            m = item["st_degree"]
            gram = [[decode_form(x) for x in row] for row in item["gram"]]
            pairs.append((m, tuple(tuple(row) for row in gram)))
        return family_from_quadric_pair(pairs)
    if kind == "ci_p1xp5":
        from .serialize import decode_rational

        linear = presentation["forms"][0]
        alpha = [decode_rational(x) for x in linear["alpha"]]
        beta = [decode_rational(x) for x in linear["beta"]]
        grams = [
            [[decode_rational(x) for x in row] for row in item["gram"]]
            for item in presentation["forms"][1:]
        ]
        if len(grams) != 2:
            raise ValueError("ci_p1xp5 needs two quadric grams")
        return family_from_linear_plus_quadrics(alpha, beta, grams[0], grams[1])
    raise ValueError(f"unknown presentation {kind!r}")


def substitute_squared(spec: FamilySpec) -> FamilySpec:
    """Pull the family back along (s,t) -> (s^2, t^2); splitting degrees
    double and the discriminant becomes the old one in (s^2, t^2)."""

    def sq(f: BinaryForm) -> BinaryForm:
        coeffs = [Fraction(0)] * (2 * f.degree + 1)
        for i, c in enumerate(f.coeffs):
            coeffs[2 * i] = c
        return BinaryForm(2 * f.degree, tuple(coeffs))

    d = tuple(2 * x for x in spec.d)
    e = (2 * spec.e[0], 2 * spec.e[1])
    a1 = tuple(tuple(sq(x) for x in row) for row in spec.A1)
    a2 = tuple(tuple(sq(x) for x in row) for row in spec.A2)
    return FamilySpec(d, e, a1, a2)


# ---------------------------------------------------------------------------
# fiberwise invariant degree audit


def _difference_degree(values) -> int:
    """Degree of the polynomial interpolating values at 0,1,2,...: the
    largest k whose k-th forward difference is not identically zero, or -1
    for the zero polynomial.  Exact when len(values) > degree + 1."""
    cur = list(values)
    degree = -1
    for k in range(len(values)):
        if any(v != 0 for v in cur):
            degree = k
        cur = [cur[i + 1] - cur[i] for i in range(len(cur) - 1)]
    return degree


def fiber_invariant_degree_audit(spec: FamilySpec) -> dict:
    """Degrees in the base parameter of the fiberwise invariants, versus the
    predicted d*h/4; reported, not asserted (base loci can drop degrees)."""
    from .quintic import _raw_invariants

    h = height(spec)
    sf = spectral_form(spec)
    maxdeg = max(c.degree for c in sf.coefficients)
    out = {}
    for name, weight, idx in (("J4", 4, 0), ("J8", 8, 1), ("J12", 12, 2), ("J18", 18, 3)):
        bound = weight * maxdeg + 1
        values = []
        for x in range(bound + 1):
            fib = sf.fiber(Fraction(x), Fraction(1))
            values.append(_raw_invariants(fib)[idx])
        degree = _difference_degree(values)
        predicted = weight * h // 4
        out[name] = {
            "degree": degree,
            "predicted": predicted,
            "matches": degree == predicted,
        }
    return out


@dataclass(frozen=True)
class FamilyReport:
    height: int
    coefficient_degrees: tuple[int, ...]
    expected_degrees: tuple[int, ...]
    spectral: SpectralClassReport
    genus: int
    discriminant_degree: int | None
    g1_prime: bool
    singular_fiber_count: int | None
    genericity: GenericityReport
    dimensions: dict


def family_report(spec: FamilySpec) -> FamilyReport:
    """Everything the CLI prints about one family."""
    h = height(spec)
    sf = spectral_form(spec)
    sc = spectral_class(spec)
    gen = genericity_check(spec)
    try:
        disc = discriminant_family(spec)
        disc_degree: int | None = disc.degree
        fibers: int | None = disc.singular_fiber_count
    except ValueError:
        disc_degree = None
        fibers = None
    return FamilyReport(
        height=h,
        coefficient_degrees=sf.degrees(),
        expected_degrees=tuple(expected_coefficient_degree(spec, j) for j in range(6)),
        spectral=sc,
        genus=arithmetic_genus(sc.cls),
        discriminant_degree=disc_degree,
        g1_prime=gen.g1_prime,
        singular_fiber_count=fibers,
        genericity=gen,
        dimensions=dimension_report(h) if h % 2 == 0 and h >= 0 else {},
    )
