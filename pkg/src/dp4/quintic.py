"""Invariants of binary quintics and the weighted moduli point.

The four integral invariants J4, J8, J12, J18 are realized as transvectant
expressions scaled to primitive integer coefficient vectors (the scale
factors below are the contents of the raw expressions as polynomials in the
quintic coefficients; a slow symbolic test re-derives them).  The square of
the odd invariant J18 is a weighted form of degree 36 in (J4, J8, J12), and
the discriminant is a linear combination of J4^2 and J8; both identities are
fitted at runtime by exact linear algebra on sampled quintics and cached.

Points of the moduli space carry weights (1, 2, 3) on (J4, J8, J12).  The
canonical representative is exact over Q: scale J4 to 1 when possible, else
J8 to its signed squarefree integer kernel, else J12 to its positive
cubefree kernel.  Orbit equality is also offered directly, without any
integer factorization, as an independent route.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

from . import linalg
from .binforms import BinaryForm, discriminant, resultant, squarefree_profile

# contents of the raw transvectant expressions on the generic integer quintic
_CONTENT_J4 = Fraction(2, 625)
_CONTENT_J8 = Fraction(1, 1562500)
_CONTENT_J12 = Fraction(3, 7812500000)
_CONTENT_J18 = Fraction(243, 31250000000000)


def transvectant(f: BinaryForm, g: BinaryForm, r: int) -> BinaryForm:
    """The r-th transvectant with the classical normalization.

    (f,g)_r = (m-r)!(n-r)!/(m!n!) * sum_k (-1)^k C(r,k)
              d^r f/dx^(r-k)dy^k * d^r g/dx^k dy^(r-k);
    bilinear, of degree m+n-2r, and (g,f)_r = (-1)^r (f,g)_r.
    """
    m, n = f.degree, g.degree
    if r < 0 or r > min(m, n):
        raise ValueError(f"transvectant index {r} out of range for degrees {m}, {n}")
    scale = Fraction(
        math.factorial(m - r) * math.factorial(n - r),
        math.factorial(m) * math.factorial(n),
    )
    total = BinaryForm.zero(m + n - 2 * r)
    for k in range(r + 1):
        df = f
        for _ in range(r - k):
            df = df.derivative_x()
        for _ in range(k):
            df = df.derivative_y()
        dg = g
        for _ in range(k):
            dg = dg.derivative_x()
        for _ in range(r - k):
            dg = dg.derivative_y()
        total = total + (df * dg).scale((-1) ** k * math.comb(r, k))
    return total.scale(scale)


def _raw_invariants(f: BinaryForm):
    i2 = transvectant(f, f, 4)
    j3 = transvectant(f, i2, 2)
    a6 = transvectant(j3, j3, 2)
    j4 = transvectant(i2, i2, 2).coeffs[0] / _CONTENT_J4
    j8 = transvectant(a6, i2, 2).coeffs[0] / _CONTENT_J8
    j12 = transvectant(a6, a6, 2).coeffs[0] / _CONTENT_J12
    j18 = resultant(f, j3) / _CONTENT_J18
    return j4, j8, j12, j18


def syzygy_monomials() -> tuple[tuple[int, int, int], ...]:
    """Exponent triples (a,b,c) with a + 2b + 3c = 9: the weighted degree-36
    monomials J4^a J8^b J12^c that can appear in J18^2."""
    out = []
    for c in range(4):
        for b in range(5):
            a = 9 - 2 * b - 3 * c
            if a >= 0:
                out.append((a, b, c))
    return tuple(out)


@lru_cache(maxsize=1)
def syzygy_coefficients() -> tuple[Fraction, ...]:
    """Coefficients expressing J18^2 in the weighted monomials, fitted once
    by exact linear algebra on 300 sampled quintics."""
    monos = syzygy_monomials()
    rng = random.Random(36936)
    rows, rhs = [], []
    for _ in range(300):
        f = BinaryForm(5, tuple(Fraction(rng.randint(-9, 9)) for _ in range(6)))
        j4, j8, j12, j18 = _raw_invariants(f)
        rows.append([j4**a * j8**b * j12**c for a, b, c in monos])
        rhs.append(j18 * j18)
    if linalg.rank([row[:] for row in rows[: len(monos) + 8]]) < len(monos):
        raise RuntimeError("syzygy fit underdetermined")
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise RuntimeError("syzygy fit inconsistent")
    return tuple(sol)


@lru_cache(maxsize=1)
def disc_as_invariant() -> tuple[Fraction, Fraction]:
    """Constants (c1, c2) with disc = c1*J4^2 + c2*J8 identically, fitted by
    exact solve and re-verified on 100 fresh samples."""
    rng = random.Random(80808)

    def sample():
        f = BinaryForm(5, tuple(Fraction(rng.randint(-9, 9)) for _ in range(6)))
        j4, j8, _, _ = _raw_invariants(f)
        return [j4 * j4, j8], discriminant(f)

    rows, rhs = [], []
    for _ in range(6):
        row, d = sample()
        rows.append(row)
        rhs.append(d)
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise RuntimeError("discriminant fit inconsistent")
    c1, c2 = sol
    for _ in range(100):
        row, d = sample()
        if c1 * row[0] + c2 * row[1] != d:
            raise RuntimeError("discriminant fit failed re-verification")
    return c1, c2


@dataclass(frozen=True)
class InvariantVector:
    """Values of the integral invariants on one quintic; the degree-36
    relation on J18^2 is checked at construction."""

    J4: Fraction
    J8: Fraction
    J12: Fraction
    J18: Fraction

    def __post_init__(self):
        coeffs = syzygy_coefficients()
        total = Fraction(0)
        for (a, b, c), coeff in zip(syzygy_monomials(), coeffs):
            total += coeff * self.J4**a * self.J8**b * self.J12**c
        if total != self.J18 * self.J18:
            raise ValueError("invariant values violate the J18^2 relation")

    def as_tuple(self):
        return (self.J4, self.J8, self.J12, self.J18)


def invariants(f: BinaryForm) -> InvariantVector:
    """The four integral invariants; homogeneous of degrees 4, 8, 12, 18 in
    the coefficients, and invariant under unimodular substitution."""
    if f.degree != 5:
        raise ValueError(f"invariants need a quintic, got degree {f.degree}")
    j4, j8, j12, j18 = _raw_invariants(f)
    return InvariantVector(j4, j8, j12, j18)


def stability_classify(f: BinaryForm) -> str:
    """One of all-simple / one-double / two-doubles / unstable, read off the
    squarefree profile (a quintic admits at most two double roots)."""
    if f.degree != 5:
        raise ValueError(f"stability needs a quintic, got degree {f.degree}")
    if f.is_zero:
        raise ValueError("stability of the zero form")
    doubles = 0
    for factor, mult in squarefree_profile(f):
        if mult >= 3:
            return "unstable"
        if mult == 2:
            doubles += factor.degree
    return ("all-simple", "one-double", "two-doubles")[doubles]


@dataclass(frozen=True)
class ModuliPoint:
    """Canonical representative of (J4 : J8 : J12) under the weight-(1,2,3)
    scaling, exact over Q; `normalized` records which coordinate anchors the
    canonical form."""

    coords: tuple[Fraction, Fraction, Fraction]
    normalized: str


def _factor_kernel(x: Fraction, power: int) -> tuple[int, int]:
    """(kernel, k) with |n*d^(power-1)| = kernel * k^power and kernel free of
    power-th prime powers, for x = n/d in lowest terms."""
    n, d = abs(x.numerator), x.denominator
    value = n * d ** (power - 1)
    kernel, k = 1, 1
    for p, e in sympy.factorint(value).items():
        kernel *= p ** (e % power)
        k *= p ** (e // power)
    return kernel, k


def normalize_weighted(triple) -> ModuliPoint:
    """Canonical form of a nonzero triple under (j4, j8, j12) ->
    (lam*j4, lam^2*j8, lam^3*j12), lam rational and nonzero."""
    j4, j8, j12 = (Fraction(x) for x in triple)
    if j4 != 0:
        lam = 1 / j4
        return ModuliPoint((Fraction(1), j8 * lam**2, j12 * lam**3), "J4")
    if j8 != 0:
        sf, k = _factor_kernel(j8, 2)
        sign = 1 if j8 > 0 else -1
        p2 = Fraction(sign * sf)
        lam = Fraction(j8.denominator, k)  # lam^2 = p2 / j8
        assert lam * lam * j8 == p2
        p3 = j12 * lam**3
        return ModuliPoint((Fraction(0), p2, abs(p3)), "J8")
    if j12 != 0:
        cf, _ = _factor_kernel(j12, 3)
        return ModuliPoint((Fraction(0), Fraction(0), Fraction(cf)), "J12")
    raise ValueError("degenerate invariant triple")


def moduli_point(f: BinaryForm) -> ModuliPoint:
    """The weighted moduli point of a quintic with at most double roots."""
    if stability_classify(f) == "unstable":
        raise ValueError("not in U")
    j4, j8, j12, _ = invariants(f).as_tuple()
    return normalize_weighted((j4, j8, j12))


def _is_rational_square(x: Fraction) -> bool:
    if x < 0:
        return False
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    return rn * rn == x.numerator and rd * rd == x.denominator


def _is_rational_cube(x: Fraction) -> bool:
    def icbrt(v):
        if v == 0:
            return 0
        r = round(abs(v) ** (1 / 3))
        while r**3 > abs(v):
            r -= 1
        while (r + 1) ** 3 <= abs(v):
            r += 1
        return r if v > 0 else -r

    rn, rd = icbrt(x.numerator), icbrt(x.denominator)
    return rn**3 == x.numerator and rd**3 == x.denominator


def same_point(f: BinaryForm, g: BinaryForm) -> bool:
    """Whether two quintics in U have equal weighted moduli points; decided
    by cross-ratios and rational square/cube tests, no factorization."""
    x, y, z, _ = invariants(f).as_tuple()
    x2, y2, z2, _ = invariants(g).as_tuple()
    if (x, y, z) == (0, 0, 0) or (x2, y2, z2) == (0, 0, 0):
        raise ValueError("degenerate invariant triple")
    if (x == 0) != (x2 == 0) or (y == 0) != (y2 == 0) or (z == 0) != (z2 == 0):
        return False
    if x != 0:
        lam = x2 / x
        return y2 == y * lam**2 and z2 == z * lam**3
    if y != 0:
        if not _is_rational_square(y2 / y):
            return False
        if z == 0:
            return True
        return (z2 / z) ** 2 == (y2 / y) ** 3
    return _is_rational_cube(z2 / z)
