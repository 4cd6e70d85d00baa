"""Binary forms over Q with exact dense arithmetic.

A form of degree d stores d+1 coefficients, coeffs[i] multiplying x^(d-i) y^i.
The zero form keeps a nominal degree so graded matrix entries stay degree-tagged.
Univariate helpers (prefix p-) act on dense lists with p[i] the x^i coefficient
and no trailing zeros; [] is the zero polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg

# ---------------------------------------------------------------------------
# univariate dense polynomials over Q


def pnorm(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def pdeg(p: list[Fraction]) -> int:
    return len(p) - 1  # -1 for the zero polynomial


def padd(p, q):
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return pnorm(out)


def psub(p, q):
    return padd(p, [-c for c in q])


def pscale(p, c: Fraction):
    c = Fraction(c)
    return [] if c == 0 else pnorm([x * c for x in p])


def pmul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return pnorm(out)


def pdivmod(p, q):
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(p)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    dq = len(q) - 1
    lead = q[-1]
    while len(r) - 1 >= dq and r:
        c = r[-1] / lead
        k = len(r) - 1 - dq
        quo[k] = c
        for i, b in enumerate(q):
            r[k + i] -= c * b
        pnorm(r)
    return pnorm(quo), r


def pdivexact(p, q):
    quo, rem = pdivmod(p, q)
    if rem:
        raise ValueError("inexact polynomial division")
    return quo


def pgcd(p, q):
    """Monic gcd over Q."""
    a, b = list(p), list(q)
    while b:
        a, b = b, pdivmod(a, b)[1]
    if not a:
        return []
    return pscale(a, 1 / a[-1])


def pderiv(p):
    return pnorm([p[i] * i for i in range(1, len(p))])


def peval(p, x0: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x0 + c
    return acc


def pshift(p, a: Fraction):
    """p(x + a) by Horner."""
    out: list[Fraction] = []
    for c in reversed(p):
        out = padd(pmul(out, [Fraction(a), Fraction(1)]), [c])
    return out


def pmonic(p):
    return pscale(p, 1 / p[-1]) if p else []


def psquarefree_decomposition(p):
    """Yun's algorithm: [(g, k)] with p = c * prod g^k, g squarefree monic,
    pairwise coprime, k ascending."""
    if pdeg(p) < 1:
        return []
    a = pgcd(p, pderiv(p))
    b = pdivexact(p, a)
    c = pdivexact(pderiv(p), a)
    out = []
    k = 1
    while pdeg(b) > 0:
        d = psub(c, pderiv(b))
        g = pgcd(b, d)
        if pdeg(g) > 0:
            out.append((pmonic(g), k))
        b = pdivexact(b, g)
        c = pdivexact(d, g)
        k += 1
    return out


def pcontent_primitive(p):
    """(content, primitive) with primitive having coprime integer coefficients
    and positive leading coefficient; content may be negative."""
    if not p:
        return Fraction(0), []
    den = math.lcm(*(c.denominator for c in p))
    nums = [c * den for c in p]
    g = math.gcd(*(int(c) for c in nums))
    sign = 1 if nums[-1] > 0 else -1
    content = Fraction(sign * g, den)
    return content, [c / content for c in p]


# ---------------------------------------------------------------------------
# binary forms


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form in two variables; coeffs[i] multiplies x^(d-i) y^i."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative degree")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count does not match degree")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, degree: int = 0) -> "BinaryForm":
        return cls(degree, (Fraction(0),) * (degree + 1))

    @classmethod
    def constant(cls, c) -> "BinaryForm":
        return cls(0, (Fraction(c),))

    @classmethod
    def from_roots(cls, roots, scale=1) -> "BinaryForm":
        """scale * prod (x - r y) over the given rational roots."""
        f = cls(0, (Fraction(scale),))
        for r in roots:
            f = f * cls(1, (Fraction(1), -Fraction(r)))
        return f

    @classmethod
    def from_x_poly(cls, p: list[Fraction], degree: int) -> "BinaryForm":
        """Homogenize p(x) = f(x, 1) back to the given degree."""
        if pdeg(p) > degree:
            raise ValueError("degree too small to homogenize")
        coeffs = [Fraction(0)] * (degree + 1)
        for k, c in enumerate(p):
            coeffs[degree - k] = c
        return cls(degree, tuple(coeffs))

    # queries --------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def x_poly(self) -> list[Fraction]:
        """f(x, 1) as a dense univariate polynomial."""
        return pnorm([self.coeffs[self.degree - k] for k in range(self.degree + 1)])

    def y_valuation(self) -> int:
        """Largest v with y^v dividing f; degree+1 sentinel for the zero form."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.degree + 1

    def evaluate(self, x0, y0) -> Fraction:
        x0, y0 = Fraction(x0), Fraction(y0)
        acc = Fraction(0)
        for i, c in enumerate(self.coeffs):
            acc += c * x0 ** (self.degree - i) * y0**i
        return acc

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            if self.is_zero:
                return other
            if other.is_zero:
                return self
            raise ValueError("degree mismatch in form addition")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        d = self.degree + other.degree
        out = [Fraction(0)] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BinaryForm(d, tuple(out))

    def scale(self, c) -> "BinaryForm":
        c = Fraction(c)
        return BinaryForm(self.degree, tuple(a * c for a in self.coeffs))

    def power(self, k: int) -> "BinaryForm":
        out = BinaryForm.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def derivative_x(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm.zero(0)
        return BinaryForm(
            self.degree - 1,
            tuple(self.coeffs[i] * (self.degree - i) for i in range(self.degree)),
        )

    def derivative_y(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm.zero(0)
        return BinaryForm(self.degree - 1, tuple(self.coeffs[i] * i for i in range(1, self.degree + 1)))

    def divexact(self, other: "BinaryForm") -> "BinaryForm":
        """Exact quotient of homogeneous forms; raises if not divisible."""
        if other.is_zero:
            raise ZeroDivisionError("division by zero form")
        if self.degree < other.degree:
            raise ValueError("inexact form division")
        if self.is_zero:
            return BinaryForm.zero(self.degree - other.degree)
        vs, vo = self.y_valuation(), other.y_valuation()
        if vs < vo:
            raise ValueError("inexact form division")
        q = pdivexact(self.x_poly(), other.x_poly())
        return BinaryForm.from_x_poly(q, self.degree - other.degree)

    def integer_primitive(self) -> tuple[Fraction, "BinaryForm"]:
        """(content, primitive form) with coprime integer coefficients and
        positive first nonzero coefficient."""
        if self.is_zero:
            return Fraction(0), self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        nums = [c * den for c in self.coeffs]
        g = math.gcd(*(int(c) for c in nums))
        lead = next(c for c in nums if c != 0)
        sign = 1 if lead > 0 else -1
        content = Fraction(sign * g, den)
        return content, self.scale(1 / content)


def form_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Monic-normalized gcd of two forms (1 for coprime forms)."""
    if f.is_zero:
        return g
    if g.is_zero:
        return f
    v = min(f.y_valuation(), g.y_valuation())
    p = pgcd(f.x_poly(), g.x_poly())
    return BinaryForm.from_x_poly(p, pdeg(p) + v)


def mobius_substitute(f: BinaryForm, m) -> BinaryForm:
    """Substitution x -> a x + b y, y -> c x + d y for an invertible rational
    matrix m = ((a, b), (c, d)).  This is a right action: substituting m1 and
    then m2 equals substituting the single matrix product m1 m2."""
    (a, b), (c, d) = m
    a, b, c, d = (Fraction(t) for t in (a, b, c, d))
    if a * d - b * c == 0:
        raise ValueError("substitution matrix is singular")
    lin1 = BinaryForm(1, (a, b))
    lin2 = BinaryForm(1, (c, d))
    out = BinaryForm.zero(f.degree)
    p1 = [BinaryForm.constant(1)]
    p2 = [BinaryForm.constant(1)]
    for _ in range(f.degree):
        p1.append(p1[-1] * lin1)
        p2.append(p2[-1] * lin2)
    for i, cf in enumerate(f.coeffs):
        if cf:
            out = out + (p1[f.degree - i] * p2[i]).scale(cf)
    return out


def sylvester_matrix(f: BinaryForm, g: BinaryForm) -> linalg.Matrix:
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for j, c in enumerate(f.coeffs):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for j, c in enumerate(g.coeffs):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant(f: BinaryForm, g: BinaryForm) -> Fraction:
    """Resultant at the formal degrees, vanishing iff the forms share a root
    in P^1 (roots at infinity included)."""
    if f.degree == 0:
        return f.coeffs[0] ** g.degree
    if g.degree == 0:
        return g.coeffs[0] ** f.degree
    return linalg.det(sylvester_matrix(f, g))


def discriminant(f: BinaryForm) -> Fraction:
    """Discriminant normalized so a monic split form gives the product of
    squared root differences: disc = (-1)^(d(d-1)/2) Res(f_x, f_y) / d^(d-2)."""
    d = f.degree
    if d <= 1:
        return Fraction(1)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(f.derivative_x(), f.derivative_y()) / Fraction(d) ** (d - 2)


def squarefree_profile(f: BinaryForm) -> list[tuple[BinaryForm, int]]:
    """Pairwise-coprime squarefree factors with multiplicities.

    Factors are monic in x (the pure-y factor appears as y itself); the product
    of factor^multiplicity recovers f up to a nonzero constant.  Ordered by
    (multiplicity, degree, coefficients).
    """
    if f.is_zero:
        raise ValueError("squarefree profile of the zero form")
    out = []
    v = f.y_valuation()
    if v > 0:
        out.append((BinaryForm(1, (Fraction(0), Fraction(1))), v))
    for g, k in psquarefree_decomposition(f.x_poly()):
        out.append((BinaryForm.from_x_poly(g, pdeg(g)), k))
    return sorted(out, key=lambda t: (t[1], t[0].degree, t[0].coeffs))
