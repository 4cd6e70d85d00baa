"""Exact linear algebra over the rationals and generic commutative rings.

Matrices are sequences of rows; entries are Fractions unless a ring/field ops
object says otherwise.  Everything here is deterministic: pivot choice is
first-nonzero, kernel bases come out in free-column order.
"""

from __future__ import annotations

from fractions import Fraction

Row = list[Fraction]
Matrix = list[Row]


def mat(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Matrix, v: Row) -> Row:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and list of pivot columns."""
    r = [row[:] for row in m]
    nrows = len(r)
    ncols = len(r[0]) if nrows else 0
    pivots: list[int] = []
    lead = 0
    for col in range(ncols):
        piv = next((i for i in range(lead, nrows) if r[i][col] != 0), None)
        if piv is None:
            continue
        r[lead], r[piv] = r[piv], r[lead]
        inv = 1 / r[lead][col]
        r[lead] = [x * inv for x in r[lead]]
        for i in range(nrows):
            if i != lead and r[i][col] != 0:
                c = r[i][col]
                r[i] = [x - c * y for x, y in zip(r[i], r[lead])]
        pivots.append(col)
        lead += 1
        if lead == nrows:
            break
    return r, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[Row]:
    """Exact basis of the right kernel, one vector per free column."""
    if not m:
        return []
    ncols = len(m[0])
    r, pivots = rref(m)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][j]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Row) -> Row | None:
    """One exact solution of a x = b, or None if inconsistent."""
    aug = [row[:] + [bv] for row, bv in zip(a, b)]
    r, pivots = rref(aug)
    ncols = len(a[0]) if a else 0
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = r[i][ncols]
    return x


def det(m: Matrix) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(m)
    a = [row[:] for row in m]
    sign = 1
    res = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        res *= a[col][col]
        inv = 1 / a[col][col]
        for i in range(col + 1, n):
            if a[i][col] != 0:
                c = a[i][col] * inv
                a[i] = [x - c * y for x, y in zip(a[i], a[col])]
    return sign * res


def det_minors(m, add, mul, neg, zero, is_zero):
    """Determinant over a commutative ring (add, mul, neg); Laplace expansion
    with memoization over column subsets, no division."""
    n = len(m)
    memo: dict[int, object] = {}

    def minor(mask):
        # rows used so far = n - popcount(mask); expand along row index
        if mask == 0:
            return None
        if mask in memo:
            return memo[mask]
        row = n - bin(mask).count("1")
        acc = zero
        j = 0
        for col in range(n):
            bit = 1 << col
            if not mask & bit:
                continue
            e = m[row][col]
            if not is_zero(e):
                sub = minor(mask & ~bit)
                term = e if sub is None else mul(e, sub)
                if j % 2:
                    term = neg(term)
                acc = add(acc, term)
            j += 1
        memo[mask] = acc
        return acc

    out = minor((1 << n) - 1)
    return zero if out is None else out


def charpoly(m: Matrix) -> list[Fraction]:
    """Characteristic polynomial det(x I - m) by Faddeev-LeVerrier.

    Returns coefficients [c_0, ..., c_n] with c_n = 1, index = power of x.
    """
    n = len(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = identity(n)
    for k in range(1, n + 1):
        mk = mat_mul(m, mk)
        trace = sum(mk[i][i] for i in range(n))
        c = -trace / k
        coeffs[n - k] = c
        for i in range(n):
            mk[i][i] += c
    return coeffs


def rank_over_field(m, field) -> int:
    """Rank by Gaussian elimination with ops from `field`:
    needs add, mul, neg, inv, is_zero."""
    rows = [row[:] for row in m]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, nrows) if not field.is_zero(rows[i][col])), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = field.inv(rows[rk][col])
        rows[rk] = [field.mul(inv, x) for x in rows[rk]]
        for i in range(rk + 1, nrows):
            if not field.is_zero(rows[i][col]):
                c = rows[i][col]
                rows[i] = [field.add(x, field.neg(field.mul(c, y))) for x, y in zip(rows[i], rows[rk])]
        rk += 1
        if rk == nrows:
            break
    return rk
