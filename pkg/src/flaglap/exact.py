"""Exact dense linear algebra over the rationals.

Matrices are plain lists of rows; entries are ints or Fractions. Rank and
determinant computations go through fraction-free (Bareiss) elimination on
an integer-scaled copy; invertibility checks prefer a modular shortcut
(nonzero determinant mod a prime certifies nonzero over Q) with the exact
elimination as fallback.
"""

from fractions import Fraction
from math import gcd, lcm

from . import kernels
from .errors import DomainError

# Verification prime for modular determinant checks (2^31 - 1, Mersenne).
_CHECK_PRIMES = (2147483647, 2147483629, 2147483587)


def identity(m, one=1):
    return [[one if i == j else 0 * one for j in range(m)] for i in range(m)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    return [[x * s for x in row] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def is_integer_matrix(a):
    return all(isinstance(x, int) or x.denominator == 1 for row in a for x in row)


def scale_to_int(a):
    """(integer matrix, d) with a == intmatrix / d and d > 0 minimal."""
    d = 1
    for row in a:
        for x in row:
            if isinstance(x, Fraction):
                d = lcm(d, x.denominator)
    out = [
        [int(x * d) if isinstance(x, Fraction) else x * d for x in row] for row in a
    ]
    return out, d


def mat_mul(a, b):
    """Exact matrix product; integer inputs dispatch to the fast kernels."""
    if not a or not b:
        return [[] for _ in a]
    if is_integer_matrix(a) and is_integer_matrix(b):
        return kernels.matmul_int(
            [[int(x) for x in row] for row in a],
            [[int(x) for x in row] for row in b],
        )
    na, d_a = scale_to_int(a)
    nb, d_b = scale_to_int(b)
    prod = kernels.matmul_int(na, nb)
    d = d_a * d_b
    return [[Fraction(x, d) for x in row] for row in prod]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def rank_exact(a):
    """Exact rank over Q via fraction-free Bareiss elimination."""
    if not a or not a[0]:
        return 0
    m, _ = scale_to_int(a)
    rows, cols = len(m), len(m[0])
    m = [list(r) for r in m]
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        pivval = m[r][c]
        for i in range(r + 1, rows):
            mic = m[i][c]
            m[i] = [
                (pivval * x - mic * y) // prev
                for x, y in zip(m[i], m[r])
            ]
        prev = pivval
        r += 1
    return r


def det_exact(a):
    """Exact determinant of a square rational matrix (Bareiss)."""
    if len(a) != len(a[0] if a else []):
        raise DomainError("determinant of a non-square matrix")
    m, d = scale_to_int(a)
    n = len(m)
    m = [list(r) for r in m]
    prev = 1
    sign = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        pivval = m[c][c]
        for i in range(c + 1, n):
            mic = m[i][c]
            m[i] = [(pivval * x - mic * y) // prev for x, y in zip(m[i], m[c])]
        prev = pivval
    return Fraction(sign * m[n - 1][n - 1], d**n)


def is_invertible(a):
    """True iff the square rational matrix has nonzero determinant.

    A nonzero determinant modulo any prime certifies invertibility; only
    when a handful of primes all give zero do we fall back to the exact
    elimination.
    """
    if not a:
        return True
    if len(a) != len(a[0]):
        return False
    m, _ = scale_to_int(a)
    for p in _CHECK_PRIMES:
        det, _rank = kernels.det_rank_mod(m, p)
        if det:
            return True
    return rank_exact(m) == len(m)


def rref_rational(a):
    """Reduced row echelon form over Q: (rref rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in a]
    if not m:
        return [], []
    cols = len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace_int(a):
    """Basis of the right null space of a rational matrix, as primitive
    integer column vectors (returned as lists), in the deterministic
    reduced-echelon order: one vector per free column, ascending."""
    if not a:
        return []
    cols = len(a[0])
    red, pivots = rref_rational(a)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][free]
        den = lcm(*(x.denominator for x in v)) if v else 1
        ints = [int(x * den) for x in v]
        g = gcd(*ints) if any(ints) else 1
        basis.append([x // g for x in ints])
    return basis


def charpoly_exact(a):
    """Monic characteristic polynomial of a square rational matrix via the
    Faddeev-LeVerrier recurrence. Coefficients ascending: p(t) = sum c_i t^i
    with c_m = 1. Intended for the small q-independent blocks (size <= 64).
    """
    m = len(a)
    if m > 64:
        raise DomainError(f"characteristic polynomial size cap exceeded: {m}")
    a = [[Fraction(x) for x in row] for row in a]
    coeffs = [Fraction(0)] * m + [Fraction(1)]
    mk = identity(m, Fraction(1))
    for k in range(1, m + 1):
        mk = mat_mul(a, mk)
        ck = Fraction(-sum(mk[i][i] for i in range(m)), k)
        coeffs[m - k] = ck
        for i in range(m):
            mk[i][i] += ck
    return coeffs
