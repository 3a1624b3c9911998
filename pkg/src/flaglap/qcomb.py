"""Exact q-analog combinatorics: Gaussian binomials, the Carlitz inversion
pair, the triple-product coefficients, and asymptotic-order predictions.

Everything here is exact integer/rational arithmetic; the asymptotic
estimates only *describe* expected orders (the checks against exact values
live in the asymptotics module and the test suite).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import DomainError


def q_binomial(a, b, q):
    """Number of b-dimensional subspaces of F_q^a, as an exact integer.

    Returns 0 unless a >= b >= 0. Division is interleaved factor by factor
    to keep intermediates small; each partial quotient is itself a
    Gaussian binomial, so the division is always exact.
    """
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    if b < 0 or b > a:
        return 0
    b = min(b, a - b)
    result = 1
    for i in range(1, b + 1):
        result = result * (q ** (a - b + i) - 1) // (q**i - 1)
    return result


def complete_flag_count(g, q):
    """Number of complete flags of a g-dimensional space over F_q."""
    if g < 0:
        raise DomainError(f"negative dimension {g}")
    result = 1
    for j in range(2, g + 1):
        result *= (q**j - 1) // (q - 1)
    return result


def carlitz_forward(b, q):
    """a_n = sum_k (n choose k)_q b_k for a sequence b of rationals."""
    return [
        sum((Fraction(q_binomial(n, k, q)) * Fraction(b[k]) for k in range(n + 1)),
            Fraction(0))
        for n in range(len(b))
    ]


def carlitz_invert(a, q):
    """Inverse of :func:`carlitz_forward`:

    b_n = sum_k (-1)^(n-k) q^(C(k+1,2)+C(n,2)-kn) (n choose k)_q a_k.

    The exponent equals (n-k)(n-k-1)/2, hence is never negative.
    """
    if not a:
        raise DomainError("empty sequence")
    out = []
    for n in range(len(a)):
        acc = Fraction(0)
        for k in range(n + 1):
            exp = comb(k + 1, 2) + comb(n, 2) - k * n
            term = Fraction((-1) ** (n - k) * q**exp * q_binomial(n, k, q))
            acc += term * Fraction(a[k])
        out.append(acc)
    return out


def c_coefficient(i, j, k, m, n, q):
    """Coefficient c_{ijkm} in the expansion of a product of two inclusion
    matrices over the lower-dimensional products:

    c_{ijkm} = sum_r (-1)^(m-r) q^(C(r+1,2)+C(m,2)-rm) (m r)_q (n-i-k+r, j-i-k+r)_q.
    """
    if not (0 <= m <= k <= i <= j <= n):
        raise DomainError(f"need 0 <= m <= k <= i <= j <= n, got {(i, j, k, m, n)}")
    total = 0
    for r in range(m + 1):
        exp = comb(r + 1, 2) + comb(m, 2) - r * m
        total += (
            (-1) ** (m - r)
            * q**exp
            * q_binomial(m, r, q)
            * q_binomial(n - i - k + r, j - i - k + r, q)
        )
    return total


def c_short(i, j, k, n, q):
    """The shorthand c_{ijk} = c_{ijkk}."""
    return c_coefficient(i, j, k, k, n, q)


@dataclass(frozen=True)
class AsymptoticEstimate:
    """Leading term ``leading_coefficient * q**q_exponent`` with a relative
    correction of order ``q**error_exponent`` as q grows. Exponents are
    exact rationals (half-integers occur)."""

    leading_coefficient: Fraction
    q_exponent: Fraction
    error_exponent: Fraction

    def __post_init__(self):
        if self.error_exponent >= self.q_exponent:
            raise DomainError("correction term must be lower order")


def qbinom_ratio_estimate(a, b, k):
    """Predicted order of (a-k choose b-k)_q / (a choose b)_q: the ratio is
    q^(-k(a-b)) (1 + O(1/q))."""
    if not (0 <= b <= a) or k > b:
        raise DomainError(f"need 0 <= b <= a and k <= b, got {(a, b, k)}")
    exp = Fraction(-k * (a - b))
    return AsymptoticEstimate(Fraction(1), exp, exp - 1)


def c_ratio_estimate(i, j, k, n):
    """Predicted first-order behavior of c_{ijk} (n-i choose j-i)_q^{-1},
    which is 1 - q^(-(n-k-j+1)) (1 + O(1/q)) for k >= 1."""
    if not (1 <= k <= i < j <= n - k):
        raise DomainError(f"need 1 <= k <= i < j <= n-k, got {(i, j, k, n)}")
    return AsymptoticEstimate(Fraction(1), Fraction(0), Fraction(-(n - k - j + 1)))
