"""Univariate polynomials over Q and exact real-root isolation.

Polynomials are lists of Fraction coefficients in ascending degree order.
Root isolation uses Sturm sequences with bisection refinement; root
multiplicities come from Yun's square-free decomposition, so repeated
roots are detected exactly rather than numerically.
"""

from fractions import Fraction

from .errors import IntegrityError


def normalize(p):
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(p) - 1


def poly_add(p, q):
    n = max(len(p), len(q))
    return normalize(
        [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]
    )


def poly_neg(p):
    return [-c for c in p]


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return normalize(out)


def poly_divmod(p, q):
    p = normalize(p)
    q = normalize(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    rem = list(p)
    dq = degree(q)
    lead = q[-1]
    while len(rem) - 1 >= dq and rem:
        k = len(rem) - 1 - dq
        f = rem[-1] / lead
        quot[k] = f
        for i in range(len(q)):
            rem[k + i] -= f * q[i]
        rem = normalize(rem)
        if not rem:
            break
    return normalize(quot), rem


def poly_gcd(p, q):
    p, q = normalize(p), normalize(q)
    while q:
        p, q = q, poly_divmod(p, q)[1]
    if p:
        lead = p[-1]
        p = [c / lead for c in p]
    return p


def derivative(p):
    return normalize([c * i for i, c in enumerate(p)][1:])


def eval_at(p, x):
    acc = Fraction(0) if isinstance(x, Fraction) else 0.0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_part(p):
    p = normalize(p)
    if degree(p) < 1:
        return p
    g = poly_gcd(p, derivative(p))
    return poly_divmod(p, g)[0]


def squarefree_decomposition(p):
    """Yun's algorithm: list of (factor, multiplicity) with the factors
    square-free, pairwise coprime, and p = lead * prod factor^mult."""
    p = normalize(p)
    if degree(p) < 1:
        return []
    out = []
    g = poly_gcd(p, derivative(p))
    if degree(g) == 0:
        return [(p, 1)]
    w = poly_divmod(p, g)[0]
    i = 1
    while degree(w) > 0:
        y = poly_gcd(w, g)
        f = poly_divmod(w, y)[0]
        if degree(f) > 0:
            out.append((f, i))
        w = y
        g = poly_divmod(g, y)[0]
        i += 1
    return out


def sturm_chain(p):
    chain = [normalize(p), derivative(p)]
    while degree(chain[-1]) > 0:
        rem = poly_divmod(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append(poly_neg(rem))
    return [c for c in chain if c]


def _sign_changes(chain, x):
    signs = []
    for p in chain:
        v = eval_at(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_in(chain, a, b):
    """Number of distinct real roots in (a, b] for a square-free chain."""
    return _sign_changes(chain, a) - _sign_changes(chain, b)


def root_bound(p):
    """Cauchy bound: all real roots lie in (-B, B)."""
    p = normalize(p)
    lead = abs(p[-1])
    return Fraction(1) + max(abs(c) for c in p) / lead


def isolate_real_roots(p, precision=Fraction(1, 10**12)):
    """Isolating intervals (lo, hi] of width <= precision for every distinct
    real root of the square-free polynomial ``p``, in increasing order."""
    p = normalize(p)
    if degree(p) < 1:
        return []
    chain = sturm_chain(p)
    b = root_bound(p)
    total = count_roots_in(chain, -b, b)

    def split(lo, hi, count):
        if count == 0:
            return []
        if count == 1 and hi - lo <= precision:
            return [(lo, hi)]
        mid = (lo + hi) / 2
        if eval_at(p, mid) == 0:
            # nudge the cut so the root stays strictly inside one half
            mid = (lo + mid) / 2
        left = count_roots_in(chain, lo, mid)
        return split(lo, mid, left) + split(mid, hi, count - left)

    return split(-b, b, total)


def real_roots_with_multiplicity(p, precision=Fraction(1, 10**12)):
    """All real roots of ``p`` as (lo, hi, multiplicity) triples; raises
    IntegrityError if any roots are non-real (total multiplicity short of
    the degree)."""
    p = normalize(p)
    found = []
    total = 0
    for factor, mult in squarefree_decomposition(p):
        for lo, hi in isolate_real_roots(factor, precision):
            found.append((lo, hi, mult))
            total += mult
    if total != degree(p):
        raise IntegrityError(
            f"only {total} real roots (with multiplicity) for degree {degree(p)}"
        )
    found.sort(key=lambda t: t[0])
    return found
