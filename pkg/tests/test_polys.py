"""Rational polynomial arithmetic, square-free decomposition, Sturm root
counting, and certified real-root isolation. Oracle polynomials are built
from known factorizations, so every root and multiplicity is known."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flaglap import polys
from flaglap.errors import IntegrityError


def from_roots(roots_with_mult):
    p = [Fraction(1)]
    for root, mult in roots_with_mult:
        for _ in range(mult):
            p = polys.poly_mul(p, [-Fraction(root), Fraction(1)])
    return p


def test_divmod_roundtrip():
    p = [Fraction(x) for x in (2, 0, -3, 1)]
    d = [Fraction(x) for x in (-1, 1)]
    quot, rem = polys.poly_divmod(p, d)
    assert polys.poly_add(polys.poly_mul(quot, d), rem) == polys.normalize(p)


@settings(deadline=None, max_examples=50)
@given(
    st.lists(
        st.tuples(
            st.fractions(min_value=-6, max_value=6, max_denominator=3),
            st.integers(1, 3),
        ),
        min_size=1,
        max_size=3,
        unique_by=lambda t: t[0],
    )
)
def test_real_roots_recover_known_factorization(roots):
    p = from_roots(roots)
    got = polys.real_roots_with_multiplicity(p, Fraction(1, 10**20))
    expected = sorted(roots)
    assert len(got) == len(expected)
    for (lo, hi, mult), (root, want_mult) in zip(got, expected):
        assert mult == want_mult
        assert lo <= Fraction(root) <= hi
        assert hi - lo <= Fraction(1, 10**20)


def test_squarefree_part_degree():
    p = from_roots([(1, 3), (2, 1), (Fraction(1, 2), 2)])
    sf = polys.squarefree_part(p)
    assert polys.degree(sf) == 3
    for root in (1, 2, Fraction(1, 2)):
        assert polys.eval_at(sf, Fraction(root)) == 0


def test_squarefree_decomposition_structure():
    p = from_roots([(0, 1), (3, 2), (-1, 4)])
    parts = polys.squarefree_decomposition(p)
    recon = [Fraction(1)]
    for factor, mult in parts:
        for _ in range(mult):
            recon = polys.poly_mul(recon, factor)
    lead = recon[-1]
    recon = [c / lead for c in recon]
    plead = p[-1]
    assert recon == [c / plead for c in p]


def test_sturm_counts_roots_in_intervals():
    # roots at -2, 1/3, 5
    p = from_roots([(-2, 1), (Fraction(1, 3), 1), (5, 1)])
    chain = polys.sturm_chain(p)
    assert polys.count_roots_in(chain, Fraction(-3), Fraction(0)) == 1
    assert polys.count_roots_in(chain, Fraction(0), Fraction(2)) == 1
    assert polys.count_roots_in(chain, Fraction(-10), Fraction(10)) == 3
    assert polys.count_roots_in(chain, Fraction(6), Fraction(7)) == 0


def test_root_bound_contains_roots():
    p = from_roots([(-7, 1), (11, 1)])
    b = polys.root_bound(p)
    assert b >= 11


def test_isolation_separates_close_roots():
    p = from_roots([(Fraction(1, 1000), 1), (Fraction(2, 1000), 1)])
    intervals = polys.isolate_real_roots(p, Fraction(1, 10**9))
    assert len(intervals) == 2
    (a1, b1), (a2, b2) = sorted(intervals)
    assert b1 < a2
    assert a1 <= Fraction(1, 1000) <= b1
    assert a2 <= Fraction(2, 1000) <= b2


def test_nonreal_roots_raise():
    # t^2 + 1 has no real roots; callers expecting a full real spectrum
    # must hear about it
    with pytest.raises(IntegrityError):
        polys.real_roots_with_multiplicity(
            [Fraction(1), Fraction(0), Fraction(1)]
        )


def test_eval_and_derivative():
    p = [Fraction(1), Fraction(-2), Fraction(3)]  # 3t^2 - 2t + 1
    assert polys.eval_at(p, Fraction(2)) == 9
    assert polys.derivative(p) == [Fraction(-2), Fraction(6)]


def test_gcd_is_monic_common_factor():
    common = from_roots([(4, 1)])
    p = polys.poly_mul(common, from_roots([(1, 1)]))
    q = polys.poly_mul(common, from_roots([(2, 1)]))
    g = polys.poly_gcd(p, q)
    assert g == [Fraction(-4), Fraction(1)]
