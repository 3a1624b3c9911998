"""The compiled and pure-Python kernels must agree bit for bit, and the
dispatcher must route big-integer inputs to the arbitrary-precision path."""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from flaglap import exact, kernels
from flaglap.kernels import _purepy


def naive_matmul(a, b):
    return [
        [sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


@settings(deadline=None, max_examples=50)
@given(st.data())
def test_matmul_matches_naive(data):
    r = data.draw(st.integers(1, 5))
    m = data.draw(st.integers(1, 5))
    c = data.draw(st.integers(1, 5))
    ints = st.integers(-10**6, 10**6)
    a = [[data.draw(ints) for _ in range(m)] for _ in range(r)]
    b = [[data.draw(ints) for _ in range(c)] for _ in range(m)]
    assert kernels.matmul_int(a, b) == naive_matmul(a, b)


def test_matmul_big_integers_use_exact_path():
    big = 2**80
    a = [[big, 1], [0, big]]
    b = [[big, 0], [1, 1]]
    got = kernels.matmul_int(a, b)
    assert got == naive_matmul(a, b)
    assert got[0][0] == big * big + 1


def test_matmul_empty_shapes():
    assert kernels.matmul_int([], [[1]]) == []
    assert kernels.matmul_int([[1]], [[]]) == [[]]


def test_purepy_and_dispatcher_agree():
    rng = random.Random(3)
    a = [[rng.randrange(-1000, 1000) for _ in range(20)] for _ in range(20)]
    b = [[rng.randrange(-1000, 1000) for _ in range(20)] for _ in range(20)]
    assert kernels.matmul_int(a, b) == _purepy.matmul_int(a, b)


def brute_det_mod(a, p):
    m = [[Fraction(x % p) for x in row] for row in a]
    d = exact.det_exact(m)
    assert d.denominator == 1
    return d.numerator % p


def test_det_rank_mod_against_exact_det():
    rng = random.Random(7)
    p = 2147483647
    for _ in range(25):
        size = rng.randrange(1, 5)
        a = [[rng.randrange(-50, 50) for _ in range(size)] for _ in range(size)]
        det, rank = kernels.det_rank_mod(a, p)
        assert det == brute_det_mod(a, p)
        assert rank == exact.rank_exact(a)  # p too large for rank collapse here


def test_det_rank_mod_singular():
    p = 101
    det, rank = kernels.det_rank_mod([[1, 2], [2, 4]], p)
    assert det == 0 and rank == 1


def test_det_rank_mod_backends_agree():
    rng = random.Random(9)
    p = 2147483629
    for _ in range(10):
        size = rng.randrange(1, 6)
        a = [[rng.randrange(-10**6, 10**6) for _ in range(size)]
             for _ in range(size)]
        assert kernels.det_rank_mod(a, p) == _purepy.det_rank_mod(a, p)


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "purepython")
