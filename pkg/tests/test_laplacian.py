"""Weighted Laplacian assembly checked against an independently built
coboundary operator: D has entries (-1)^a for facet removal, and the
oracle Laplacian is W_k^{-1} D^T W_{k+1} D in exact arithmetic."""

from fractions import Fraction

import numpy as np
import pytest

from flaglap import exact, laplacian
from flaglap.errors import DomainError, ResourceRefusal
from flaglap.qcomb import q_binomial
from flaglap.subspaces import enumerate_flags


def coboundary_matrix(n, q, k):
    """Signed facet-incidence matrix from (k+1)-simplices to k-simplices."""
    rows = laplacian.k_simplices(n, q, k + 1)
    cols = laplacian.k_simplices(n, q, k)
    col_index = {f.chain: i for i, f in enumerate(cols)}
    d = [[0] * len(cols) for _ in rows]
    for r, rho in enumerate(rows):
        for a in range(len(rho.chain)):
            facet = rho.chain[:a] + rho.chain[a + 1:]
            d[r][col_index[facet]] = (-1) ** a
    return d, rows, cols


def oracle_laplacian(n, q, k):
    d, rows, cols = coboundary_matrix(n, q, k)
    w_up = [laplacian.weight(f, n, q) for f in rows]
    w_down = [laplacian.weight(f, n, q) for f in cols]
    dt = exact.transpose(d)
    weighted = [[Fraction(x * w_up[j]) for j, x in enumerate(row)] for row in dt]
    m = exact.mat_mul(weighted, d)
    return [
        [Fraction(x, w_down[i]) for x in row] for i, row in enumerate(m)
    ]


@pytest.mark.parametrize("n,q,k", [(3, 2, 0), (3, 3, 0), (4, 2, 0), (4, 2, 1)])
def test_assembly_matches_coboundary_oracle(n, q, k):
    lap = laplacian.assemble_laplacian(n, q, k)
    assert lap.to_dense_fractions() == oracle_laplacian(n, q, k)


def brute_weight(flag, n, q, complete):
    chain = set(flag.chain)
    return sum(1 for full in complete if chain <= set(full.chain))


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2)])
def test_weight_counts_complete_extensions(n, q):
    complete = enumerate_flags(n, q, range(1, n))
    for k in range(0, n - 2):
        for f in laplacian.k_simplices(n, q, k)[::7]:
            assert laplacian.weight(f, n, q) == brute_weight(f, n, q, complete)


def test_weight_of_bad_signature():
    with pytest.raises(DomainError):
        laplacian.weight_of_signature((2, 2), 4, 2)
    with pytest.raises(DomainError):
        laplacian.weight_of_signature((0, 1), 4, 2)


def test_simplex_count_and_diagonal():
    n, q = 4, 2
    lap = laplacian.assemble_laplacian(n, q, 0)
    assert lap.dimension == sum(q_binomial(n, i, q) for i in range(1, n))
    assert lap.dimension == 65
    assert all(
        lap.entry(i, i) == n - 2 for i in range(lap.dimension)
    )


def test_vertex_counts_across_grid():
    expected = {(3, 2): 14, (4, 2): 65, (4, 3): 210, (5, 2): 372, (5, 3): 2662}
    for (n, q), count in expected.items():
        assert sum(q_binomial(n, i, q) for i in range(1, n)) == count


def test_self_adjointness_exact():
    for n, q, k in [(3, 2, 0), (4, 3, 0), (4, 2, 1)]:
        lap = laplacian.assemble_laplacian(n, q, k)
        assert laplacian.verify_weighted_self_adjoint(lap)


def test_numeric_spectrum_fano():
    lap = laplacian.assemble_laplacian(3, 2, 0)
    report = laplacian.numeric_spectrum(lap)
    assert report.total_multiplicity == 14
    got = [(round(e.value, 9), e.multiplicity) for e in report.eigenvalues]
    s = float(np.sqrt(2) / 3)
    assert got == [
        (0.0, 1),
        (round(1 - s, 9), 6),
        (round(1 + s, 9), 6),
        (2.0, 1),
    ]


def test_numeric_cap_refusal():
    lap = laplacian.assemble_laplacian(3, 2, 0)
    with pytest.raises(ResourceRefusal):
        laplacian.numeric_spectrum(lap, numeric_cap=5)


def test_assembly_refuses_oversized_complex():
    with pytest.raises(ResourceRefusal):
        laplacian.assemble_laplacian(5, 3, 1, max_simplices=100)


def test_assembly_domain_errors():
    with pytest.raises(DomainError):
        laplacian.assemble_laplacian(2, 2, 0)
    with pytest.raises(DomainError):
        laplacian.assemble_laplacian(4, 2, 2)
    with pytest.raises(DomainError):
        laplacian.assemble_laplacian(4, 4, 0)


def test_export_import_roundtrip():
    lap = laplacian.assemble_laplacian(3, 2, 0)
    text = laplacian.export_text(lap)
    back = laplacian.import_text(text)
    assert back.offdiag == lap.offdiag
    assert back.weights == lap.weights
    assert (back.n, back.q, back.k) == (3, 2, 0)
    assert laplacian.export_text(back) == text


def test_import_rejects_garbage():
    with pytest.raises(DomainError):
        laplacian.import_text("NOPE 1 2 3 4 5\n")


def test_symmetrize_is_symmetric():
    lap = laplacian.assemble_laplacian(4, 2, 0)
    s = laplacian.symmetrize(lap)
    assert np.max(np.abs(s - s.T)) < 1e-12
