"""Subspace inclusion matrices: entry semantics against raw vector-set
containment, row/column sum counts, the product and triple-product
identities, ranks, the annihilator basis, and the block conjugation."""

import pytest

from flaglap import blocks, inclusion
from flaglap.errors import DomainError
from flaglap.qcomb import q_binomial
from flaglap.subspaces import enumerate_subspaces

from test_subspaces import vector_set


def test_entries_are_vector_set_containment():
    n, q = 3, 2
    for i in range(n + 1):
        for j in range(i + 1):
            a = inclusion.build_inclusion_matrix(n, q, i, j)
            rows = enumerate_subspaces(n, q, i)
            cols = enumerate_subspaces(n, q, j)
            for r, u in enumerate(rows):
                ru = vector_set(u)
                for c, v in enumerate(cols):
                    assert a[r][c] == int(vector_set(v) <= ru)


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (4, 3)])
def test_row_and_column_sums(n, q):
    for i in range(n + 1):
        for j in range(i + 1):
            a = inclusion.build_inclusion_matrix(n, q, i, j)
            for row in a:
                assert sum(row) == q_binomial(i, j, q)
            for col in zip(*a):
                assert sum(col) == q_binomial(n - j, i - j, q)


def test_zero_dim_row_is_all_ones():
    a = inclusion.build_inclusion_matrix(4, 2, 2, 0)
    assert all(row == [1] for row in a)


def test_identity_on_equal_dims():
    a = inclusion.build_inclusion_matrix(3, 2, 1, 1)
    assert a == [
        [1 if r == c else 0 for c in range(7)] for r in range(7)
    ]


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (4, 3), (5, 2)])
def test_kantor_product_identity(n, q):
    for i in range(n + 1):
        for j in range(i + 1):
            for k in range(j + 1):
                ok, witness = inclusion.verify_kantor_product(n, q, i, j, k)
                assert ok, witness


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (4, 2), (4, 3)])
def test_triple_product_identity(n, q):
    for k in range(n + 1):
        for i in range(k, n + 1):
            for j in range(i, n + 1):
                ok, witness = inclusion.verify_triple_product(n, q, i, j, k)
                assert ok, witness


@pytest.mark.parametrize("n,q", [(4, 2), (4, 3), (5, 2)])
def test_rank_theorem(n, q):
    for k in range(n // 2 + 1):
        for i in range(k, n - k + 1):
            assert inclusion.rank_check(n, q, i, k) == q_binomial(n, k, q)


def test_rank_domain():
    with pytest.raises(DomainError):
        inclusion.rank_check(4, 2, 1, 3)


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (4, 3)])
def test_tilde_basis_dimensions_and_annihilation(n, q):
    for k in range(1, n // 2 + 1):
        basis = inclusion.tilde_basis(n, q, k)
        assert len(basis) == q_binomial(n, k, q) - q_binomial(n, k - 1, q)
        ok, witness = inclusion.verify_annihilation(n, q, k)
        assert ok, witness


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (4, 3)])
def test_decomposition(n, q):
    for i in range(1, n):
        ok, witness = inclusion.verify_decomposition(n, q, i)
        assert ok, witness


def test_block_basis_shape():
    n, q = 3, 2
    b, groups = inclusion.build_block_basis(n, q)
    total = sum(q_binomial(n, i, q) for i in range(1, n))
    assert len(b) == total and len(b[0]) == total
    assert sum(groups) == total


def test_block_diagonal_target_matches_blocks():
    n, q = 3, 2
    d = inclusion.block_diagonal_target(n, q)
    # upper-left copy must equal the level-0 block
    blk = blocks.build_block(n, q, 0)
    m = blk.size
    assert [row[:m] for row in d[:m]] == blk.entries


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (4, 2)])
def test_block_conjugation_exact(n, q):
    ok, witness = inclusion.verify_block_conjugation(n, q)
    assert ok, witness
