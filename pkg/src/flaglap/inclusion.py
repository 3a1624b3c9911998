"""Subspace inclusion matrices, their product and rank identities, and the
exact change of basis that block-diagonalizes the 0-dimensional Laplacian.

All matrices are integer lists-of-rows indexed by the canonical subspace
enumeration. Verification functions return (pass, witness): the witness
localizes the first failing entry, suitable for JSON reporting.
"""

from fractions import Fraction
from functools import lru_cache
from math import lcm

from . import exact, kernels
from .errors import DomainError, ResourceRefusal
from .qcomb import c_coefficient, q_binomial
from .subspaces import check_prime, enumerate_subspaces, subspaces_within

#: Inclusion matrices bigger than this many entries are refused.
MAX_ENTRIES = 10**8


@lru_cache(maxsize=None)
def _spaces(n, q, d):
    return tuple(enumerate_subspaces(n, q, d))


@lru_cache(maxsize=None)
def _space_index(n, q, d):
    return {s.basis: i for i, s in enumerate(_spaces(n, q, d))}


def build_inclusion_matrix(n, q, i, j):
    """0/1 matrix indexed S(i) x S(j); entry 1 iff one subspace contains
    the other."""
    check_prime(q)
    if not (0 <= i <= n and 0 <= j <= n):
        raise DomainError(f"dimensions out of range: {(i, j, n)}")
    rows, cols = q_binomial(n, i, q), q_binomial(n, j, q)
    if rows * cols > MAX_ENTRIES:
        raise ResourceRefusal(f"inclusion matrix {rows}x{cols} exceeds cap")
    if i == j:
        return exact.identity(rows)
    if i > j:
        return exact.transpose(build_inclusion_matrix(n, q, j, i))
    # i < j: walk each j-space's i-dimensional subspaces
    m = [[0] * cols for _ in range(rows)]
    idx_i = _space_index(n, q, i)
    for col, v in enumerate(_spaces(n, q, j)):
        for u in subspaces_within(v, i):
            m[idx_i[u.basis]][col] = 1
    return m


def verify_kantor_product(n, q, i, j, k):
    """A_ij A_jk = (i-k choose j-k)_q A_ik for k <= j <= i."""
    if not (0 <= k <= j <= i <= n):
        raise DomainError(f"need k <= j <= i <= n, got {(i, j, k, n)}")
    lhs = kernels.matmul_int(
        build_inclusion_matrix(n, q, i, j), build_inclusion_matrix(n, q, j, k)
    )
    scalar = q_binomial(i - k, j - k, q)
    rhs = exact.mat_scale(build_inclusion_matrix(n, q, i, k), scalar)
    return _matrix_equal(lhs, rhs, check="kantor", params=(n, q, i, j, k))


def verify_triple_product(n, q, i, j, k):
    """A_ij A_jk = sum_m c_{ijkm} A_im A_mk for k <= i <= j."""
    if not (0 <= k <= i <= j <= n):
        raise DomainError(f"need k <= i <= j <= n, got {(i, j, k, n)}")
    lhs = kernels.matmul_int(
        build_inclusion_matrix(n, q, i, j), build_inclusion_matrix(n, q, j, k)
    )
    rhs = None
    for m in range(k + 1):
        term = exact.mat_scale(
            kernels.matmul_int(
                build_inclusion_matrix(n, q, i, m),
                build_inclusion_matrix(n, q, m, k),
            ),
            c_coefficient(i, j, k, m, n, q),
        )
        rhs = term if rhs is None else [
            [x + y for x, y in zip(ra, rb)] for ra, rb in zip(rhs, term)
        ]
    return _matrix_equal(lhs, rhs, check="triple_product", params=(n, q, i, j, k))


def rank_check(n, q, i, k):
    """Exact rank of A_ik over Q; equals (n choose k)_q in the admissible
    range k <= floor(n/2), k <= i <= n-k."""
    if not (0 <= k <= n // 2 and k <= i <= n - k):
        raise DomainError(f"need k <= n/2 and k <= i <= n-k, got {(i, k, n)}")
    return exact.rank_exact(build_inclusion_matrix(n, q, i, k))


def tilde_basis(n, q, k):
    """Integer column basis of the 'new' subspace of E^k: the exact null
    space of A_{k-1,k} (all of E^0 for k = 0). Columns are primitive
    integer vectors in the deterministic reduced-echelon order."""
    if not (0 <= k <= n // 2):
        raise DomainError(f"need 0 <= k <= n/2, got k={k}")
    if k == 0:
        return [[1]]
    cols = exact.nullspace_int(build_inclusion_matrix(n, q, k - 1, k))
    expected = q_binomial(n, k, q) - q_binomial(n, k - 1, q)
    assert len(cols) == expected
    return cols


def verify_annihilation(n, q, k):
    """Every tilde-basis column v of level k satisfies A_jk v = 0 for j < k
    and A_ij A_jk v = 0 for i < k <= j <= n."""
    if not (1 <= k <= n // 2):
        raise DomainError(f"need 1 <= k <= n/2, got k={k}")
    vs = tilde_basis(n, q, k)
    for j in range(k):
        a = build_inclusion_matrix(n, q, j, k)
        for ci, v in enumerate(vs):
            if any(exact.mat_vec(a, v)):
                return False, {"check": "annihilation", "stage": "A_jk",
                               "j": j, "column": ci}
    for j in range(k, n + 1):
        ajk = build_inclusion_matrix(n, q, j, k)
        images = [exact.mat_vec(ajk, v) for v in vs]
        for i in range(k):
            aij = build_inclusion_matrix(n, q, i, j)
            for ci, u in enumerate(images):
                if any(exact.mat_vec(aij, u)):
                    return False, {"check": "annihilation", "stage": "A_ij A_jk",
                                   "i": i, "j": j, "column": ci}
    return True, None


def _embedded_columns(n, q, i, k):
    """Columns A_ik v for v in the tilde basis of level k, as vectors in E^i."""
    a = build_inclusion_matrix(n, q, i, k)
    return [exact.mat_vec(a, v) for v in tilde_basis(n, q, k)]


def verify_decomposition(n, q, i):
    """The images A_ik(tilde basis of level k) over admissible k jointly
    form a basis of E^i."""
    if not (0 <= i <= n):
        raise DomainError(f"need 0 <= i <= n, got i={i}")
    cols = []
    for k in range(0, n // 2 + 1):
        if k <= i <= n - k:
            cols.extend(_embedded_columns(n, q, i, k))
    dim = q_binomial(n, i, q)
    if len(cols) != dim:
        return False, {"check": "decomposition", "i": i,
                       "columns": len(cols), "expected": dim}
    rank = exact.rank_exact(exact.transpose(cols))
    if rank != dim:
        return False, {"check": "decomposition", "i": i,
                       "rank": rank, "expected": dim}
    return True, None


def vertex_offsets(n, q):
    """Starting offset of each S(i) block, i = 1..n-1, in the canonical
    vertex ordering of the flag complex (dimension-major)."""
    offsets = {}
    pos = 0
    for i in range(1, n):
        offsets[i] = pos
        pos += q_binomial(n, i, q)
    return offsets, pos


def build_block_basis(n, q):
    """Square change-of-basis matrix B for C^0: columns are A_ik v, grouped
    by level k ascending, then tilde-basis column, then i ascending. In
    this basis the 0-Laplacian is block diagonal with one q-independent
    block per (k, column) group."""
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    offsets, total = vertex_offsets(n, q)
    columns = []
    group_sizes = []
    for k in range(0, n // 2 + 1):
        vs = tilde_basis(n, q, k)
        i_range = range(max(1, k), min(n - 1, n - k) + 1)
        for v in vs:
            group_sizes.append(len(i_range))
            for i in i_range:
                a = build_inclusion_matrix(n, q, i, k)
                img = exact.mat_vec(a, v)
                col = [0] * total
                col[offsets[i] : offsets[i] + len(img)] = img
                columns.append(col)
    assert len(columns) == total
    b = exact.transpose(columns)
    return b, group_sizes


def block_diagonal_target(n, q):
    """The block diagonal matrix the conjugation must produce: for each
    level k, one copy of the reduced block per tilde-basis column."""
    from .blocks import build_block  # local import to avoid a cycle

    blocks = []
    for k in range(0, n // 2 + 1):
        mult = q_binomial(n, k, q) - q_binomial(n, k - 1, q)
        blk = build_block(n, q, k).entries
        blocks.extend([blk] * mult)
    total = sum(len(b) for b in blocks)
    out = [[Fraction(0)] * total for _ in range(total)]
    pos = 0
    for blk in blocks:
        for r, row in enumerate(blk):
            for c, v in enumerate(row):
                out[pos + r][pos + c] = v
        pos += len(blk)
    return out


def verify_block_conjugation(n, q, laplacian=None):
    """Exact check that the 0-Laplacian in the basis B equals the block
    diagonal target: B invertible and Δ0 B = B D entry by entry.

    Both sides are scaled by a common denominator and compared as integer
    matrices, avoiding a rational inverse.
    """
    from .laplacian import assemble_laplacian

    lap = laplacian if laplacian is not None else assemble_laplacian(n, q, 0)
    delta = lap.to_dense_fractions()
    b, _groups = build_block_basis(n, q)
    d = block_diagonal_target(n, q)
    if not exact.is_invertible(b):
        return False, {"check": "block_conjugation", "reason": "B singular"}
    delta_int, dd = exact.scale_to_int(delta)
    d_int, dd2 = exact.scale_to_int(d)
    common = lcm(dd, dd2)
    delta_int = exact.mat_scale(delta_int, common // dd)
    d_int = exact.mat_scale(d_int, common // dd2)
    lhs = kernels.matmul_int(delta_int, b)
    rhs = kernels.matmul_int(b, d_int)
    return _matrix_equal(lhs, rhs, check="block_conjugation", params=(n, q))


def _matrix_equal(a, b, check, params):
    for r, (ra, rb) in enumerate(zip(a, b)):
        for c, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                return False, {"check": check, "params": params,
                               "row": r, "col": c,
                               "lhs": str(x), "rhs": str(y)}
    return True, None
