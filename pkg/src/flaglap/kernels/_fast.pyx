# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels: int64 matrix product and modular Gaussian
elimination. Callers guarantee that int64 cannot overflow (see kernels
package for the dispatch logic)."""

import numpy as np

cimport numpy as cnp


def matmul_i64(cnp.int64_t[:, :] a, cnp.int64_t[:, :] b):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = a.shape[1]
    cdef Py_ssize_t p = b.shape[1]
    out_arr = np.zeros((n, p), dtype=np.int64)
    cdef cnp.int64_t[:, :] out = out_arr
    cdef Py_ssize_t i, j, k
    cdef cnp.int64_t aik
    with nogil:
        for i in range(n):
            for k in range(m):
                aik = a[i, k]
                if aik == 0:
                    continue
                for j in range(p):
                    out[i, j] += aik * b[k, j]
    return out_arr


def det_rank_mod(cnp.int64_t[:, :] a, cnp.int64_t p):
    """Determinant (0 for non-square) and rank of ``a`` modulo the prime
    ``p``. Requires p < 2**31 so that products fit in int64."""
    cdef Py_ssize_t rows = a.shape[0]
    cdef Py_ssize_t cols = a.shape[1]
    m_arr = np.remainder(np.asarray(a), p).astype(np.int64)
    cdef cnp.int64_t[:, :] m = m_arr
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef cnp.int64_t det = 1 if rows == cols else 0
    cdef cnp.int64_t inv, factor, pivval
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv == -1:
            det = 0
            continue
        if piv != r:
            for j in range(cols):
                m[r, j], m[piv, j] = m[piv, j], m[r, j]
            det = (p - det) % p
        pivval = m[r, c]
        det = (det * pivval) % p
        inv = pow(int(pivval), p - 2, int(p))
        for i in range(r + 1, rows):
            if m[i, c] == 0:
                continue
            factor = (m[i, c] * inv) % p
            for j in range(c, cols):
                m[i, j] = (m[i, j] - factor * m[r, j]) % p
        r += 1
    if r < min(rows, cols) or rows != cols:
        if rows == cols:
            det = 0
    # cdivision makes the C % keep the sign of the dividend; normalize the
    # residue with Python's % on the way out
    return int(det) % int(p), int(r)
