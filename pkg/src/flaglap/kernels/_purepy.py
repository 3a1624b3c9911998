"""Pure-Python kernels, used when the compiled extension is unavailable.
Arbitrary-precision integers throughout, so no overflow concerns."""


def matmul_int(a, b):
    """Product of two integer matrices given as lists of rows."""
    n, m = len(a), len(a[0]) if a else 0
    p = len(b[0]) if b else 0
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append([sum(x * y for x, y in zip(row, col)) for col in bt])
    return out


def det_rank_mod(a, p):
    """Determinant (0 for non-square) and rank of ``a`` modulo the prime ``p``."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[x % p for x in row] for row in a]
    det = 1 if rows == cols else 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            det = 0
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            det = (p - det) % p
        pivval = m[r][c]
        det = det * pivval % p
        inv = pow(pivval, -1, p)
        for i in range(r + 1, rows):
            if m[i][c]:
                factor = m[i][c] * inv % p
                m[i] = [(x - factor * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    if rows == cols and r < rows:
        det = 0
    return det, r
