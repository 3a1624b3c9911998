"""Integer linear-algebra kernels with a compiled fast path.

``matmul_int`` and ``det_rank_mod`` accept integer matrices as lists of
rows. The compiled int64 kernels are used whenever the result provably
fits in 64 bits; otherwise (or when the extension failed to build) the
pure-Python arbitrary-precision versions run. ``BACKEND`` records which
implementation was selected at import time.
"""

from . import _purepy

try:
    import numpy as _np

    from . import _fast as _ext

    BACKEND = "cython"
except ImportError:  # pragma: no cover
    _ext = None
    BACKEND = "purepython"

_I64_LIMIT = 2**62


def _max_abs(m):
    return max((abs(x) for row in m for x in row), default=0)


def matmul_int(a, b):
    """Exact product of integer matrices (lists of rows)."""
    if not a or not b or not b[0]:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    if _ext is not None:
        inner = len(b)
        bound = _max_abs(a) * _max_abs(b) * inner
        if bound < _I64_LIMIT:
            res = _ext.matmul_i64(
                _np.array(a, dtype=_np.int64), _np.array(b, dtype=_np.int64)
            )
            return [list(map(int, row)) for row in res]
    return _purepy.matmul_int(a, b)


def det_rank_mod(a, p):
    """(det mod p, rank mod p) of an integer matrix, p an odd prime < 2**31."""
    if _ext is not None and p < 2**31 and (not a or _max_abs(a) < _I64_LIMIT):
        return _ext.det_rank_mod(_np.array(a, dtype=_np.int64), p)
    return _purepy.det_rank_mod(a, p)
