"""Subspaces and flags of F_q^n for prime q.

A subspace is represented by its reduced row echelon basis (pivots 1,
pivot columns otherwise zero, pivot columns strictly increasing), which is
unique per subspace and gives cheap equality, hashing and a deterministic
total order: dimension-major, then lexicographic on the flattened basis.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import DomainError, ResourceRefusal
from .qcomb import q_binomial

#: Enumerations with more than this many subspaces in one dimension are refused.
MAX_SUBSPACES_PER_DIM = 10**6

CACHE_ENV_VAR = "FLAGSPEC_CACHE_DIR"
_CACHE_MAGIC = b"FLSP"
_CACHE_VERSION = 1


def is_prime(q):
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def check_prime(q):
    if not is_prime(q):
        raise DomainError(f"q must be prime, got {q}")


def rref(rows, q):
    """Reduced row echelon form over F_q; returns a tuple of nonzero rows."""
    m = [list(r) for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % q), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, q)
        m[r] = [x * inv % q for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % q:
                f = m[i][c] % q
                m[i] = [(x - f * y) % q for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r])


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n in canonical RREF form. Immutable and hashable;
    sorting is dimension-major then lexicographic on the basis."""

    n: int = field(compare=False)
    q: int = field(compare=False)
    dim: int
    basis: tuple  # dim x n tuple-of-tuples in RREF

    def sort_key(self):
        return (self.dim, tuple(x for row in self.basis for x in row))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def is_trivial(self):
        return self.dim == 0 or self.dim == self.n


def canonicalize(rows, n, q):
    """The Subspace spanned by ``rows`` (possibly dependent, possibly zero)."""
    check_prime(q)
    basis = rref(rows, q)
    for row in basis:
        if len(row) != n:
            raise DomainError(f"row length {len(row)} != ambient dimension {n}")
    if rows and len(rows[0]) != n:
        raise DomainError(f"row length {len(rows[0])} != ambient dimension {n}")
    return Subspace(n=n, q=q, dim=len(basis), basis=basis)


def zero_subspace(n, q):
    return Subspace(n=n, q=q, dim=0, basis=())


def full_space(n, q):
    basis = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return Subspace(n=n, q=q, dim=n, basis=basis)


def _check_same_ambient(u, v):
    if (u.n, u.q) != (v.n, v.q):
        raise DomainError(f"ambient mismatch: {(u.n, u.q)} vs {(v.n, v.q)}")


def _reduce_against(vec, basis, q):
    """Reduce ``vec`` against RREF ``basis``; returns the residual vector."""
    v = list(vec)
    for row in basis:
        piv = next(i for i, x in enumerate(row) if x)
        if v[piv] % q:
            f = v[piv] % q
            v = [(a - f * b) % q for a, b in zip(v, row)]
    return v

def contains(big, small):
    """True iff ``small`` is a subspace of ``big`` (note argument order:
    contains(V, U) tests U <= V)."""
    _check_same_ambient(big, small)
    if small.dim > big.dim:
        return False
    return all(
        not any(_reduce_against(row, big.basis, big.q)) for row in small.basis
    )


def lattice_dims(u, w):
    """(dim(U+W), dim(U∩W)); the modular law makes the latter free."""
    _check_same_ambient(u, w)
    dim_sum = len(rref(list(u.basis) + list(w.basis), u.q))
    return dim_sum, u.dim + w.dim - dim_sum


def _pivot_patterns(n, d):
    return combinations(range(n), d)


def _enumerate_raw(n, q, d):
    """Yield RREF bases of all d-dimensional subspaces of F_q^n by choosing
    pivot columns and filling the free entries."""
    for pivots in _pivot_patterns(n, d):
        pivot_set = set(pivots)
        # free positions: to the right of the row's pivot, not a pivot column
        free = [
            (r, c)
            for r in range(d)
            for c in range(pivots[r] + 1, n)
            if c not in pivot_set
        ]
        for values in product(range(q), repeat=len(free)):
            m = [[0] * n for _ in range(d)]
            for r, p in enumerate(pivots):
                m[r][p] = 1
            for (r, c), v in zip(free, values):
                m[r][c] = v
            yield tuple(tuple(row) for row in m)


def enumerate_subspaces(n, q, d):
    """All d-dimensional subspaces of F_q^n, sorted by the canonical order.

    The result has exactly (n choose d)_q elements. A disk cache is used
    when the FLAGSPEC_CACHE_DIR environment variable is set; cached and
    uncached results are byte-identical.
    """
    check_prime(q)
    if d < 0 or d > n:
        raise DomainError(f"dimension {d} out of range for n={n}")
    count = q_binomial(n, d, q)
    if count > MAX_SUBSPACES_PER_DIM:
        raise ResourceRefusal(
            f"{count} subspaces of dimension {d} in F_{q}^{n} exceeds the "
            f"cap of {MAX_SUBSPACES_PER_DIM}"
        )
    cached = _cache_load(n, q, d)
    if cached is not None:
        return cached
    bases = sorted(_enumerate_raw(n, q, d))
    assert len(bases) == count
    result = [Subspace(n=n, q=q, dim=d, basis=b) for b in bases]
    _cache_store(n, q, d, result)
    return result


def subspaces_within(v, d):
    """All d-dimensional subspaces of the subspace ``v``, in canonical form
    with respect to the ambient space."""
    if d < 0 or d > v.dim:
        raise DomainError(f"dimension {d} out of range for a {v.dim}-dim space")
    out = []
    for coeffs in _enumerate_raw(v.dim, v.q, d):
        rows = [
            tuple(
                sum(c * b for c, b in zip(crow, col)) % v.q
                for col in zip(*v.basis)
            )
            for crow in coeffs
        ]
        out.append(canonicalize(rows, v.n, v.q))
    return out


@dataclass(frozen=True)
class Flag:
    """A strictly nested chain of non-trivial subspaces, ordered by
    increasing dimension."""

    chain: tuple  # tuple of Subspace, strictly increasing by inclusion

    @property
    def signature(self):
        return tuple(v.dim for v in self.chain)

    def __len__(self):
        return len(self.chain)

    def validate(self):
        for v in self.chain:
            if v.is_trivial():
                raise DomainError("flags consist of non-trivial subspaces")
        for a, b in zip(self.chain, self.chain[1:]):
            if a.dim >= b.dim or not contains(b, a):
                raise DomainError("chain is not strictly nested")
        return self

    def sort_key(self):
        return tuple(v.sort_key() for v in self.chain)


def validate_signature(n, signature):
    if any(d < 1 or d > n - 1 for d in signature):
        raise DomainError(f"signature entries must lie in [1, {n - 1}]")
    if any(a >= b for a, b in zip(signature, signature[1:])):
        raise DomainError("signature must be strictly increasing")


def enumerate_flags(n, q, signature):
    """All flags with the given dimension signature, sorted by chain keys.

    Enumerated top-down: the largest member ranges over the whole
    Grassmannian, then each smaller member over the subspaces of its
    successor.
    """
    check_prime(q)
    signature = tuple(signature)
    validate_signature(n, signature)
    if not signature:
        return [Flag(chain=())]

    def extend_down(top_chain, remaining):
        if not remaining:
            yield tuple(top_chain)
            return
        d = remaining[-1]
        for u in sorted(subspaces_within(top_chain[0], d)):
            yield from extend_down((u,) + top_chain, remaining[:-1])

    flags = []
    for top in enumerate_subspaces(n, q, signature[-1]):
        flags.extend(
            Flag(chain=c) for c in extend_down((top,), signature[:-1])
        )
    flags.sort(key=Flag.sort_key)
    return flags


# ---------------------------------------------------------------------------
# Optional disk cache: header FLSP, version u16, n u16, q u32, d u16,
# count u64, then packed RREF matrices (one byte per entry for q < 256,
# four bytes otherwise), row-major, in canonical order.


def _cache_path(n, q, d):
    root = os.environ.get(CACHE_ENV_VAR)
    if not root:
        return None
    return os.path.join(root, f"subspaces_n{n}_q{q}_d{d}.flsp")


def _entry_format(q):
    return "B" if q < 256 else "I"


def _cache_store(n, q, d, subspaces):
    path = _cache_path(n, q, d)
    if path is None:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fmt = _entry_format(q)
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(_CACHE_MAGIC)
        fh.write(struct.pack("<HHIHQ", _CACHE_VERSION, n, q, d, len(subspaces)))
        for s in subspaces:
            for row in s.basis:
                fh.write(struct.pack(f"<{len(row)}{fmt}", *row))
    os.replace(tmp, path)


def _cache_load(n, q, d):
    path = _cache_path(n, q, d)
    if path is None or not os.path.exists(path):
        return None
    with open(path, "rb") as fh:
        if fh.read(4) != _CACHE_MAGIC:
            return None
        version, cn, cq, cd, count = struct.unpack("<HHIHQ", fh.read(18))
        if (version, cn, cq, cd) != (_CACHE_VERSION, n, q, d):
            return None
        fmt = _entry_format(q)
        size = struct.calcsize(fmt)
        out = []
        for _ in range(count):
            basis = tuple(
                struct.unpack(f"<{n}{fmt}", fh.read(n * size)) for _ in range(d)
            )
            out.append(Subspace(n=n, q=q, dim=d, basis=basis))
    return out
