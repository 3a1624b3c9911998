"""The reduced q-independent blocks of the 0-dimensional Laplacian, their
exact characteristic polynomials and real spectra, and reconciliation of
the block-union spectrum against the full-matrix numeric spectrum."""

from dataclasses import dataclass
from fractions import Fraction

from . import exact, polys
from .errors import DomainError
from .qcomb import c_short, q_binomial
from .reports import EigenvalueEntry, SpectrumReport
from .subspaces import check_prime

DEFAULT_ROOT_PRECISION = Fraction(1, 10**12)


@dataclass
class BlockMatrix:
    """Reduced block of size n-2k+1 (k >= 1; rows and columns labeled by
    the dimensions k..n-k) or n-1 (k = 0; labels 1..n-1)."""

    n: int
    q: int
    k: int
    entries: list  # square list-of-rows of Fractions

    @property
    def size(self):
        return len(self.entries)

    @property
    def index_range(self):
        if self.k == 0:
            return range(1, self.n)
        return range(self.k, self.n - self.k + 1)


def build_block(n, q, k):
    """Exact reduced block: diagonal n-2; above the diagonal the entry at
    labels (i, j) is -c_{ijk} (n-i choose j-i)_q^{-1}; below it is
    -(i-k choose j-k)_q (i choose j)_q^{-1}. For k = 0 both collapse to -1.
    """
    check_prime(q)
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    if k < 0 or k > n // 2:
        raise DomainError(f"k={k} out of range [0, {n // 2}]")
    diag = Fraction(n - 2)
    if k == 0:
        size = n - 1
        entries = [
            [diag if i == j else Fraction(-1) for j in range(size)]
            for i in range(size)
        ]
        return BlockMatrix(n=n, q=q, k=k, entries=entries)
    labels = list(range(k, n - k + 1))
    entries = []
    for i in labels:
        row = []
        for j in labels:
            if i == j:
                row.append(diag)
            elif i < j:
                row.append(Fraction(-c_short(i, j, k, n, q),
                                    q_binomial(n - i, j - i, q)))
            else:
                row.append(Fraction(-q_binomial(i - k, j - k, q),
                                    q_binomial(i, j, q)))
        entries.append(row)
    return BlockMatrix(n=n, q=q, k=k, entries=entries)


def block_multiplicity(n, q, k):
    """Number of copies of the level-k block in the block-diagonal form."""
    return q_binomial(n, k, q) - q_binomial(n, k - 1, q)


def char_poly_exact(block):
    """Monic characteristic polynomial, coefficients ascending."""
    return exact.charpoly_exact(block.entries)


def real_roots(coeffs, precision=DEFAULT_ROOT_PRECISION):
    """All real roots of a monic rational polynomial as
    (value, multiplicity, (lo, hi)) with exact isolating intervals refined
    to the given width. Raises IntegrityError if any root is non-real."""
    out = []
    for lo, hi, mult in polys.real_roots_with_multiplicity(coeffs, precision):
        out.append((float((lo + hi) / 2), mult, (lo, hi)))
    return out


def spectrum_via_blocks(n, q, precision=DEFAULT_ROOT_PRECISION):
    """Exact spectrum of the 0-Laplacian as the multiset union of block
    spectra, each block root scaled by the block's copy count."""
    entries = []
    for k in range(0, n // 2 + 1):
        mult_factor = block_multiplicity(n, q, k)
        blk = build_block(n, q, k)
        for value, mult, interval in real_roots(char_poly_exact(blk), precision):
            entries.append(
                EigenvalueEntry(
                    value=value,
                    multiplicity=mult * mult_factor,
                    isolating_interval=interval,
                    block_k=k,
                )
            )
    entries.sort(key=lambda e: e.value)
    report = SpectrumReport(n=n, q=q, source="blocks", eigenvalues=entries)
    expected = sum(q_binomial(n, i, q) for i in range(1, n))
    assert report.total_multiplicity == expected
    return report


@dataclass
class ReconciliationReport:
    n: int
    q: int
    tol: float
    passed: bool
    max_pairing_distance: float
    total_multiplicity: int
    exact_conjugation: bool | None  # None when skipped for size
    mismatches: list


def reconcile(n, q, tol=1e-8, cluster_tol=1e-7, numeric_cap=4000,
              exact_check_cap=400):
    """Match the exact block-union spectrum against the full-matrix numeric
    spectrum as multisets. Sorted pairing is optimal in one dimension, so
    pairing expanded value lists index-by-index and checking the maximum
    distance decides the match. When the vertex count is small enough the
    stronger exact conjugation check also runs."""
    from .inclusion import verify_block_conjugation
    from .laplacian import assemble_laplacian, numeric_spectrum

    block_report = spectrum_via_blocks(n, q)
    lap = assemble_laplacian(n, q, 0)
    numeric_report = numeric_spectrum(lap, cluster_tol=cluster_tol,
                                      numeric_cap=numeric_cap)

    expanded_blocks = [
        e.value for e in block_report.eigenvalues for _ in range(e.multiplicity)
    ]
    expanded_numeric = [
        e.value for e in numeric_report.eigenvalues for _ in range(e.multiplicity)
    ]
    mismatches = []
    max_dist = 0.0
    if len(expanded_blocks) != len(expanded_numeric):
        mismatches.append(
            {"reason": "total multiplicity mismatch",
             "blocks": len(expanded_blocks), "numeric": len(expanded_numeric)}
        )
    else:
        for bval, nval in zip(expanded_blocks, expanded_numeric):
            dist = abs(bval - nval)
            max_dist = max(max_dist, dist)
            if dist > tol:
                mismatches.append({"block_value": bval, "numeric_value": nval,
                                   "distance": dist})
    exact_ok = None
    if lap.dimension <= exact_check_cap:
        ok, witness = verify_block_conjugation(n, q, laplacian=lap)
        exact_ok = ok
        if not ok:
            mismatches.append(witness)
    return ReconciliationReport(
        n=n, q=q, tol=tol, passed=not mismatches,
        max_pairing_distance=max_dist,
        total_multiplicity=len(expanded_blocks),
        exact_conjugation=exact_ok,
        mismatches=mismatches,
    )


def distinct_count(n, q):
    """Exact number of distinct eigenvalues across all blocks: the degree
    of the square-free part of the product of the block characteristic
    polynomials (shared roots across blocks collapse via the gcd inside
    the square-free computation)."""
    product = [Fraction(1)]
    for k in range(0, n // 2 + 1):
        product = polys.poly_mul(product, char_poly_exact(build_block(n, q, k)))
    return polys.degree(polys.squarefree_part(product))


def distinct_count_bound(n):
    return n * n // 4 + 2
