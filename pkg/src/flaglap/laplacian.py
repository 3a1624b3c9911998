"""Weighted upper Laplacians of the flag complex of F_q^n.

The weight of a flag is the number of complete flags extending it,
evaluated in closed form as a product of complete-flag counts over the
dimension gaps of the augmented signature. Off-diagonal Laplacian entries
are generated by walking the (k+1)-simplices: every interacting pair of
k-simplices has a unique common extension, so each nonzero entry is
produced exactly once.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import DomainError, ResourceRefusal
from .qcomb import complete_flag_count, q_binomial
from .reports import EigenvalueEntry, SpectrumReport
from .subspaces import Flag, check_prime, enumerate_flags

#: Laplacians with more simplices than this are refused for assembly.
MAX_SIMPLICES = 20_000
#: Dense numeric eigensolves above this dimension are refused.
DEFAULT_NUMERIC_CAP = 4000


def weight_of_signature(signature, n, q):
    """Number of complete flags extending any flag with this signature:
    the product over the gaps of the augmented signature (0, ..., n) of the
    complete-flag count of a gap-sized space."""
    aug = (0,) + tuple(signature) + (n,)
    if any(a >= b for a, b in zip(aug, aug[1:])):
        raise DomainError(f"invalid signature {signature}")
    w = 1
    for a, b in zip(aug, aug[1:]):
        w *= complete_flag_count(b - a, q)
    return w


def weight(flag, n, q):
    """Weight of a flag (or of a bare dimension signature)."""
    signature = flag.signature if isinstance(flag, Flag) else tuple(flag)
    return weight_of_signature(signature, n, q)


@dataclass
class LaplacianMatrix:
    """Exact weighted upper k-Laplacian. Off-diagonal entries are stored
    sparsely; the diagonal is constant n-k-2."""

    n: int
    q: int
    k: int
    simplices: list  # ordered list of Flag
    weights: list  # parallel list of exact integer weights
    offdiag: dict  # (row, col) -> Fraction, nonzero entries only
    index: dict = field(repr=False, default_factory=dict)

    @property
    def dimension(self):
        return len(self.simplices)

    @property
    def diagonal_value(self):
        return self.n - self.k - 2

    def entry(self, r, c):
        if r == c:
            return Fraction(self.diagonal_value)
        return self.offdiag.get((r, c), Fraction(0))

    def to_dense_fractions(self):
        m = self.dimension
        zero = Fraction(0)
        diag = Fraction(self.diagonal_value)
        rows = [[zero] * m for _ in range(m)]
        for i in range(m):
            rows[i][i] = diag
        for (r, c), v in self.offdiag.items():
            rows[r][c] = v
        return rows

    def to_dense_float(self):
        m = self.dimension
        a = np.zeros((m, m))
        np.fill_diagonal(a, float(self.diagonal_value))
        for (r, c), v in self.offdiag.items():
            a[r, c] = float(v)
        return a


def k_simplices(n, q, k):
    """All k-simplices (flags of k+1 subspaces), ordered by signature
    (lexicographic) then by chain; deterministic across runs."""
    out = []
    for signature in combinations(range(1, n), k + 1):
        out.extend(enumerate_flags(n, q, signature))
    return out


def assemble_laplacian(n, q, k, max_simplices=MAX_SIMPLICES):
    """Exact matrix of the weighted upper k-Laplacian of the flag complex."""
    check_prime(q)
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    if k < 0 or k > n - 3:
        raise DomainError(f"k={k} out of range [0, {n - 3}]")
    simplices = k_simplices(n, q, k)
    if len(simplices) > max_simplices:
        raise ResourceRefusal(
            f"{len(simplices)} {k}-simplices exceeds cap {max_simplices}"
        )
    index = {f.chain: i for i, f in enumerate(simplices)}
    weights = [weight(f, n, q) for f in simplices]
    offdiag = {}
    # Each interacting pair (sigma, tau) with |sigma ∩ tau| = k has the
    # unique common extension rho = sigma ∪ tau; generate entries from rho.
    for rho in k_simplices(n, q, k + 1):
        dims = (0,) + rho.signature + (n,)
        facets = []
        ratios = []
        for a in range(len(rho.chain)):
            chain = rho.chain[:a] + rho.chain[a + 1:]
            facets.append(index[chain])
            r = dims[a + 2] - dims[a]
            t = dims[a + 1] - dims[a]
            ratios.append(Fraction(1, q_binomial(r, t, q)))
        for a, row in enumerate(facets):
            for b, col in enumerate(facets):
                if a == b:
                    continue
                eps = abs(a - b) - 1
                offdiag[(row, col)] = (-1) ** (eps + 1) * ratios[a]
    return LaplacianMatrix(
        n=n, q=q, k=k, simplices=simplices, weights=weights,
        offdiag=offdiag, index=index,
    )


def symmetrize(lap):
    """S = W^(1/2) Δ W^(-1/2) as a float array; symmetric because Δ is
    self-adjoint in the weighted inner product."""
    m = lap.dimension
    s = np.zeros((m, m))
    np.fill_diagonal(s, float(lap.diagonal_value))
    w = [float(x) for x in lap.weights]
    for (r, c), v in lap.offdiag.items():
        s[r, c] = float(v) * np.sqrt(w[r] / w[c])
    return s


def numeric_spectrum(lap, cluster_tol=1e-7, numeric_cap=DEFAULT_NUMERIC_CAP):
    """Ground-truth dense spectrum of the symmetrized Laplacian, clustered
    into (value, multiplicity) pairs."""
    if lap.dimension > numeric_cap:
        raise ResourceRefusal(
            f"matrix dimension {lap.dimension} exceeds numeric cap {numeric_cap}"
        )
    vals = np.linalg.eigvalsh(symmetrize(lap))
    entries = []
    i = 0
    while i < len(vals):
        j = i
        while j + 1 < len(vals) and vals[j + 1] - vals[j] < cluster_tol:
            j += 1
        group = vals[i : j + 1]
        entries.append(
            EigenvalueEntry(value=float(np.mean(group)), multiplicity=len(group))
        )
        i = j + 1
    return SpectrumReport(
        n=lap.n, q=lap.q, source="numeric", eigenvalues=entries,
        cluster_tol=cluster_tol,
    )


def verify_weighted_self_adjoint(lap):
    """W Δ = Δᵀ W exactly."""
    for (r, c), v in lap.offdiag.items():
        if lap.weights[r] * v != lap.weights[c] * lap.offdiag.get((c, r), Fraction(0)):
            return False
    return True


def row_sums(lap):
    sums = [Fraction(lap.diagonal_value)] * lap.dimension
    for (r, _c), v in lap.offdiag.items():
        sums[r] += v
    return sums


# ---------------------------------------------------------------------------
# Text export: "FLAGLAP n q k rows cols", one "row col num/den" triple per
# nonzero entry (diagonal included), then a WEIGHTS section. Bit-exact
# round-trip.


def export_text(lap):
    lines = [f"FLAGLAP {lap.n} {lap.q} {lap.k} {lap.dimension} {lap.dimension}"]
    for i in range(lap.dimension):
        d = lap.diagonal_value
        if d:
            lines.append(f"{i} {i} {d}/1")
    for (r, c) in sorted(lap.offdiag):
        v = lap.offdiag[(r, c)]
        lines.append(f"{r} {c} {v.numerator}/{v.denominator}")
    lines.append("WEIGHTS")
    for i, w in enumerate(lap.weights):
        lines.append(f"{i} {w}")
    return "\n".join(lines) + "\n"


def import_text(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = lines[0].split()
    if header[0] != "FLAGLAP":
        raise DomainError("not a FLAGLAP export")
    n, q, k, rows, cols = map(int, header[1:])
    if rows != cols:
        raise DomainError("non-square FLAGLAP matrix")
    offdiag = {}
    weights = [0] * rows
    in_weights = False
    diag = n - k - 2
    for ln in lines[1:]:
        if ln.strip() == "WEIGHTS":
            in_weights = True
            continue
        parts = ln.split()
        if in_weights:
            weights[int(parts[0])] = int(parts[1])
        else:
            r, c = int(parts[0]), int(parts[1])
            num, den = parts[2].split("/")
            v = Fraction(int(num), int(den))
            if r == c:
                if v != diag:
                    raise DomainError("diagonal entry inconsistent with header")
            else:
                offdiag[(r, c)] = v
    return LaplacianMatrix(
        n=n, q=q, k=k, simplices=[None] * rows, weights=weights, offdiag=offdiag
    )
