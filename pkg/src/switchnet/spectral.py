"""Inclusion matrices between subset levels, their Gram spectra, and
minimum-norm solves.

P_k has one row per k-subset and one column per (k+1)-subset of {1..n}
(colex-ranked), with a 1 exactly where the row subset is contained in the
column subset.  P_k P_k^T carries the Johnson-scheme spectrum
(n-k-i)(k+1-i) with multiplicity C(n,i) - C(n,i-1).

Solves come in two modes: exact rationals (Gaussian elimination on the
normal equations) for the construction pipeline, and floating point with
a residual contract for diagnostics.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .subsets import k_subsets

DEFAULT_TOL = 1e-10


class InclusionMatrix:
    """Sparse 0/1 inclusion structure of k-subsets into (k+1)-subsets."""

    def __init__(self, n: int, k: int):
        if not 0 <= k < n:
            raise ValueError(f"need 0 <= k < n, got k={k}, n={n}")
        self.n = n
        self.k = k
        self.rows = k_subsets(n, k)
        self.cols = k_subsets(n, k + 1)
        col_index = {c: j for j, c in enumerate(self.cols)}
        self.row_cols = []  # per row, the column indices of its supersets
        for A in self.rows:
            present = set(A)
            cols = []
            for v in range(1, n + 1):
                if v not in present:
                    cols.append(col_index[tuple(sorted(A + (v,)))])
            self.row_cols.append(sorted(cols))

    @property
    def shape(self):
        return (len(self.rows), len(self.cols))

    def toarray(self, dtype=float):
        m = np.zeros(self.shape, dtype=dtype)
        for i, cols in enumerate(self.row_cols):
            for j in cols:
                m[i, j] = 1
        return m

    def entry(self, i, j):
        return 1 if j in self.row_cols[i] else 0

    def apply(self, vec):
        """P_k @ vec for a dense column-indexed sequence (exact arithmetic ok)."""
        if len(vec) != len(self.cols):
            raise ValueError("vector length mismatch")
        return [sum((vec[j] for j in cols), start=Fraction(0)) for cols in self.row_cols]

    def write_matrix_market(self, fh):
        """Coordinate-format dump for offline inspection."""
        entries = [(i + 1, j + 1) for i, cols in enumerate(self.row_cols) for j in cols]
        fh.write("%%MatrixMarket matrix coordinate integer general\n")
        fh.write(f"{len(self.rows)} {len(self.cols)} {len(entries)}\n")
        for i, j in entries:
            fh.write(f"{i} {j} 1\n")


def inclusion_matrix(n: int, k: int) -> InclusionMatrix:
    return InclusionMatrix(n, k)


def johnson_spectrum(n: int, k: int):
    """Eigenvalues of P_k P_k^T with multiplicities, largest eigenvalue first.

    Requires k < n/2 (below that the Gram matrix is nonsingular).
    """
    if not 2 * k < n:
        raise ValueError(f"need k < n/2, got k={k}, n={n}")
    return [((n - k - i) * (k + 1 - i), comb(n, i) - (comb(n, i - 1) if i >= 1 else 0))
            for i in range(k + 1)]


@dataclass
class RestrictedGramReport:
    min_eigenvalue: float
    n: int
    k: int
    rows_kept: int
    cols_kept: int
    bad_vertex_count: int
    max_bad_partners: int
    hypotheses_hold: bool
    conclusion_holds: bool


def restricted_gram_min_eigenvalue(n: int, k: int, bad_vertices=(), bad_pairs=()) -> RestrictedGramReport:
    """Minimum eigenvalue of P P^T after deleting rows/columns that contain a
    bad vertex or a bad pair.  The report flags whether the sparsity
    hypotheses hold (|bad vertices| < n/4 and partner degree
    <= n / (2000 k^3)) and whether the min eigenvalue reaches n/2;
    under the hypotheses it always does.
    """
    bad_vertices = set(bad_vertices)
    bad_pairs = {frozenset(p) for p in bad_pairs}
    inc = InclusionMatrix(n, k)

    def clean(subset):
        s = set(subset)
        if s & bad_vertices:
            return False
        return not any(p <= s for p in bad_pairs)

    keep_rows = [i for i, A in enumerate(inc.rows) if clean(A)]
    keep_cols = [j for j, B in enumerate(inc.cols) if clean(B)]
    if not keep_rows or not keep_cols:
        raise ValueError("restriction deleted every row or column")
    P = inc.toarray()[np.ix_(keep_rows, keep_cols)]
    gram = P @ P.T
    eigs = np.linalg.eigvalsh(gram)
    min_eig = float(eigs[0])

    partners = {}
    for p in bad_pairs:
        a, b = tuple(p)
        if a in bad_vertices or b in bad_vertices:
            continue
        partners.setdefault(a, set()).add(b)
        partners.setdefault(b, set()).add(a)
    max_partners = max((len(v) for v in partners.values()), default=0)
    hypotheses = len(bad_vertices) < n / 4 and (k == 0 or max_partners <= n / (2000 * k**3))
    return RestrictedGramReport(
        min_eigenvalue=min_eig,
        n=n,
        k=k,
        rows_kept=len(keep_rows),
        cols_kept=len(keep_cols),
        bad_vertex_count=len(bad_vertices),
        max_bad_partners=max_partners,
        hypotheses_hold=hypotheses,
        conclusion_holds=min_eig >= n / 2,
    )


class SingularSystemError(ValueError):
    pass


class InconsistentSystemError(ValueError):
    pass


def _solve_exact_normal(gram, rhs):
    """Gaussian elimination with Fraction arithmetic; raises on singular."""
    r = len(gram)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(gram)]
    for col in range(r):
        pivot = next((i for i in range(col, r) if aug[i][col] != 0), None)
        if pivot is None:
            raise SingularSystemError("normal matrix P P^T is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(r):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [aug[i][r] for i in range(r)]


def min_norm_solve(P, x, tol: float = DEFAULT_TOL, return_witness: bool = False):
    """Minimum-norm y with P y = x for a full-row-rank P.

    The solution is y = P^T w with (P P^T) w = x, which places y in the row
    space of P.  Exact mode (any Fraction/int entries) solves the normal
    equations exactly; float mode checks the relative residual against tol.
    """
    rows = [list(r) for r in P]
    if not rows:
        raise ValueError("empty matrix")
    exact = all(isinstance(v, (int, Fraction)) for row in rows for v in row) and all(
        isinstance(v, (int, Fraction)) for v in x
    )
    r, c = len(rows), len(rows[0])
    if len(x) != r:
        raise ValueError("rhs length mismatch")
    if exact:
        gram = [
            [sum((Fraction(a) * Fraction(b) for a, b in zip(rows[i], rows[j])), start=Fraction(0))
             for j in range(r)]
            for i in range(r)
        ]
        w = _solve_exact_normal(gram, x)
        y = [sum((Fraction(rows[i][j]) * w[i] for i in range(r)), start=Fraction(0)) for j in range(c)]
        # exact arithmetic: P y = (P P^T) w = x identically
        return (y, w) if return_witness else y
    A = np.asarray(rows, dtype=float)
    b = np.asarray(x, dtype=float)
    gram = A @ A.T
    eigs = np.linalg.eigvalsh(gram)
    if eigs[0] <= tol * max(eigs[-1], 1.0):
        raise SingularSystemError("normal matrix P P^T is numerically singular")
    w = np.linalg.solve(gram, b)
    y = A.T @ w
    resid = np.linalg.norm(A @ y - b)
    if resid > tol * max(np.linalg.norm(b), 1.0):
        raise InconsistentSystemError(f"residual {resid:.3e} above tolerance")
    return (y, w) if return_witness else y
