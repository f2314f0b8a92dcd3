"""Exact linear algebra over the rationals.

Two engines live here.  ``solve_linear``/``nullspace``/``rank`` run
fraction-free (Bareiss) elimination on integer-scaled dense matrices and
are meant for the small systems behind the separability criteria.
``SparseSpan`` keeps a fully reduced row echelon basis of dict rows and is
used for spans with many sparse generators (ideals, relation spaces,
commutator kernels).  Nothing is ever rounded.
"""
from fractions import Fraction
from math import lcm
from typing import NamedTuple, Optional, Sequence

Q = Fraction

Vector = tuple
Matrix = list


def parse_rational(text) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``.  Raises ``ValueError`` on anything else,
    including a zero denominator."""
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string, got {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# dense helpers --------------------------------------------------------------

def zeros(n) -> Vector:
    return (Q(0),) * n


def unit_vector(n, i) -> Vector:
    v = [Q(0)] * n
    v[i] = Q(1)
    return tuple(v)


def vadd(a, b) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a) -> Vector:
    return tuple(c * x for x in a)


def is_zero(v) -> bool:
    return not any(v)


def vsum(vectors, n) -> Vector:
    acc = [Q(0)] * n
    for v in vectors:
        for i, x in enumerate(v):
            if x:
                acc[i] += x
    return tuple(acc)


def identity(n) -> Matrix:
    return [[Q(int(i == j)) for j in range(n)] for i in range(n)]


def zero_matrix(rows, cols) -> Matrix:
    return [[Q(0)] * cols for _ in range(rows)]


def matvec(M, v) -> Vector:
    nz = [(j, x) for j, x in enumerate(v) if x]
    out = []
    for row in M:
        s = Q(0)
        for j, x in nz:
            m = row[j]
            if m:
                s += m * x
        out.append(s)
    return tuple(out)


def matmul(A, B, inner_cols=None) -> Matrix:
    """Product of row-major matrices; ``inner_cols`` gives the column count
    of ``B`` when ``B`` has no rows."""
    ncols = len(B[0]) if B else (inner_cols or 0)
    out = []
    for row in A:
        acc = [Q(0)] * ncols
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def transpose(M) -> Matrix:
    return [list(col) for col in zip(*M)]


def columns(M) -> list:
    return [tuple(col) for col in zip(*M)]


def from_columns(cols, nrows) -> Matrix:
    if not cols:
        return [[] for _ in range(nrows)]
    return [list(r) for r in zip(*cols)]


def to_sparse(v) -> dict:
    return {i: x for i, x in enumerate(v) if x}


def to_dense(d, n) -> Vector:
    v = [Q(0)] * n
    for i, x in d.items():
        v[i] = x
    return tuple(v)


# Bareiss elimination --------------------------------------------------------

def _integer_rows(rows):
    out = []
    for row in rows:
        row = [Q(x) for x in row]
        m = lcm(*(x.denominator for x in row)) if row else 1
        out.append([x.numerator * (m // x.denominator) for x in row])
    return out


def bareiss_echelon(int_rows, ncols):
    """In-place fraction-free forward elimination on ``ncols`` leading columns.

    Returns ``(rows, pivots)``; every intermediate entry is an exact integer
    minor of the input, so the divisions below never leave a remainder.
    """
    a = int_rows
    m = len(a)
    prev = 1
    r = 0
    pivots = []
    width = len(a[0]) if a else 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        prc = a[r][c]
        for i in range(r + 1, m):
            aic = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, width):
                row_i[j] = (prc * row_i[j] - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = prc
        pivots.append(c)
        r += 1
    return a, pivots


def _back_substitute(ech, pivots, ncols, rhs_col, free_values):
    x = [Q(0)] * ncols
    for f, val in free_values.items():
        x[f] = Q(val)
    for k in range(len(pivots) - 1, -1, -1):
        p = pivots[k]
        row = ech[k]
        s = Q(row[rhs_col]) if rhs_col is not None else Q(0)
        for j in range(p + 1, ncols):
            if row[j] and x[j]:
                s -= row[j] * x[j]
        x[p] = s / row[p]
    return tuple(x)


class Solution(NamedTuple):
    particular: Optional[Vector]
    kernel: list


def solve_linear(M: Sequence[Sequence], v: Sequence) -> Solution:
    """Solve ``M x = v`` exactly.

    ``particular`` is ``None`` when the system is inconsistent; ``kernel`` is
    always a basis of the null space of ``M``.
    """
    nrows = len(M)
    if len(v) != nrows:
        raise ValueError(f"rhs has length {len(v)}, matrix has {nrows} rows")
    ncols = len(M[0]) if nrows else 0
    if any(len(row) != ncols for row in M):
        raise ValueError("ragged matrix")
    aug = _integer_rows([list(row) + [b] for row, b in zip(M, v)])
    ech, pivots = bareiss_echelon(aug, ncols)
    rank = len(pivots)
    consistent = all(ech[i][ncols] == 0 for i in range(rank, nrows))
    free = [c for c in range(ncols) if c not in set(pivots)]
    kernel = []
    for f in free:
        kernel.append(_back_substitute_hom(ech, pivots, ncols, f))
    particular = _back_substitute(ech, pivots, ncols, ncols, {}) if consistent else None
    return Solution(particular, kernel)


def _back_substitute_hom(ech, pivots, ncols, free_col):
    x = [Q(0)] * ncols
    x[free_col] = Q(1)
    for k in range(len(pivots) - 1, -1, -1):
        p = pivots[k]
        row = ech[k]
        s = Q(0)
        for j in range(p + 1, ncols):
            if row[j] and x[j]:
                s -= row[j] * x[j]
        x[p] = s / row[p]
    return tuple(x)


def nullspace(M, ncols=None) -> list:
    if not M:
        return [unit_vector(ncols, i) for i in range(ncols or 0)]
    return solve_linear(M, [0] * len(M)).kernel


def rank(M) -> int:
    if not M:
        return 0
    ncols = len(M[0])
    _, pivots = bareiss_echelon(_integer_rows(M), ncols)
    return len(pivots)


# sparse reduced echelon -----------------------------------------------------

class SparseSpan:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Rows are dicts ``index -> Fraction`` keyed by their pivot (the smallest
    index with a nonzero entry).  With ``track=True`` each row remembers the
    combination of inserted tags that produced it, which makes dependency
    relations (kernel vectors) and matrix inverses fall out of insertion.
    """

    def __init__(self, track=False):
        self.rows = {}
        self.track = track
        self.combos = {} if track else None

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, vec, combo=None):
        """Return ``vec`` reduced modulo the span (a new dict)."""
        w = {i: Q(x) for i, x in vec.items() if x}
        hits = [(p, w[p]) for p in w if p in self.rows]
        for p, c in hits:
            for i, x in self.rows[p].items():
                y = w.get(i, 0) - c * x
                if y:
                    w[i] = y
                else:
                    w.pop(i, None)
            if combo is not None:
                for t, x in self.combos[p].items():
                    y = combo.get(t, 0) - c * x
                    if y:
                        combo[t] = y
                    else:
                        combo.pop(t, None)
        return w

    def coefficients(self, vec):
        """Pivot coefficients of ``vec`` against the reduced rows."""
        return {p: vec[p] for p in vec if p in self.rows and vec[p]}

    def insert(self, vec, tag=None):
        """Add ``vec``; returns ``(True, None)`` if it enlarged the span, else
        ``(False, relation)`` where ``relation`` (tracked mode) is a dict
        ``tag -> coefficient`` of inserted vectors summing to zero."""
        combo = {tag: Q(1)} if self.track else None
        w = self.reduce(vec, combo)
        if not w:
            return False, combo
        p = min(w)
        c = w[p]
        if c != 1:
            w = {i: x / c for i, x in w.items()}
            if combo is not None:
                combo = {t: x / c for t, x in combo.items()}
        for q, row in self.rows.items():
            f = row.get(p)
            if f:
                for i, x in w.items():
                    y = row.get(i, 0) - f * x
                    if y:
                        row[i] = y
                    else:
                        row.pop(i, None)
                if combo is not None:
                    cq = self.combos[q]
                    for t, x in combo.items():
                        y = cq.get(t, 0) - f * x
                        if y:
                            cq[t] = y
                        else:
                            cq.pop(t, None)
        self.rows[p] = w
        if combo is not None:
            self.combos[p] = combo
        return True, None

    def contains(self, vec) -> bool:
        return not self.reduce(vec)


def sparse_rank(vectors) -> int:
    span = SparseSpan()
    for v in vectors:
        span.insert(v if isinstance(v, dict) else to_sparse(v))
    return len(span)


def sparse_nullspace(cols, ncols_hint=None) -> list:
    """Kernel basis of the matrix whose columns are the sparse dicts ``cols``."""
    n = len(cols)
    span = SparseSpan(track=True)
    kernel = []
    for j, col in enumerate(cols):
        fresh, relation = span.insert(col, tag=j)
        if not fresh:
            kernel.append(to_dense(relation, n))
    return kernel


def inverse(M) -> Matrix:
    """Exact inverse of a square matrix; raises ``ValueError`` if singular."""
    n = len(M)
    span = SparseSpan(track=True)
    for i, row in enumerate(M):
        if len(row) != n:
            raise ValueError("matrix is not square")
        fresh, _ = span.insert(to_sparse(row), tag=i)
        if not fresh:
            raise ValueError("matrix is singular")
    return [list(to_dense(span.combos[p], n)) for p in range(n)]


class Subspace:
    """A subspace of ``Q^n`` with a distinguished basis.

    The basis is the maximal independent subset of the spanning vectors,
    taken greedily in the given order.  ``coords`` expresses a member in
    that basis and raises ``ValueError`` for non-members.
    """

    def __init__(self, vectors, n):
        self.n = n
        self._span = SparseSpan(track=True)
        basis = []
        for v in vectors:
            v = tuple(Q(x) for x in v)
            if len(v) != n:
                raise ValueError("vector of wrong length")
            fresh, _ = self._span.insert(to_sparse(v), tag=len(basis))
            if fresh:
                basis.append(v)
        self.basis = basis

    @property
    def dim(self):
        return len(self.basis)

    def __contains__(self, v):
        return self._span.contains(to_sparse(v))

    def coords(self, v) -> Vector:
        sv = to_sparse(v)
        if self._span.reduce(sv):
            raise ValueError("vector is not in the subspace")
        acc = {}
        for p, c in self._span.coefficients(sv).items():
            for t, x in self._span.combos[p].items():
                acc[t] = acc.get(t, 0) + c * x
        return to_dense({t: x for t, x in acc.items() if x}, self.dim)

    def issubspace(self, other: "Subspace") -> bool:
        return all(v in other for v in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.dim == other.dim and self.issubspace(other)

    __hash__ = None
