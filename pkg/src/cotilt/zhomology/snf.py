"""Exact integer matrices and Smith normal form.

Everything here uses Python integers, so entries never overflow. Matrices of
shape ``0 x k`` and ``k x 0`` are legal and show up naturally (free modules
have no relations).
"""
from __future__ import annotations

from fractions import Fraction


class IntMatrix:
    """A dense integer matrix with explicit shape."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, rows=None, cols=None):
        data = [[int(x) for x in row] for row in data]
        self.rows = len(data) if rows is None else rows
        self.cols = (len(data[0]) if data else 0) if cols is None else cols
        if len(data) != self.rows or any(len(r) != self.cols for r in data):
            raise ValueError("ragged matrix or shape mismatch")
        self.data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diagonal(cls, entries, rows=None, cols=None):
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        m = cls.zeros(rows, cols)
        for k, d in enumerate(entries):
            m.data[k][k] = int(d)
        return m

    def copy(self):
        return IntMatrix([row[:] for row in self.data], self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self):
        return f"IntMatrix({self.data!r}, rows={self.rows}, cols={self.cols})"

    def tolist(self):
        return [row[:] for row in self.data]

    @property
    def T(self):
        return IntMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
                         self.cols, self.rows)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols_b = list(zip(*other.data)) if other.rows else [()] * other.cols
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in cols_b]
                          for row in self.data], self.rows, other.cols)

    def columns(self, idx):
        idx = list(idx)
        return IntMatrix([[row[j] for j in idx] for row in self.data], self.rows, len(idx))

    def is_diagonal(self):
        return all(self.data[i][j] == 0 for i in range(self.rows)
                   for j in range(self.cols) if i != j)

    def diagonal_entries(self):
        return [self.data[k][k] for k in range(min(self.rows, self.cols))]


def hstack(*ms):
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise ValueError("hstack needs equal row counts")
    return IntMatrix([sum((m.data[i] for m in ms), []) for i in range(rows)],
                     rows, sum(m.cols for m in ms))


def vstack(*ms):
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ValueError("vstack needs equal column counts")
    return IntMatrix([row[:] for m in ms for row in m.data], sum(m.rows for m in ms), cols)


def kron(a, b):
    out = IntMatrix.zeros(a.rows * b.rows, a.cols * b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.data[i][j]
            if x == 0:
                continue
            for k in range(b.rows):
                row = out.data[i * b.rows + k]
                for l in range(b.cols):
                    row[j * b.cols + l] = x * b.data[k][l]
    return out


def determinant(m):
    """Bareiss fraction-free determinant."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = m.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def smith_normal_form(A):
    """Return ``(U, D, V)`` with ``U @ A @ V == D`` in Smith normal form.

    ``U`` and ``V`` are unimodular; ``D`` is diagonal with non-negative entries
    ``d_1 | d_2 | ...``.
    """
    m, n = A.rows, A.cols
    D = A.tolist()
    U = IntMatrix.identity(m).data
    V = IntMatrix.identity(n).data

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        D[dst] = [x + c * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in D:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (pivot is None or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            for i in range(t + 1, m):
                while D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        swap_rows(i, t)
            for j in range(t + 1, n):
                while D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        swap_cols(j, t)
            if any(D[i][t] for i in range(t + 1, m)):
                continue
            d = D[t][t]
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j] % d for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return IntMatrix(U, m, m), IntMatrix(D, m, n), IntMatrix(V, n, n)


def invariant_factors(A):
    """Non-zero diagonal entries of the Smith form of ``A``."""
    return [d for d in smith_normal_form(A)[1].diagonal_entries() if d]


def cokernel(A):
    """``Z^rows / im A`` as ``(free_rank, [torsion invariant factors > 1])``."""
    ds = invariant_factors(A)
    return A.rows - len(ds), [d for d in ds if d != 1]


def kernel_basis(A):
    """Columns spanning ``{x : A x = 0}`` as a lattice basis."""
    _, D, V = smith_normal_form(A)
    r = len([d for d in D.diagonal_entries() if d])
    return V.columns(range(r, A.cols))


def column_basis(G):
    """A basis of the lattice spanned by the columns of ``G``."""
    _, D, V = smith_normal_form(G)
    r = len([d for d in D.diagonal_entries() if d])
    return (G @ V).columns(range(r))


def solve_in_lattice(K, L):
    """Integer ``X`` with ``K X = L`` for a full-column-rank ``K``.

    Raises ValueError when some column of ``L`` is outside the lattice of ``K``.
    """
    U, D, V = smith_normal_form(K)
    r = K.cols
    diag = D.diagonal_entries()
    if len(diag) < r or any(d == 0 for d in diag[:r]):
        raise ValueError("lattice basis must have full column rank")
    UL = U @ L
    Y = IntMatrix.zeros(r, L.cols)
    for i in range(K.rows):
        for j in range(L.cols):
            if i < r:
                q, rem = divmod(UL.data[i][j], diag[i])
                if rem:
                    raise ValueError("column lies outside the lattice")
                Y.data[i][j] = q
            elif UL.data[i][j]:
                raise ValueError("column lies outside the lattice")
    return V @ Y


def subquotient(K, L):
    """Coordinates of ``span(L)`` inside the lattice basis ``K``.

    The quotient ``span(K) / span(L)`` is the cokernel of the returned matrix.
    """
    return solve_in_lattice(K, L)


def valuation(x, p):
    """p-adic valuation of a non-zero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v, num, den = 0, x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def local_smith_valuations(A, p):
    """Diagonal of the Smith form of ``A`` over the local ring ``Z_(p)``.

    Returned as the p-adic valuations of the non-zero diagonal entries (units
    of ``Z_(p)`` are invisible). Eliminates with rational arithmetic, pivoting
    on an entry of minimal valuation, so it shares no code with
    :func:`smith_normal_form`.
    """
    D = [[Fraction(x) for x in row] for row in A.data]
    m, n = A.rows, A.cols
    out = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j]:
                    v = valuation(D[i][j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, pi, pj = best
        D[t], D[pi] = D[pi], D[t]
        for row in D:
            row[t], row[pj] = row[pj], row[t]
        piv = D[t][t]
        for i in range(t + 1, m):
            if D[i][t]:
                f = D[i][t] / piv
                D[i] = [x - f * y for x, y in zip(D[i], D[t])]
        for j in range(t + 1, n):
            if D[t][j]:
                f = D[t][j] / piv
                for row in D:
                    row[j] -= f * row[t]
        out.append(v)
    return out


def local_cokernel(A, p):
    """``Z_(p)^rows / im A`` as ``(free_rank, sorted exponents e >= 1)``."""
    vals = local_smith_valuations(A, p)
    return A.rows - len(vals), sorted(v for v in vals if v > 0)
