"""Exact integer linear algebra.

Smith normal form with unimodular transforms, integral kernels and solving,
and homology of a composable pair of matrices.  Everything runs on Python's
arbitrary-precision integers; intermediate entries in a Smith reduction can
blow up badly even for tiny inputs, so fixed-width arithmetic is never used.
"""

from __future__ import annotations

from fractions import Fraction


class DimensionMismatch(ValueError):
    pass


class CompositionNonzero(ValueError):
    pass


class IntMatrix:
    """Dense integer matrix, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise DimensionMismatch("negative dimensions")
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.data = [[0] * cols for _ in range(rows)]
        else:
            entries = list(entries)
            if len(entries) != rows * cols:
                raise DimensionMismatch(
                    "expected %d entries, got %d" % (rows * cols, len(entries)))
            self.data = [
                [int(entries[i * cols + j]) for j in range(cols)]
                for i in range(rows)
            ]

    @classmethod
    def from_rows(cls, rows_list):
        rows_list = [list(r) for r in rows_list]
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        m = cls(rows, cols)
        for i, r in enumerate(rows_list):
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
            m.data[i] = [int(x) for x in r]
        return m

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def diagonal(cls, entries):
        entries = list(entries)
        m = cls(len(entries), len(entries))
        for i, x in enumerate(entries):
            m.data[i][i] = int(x)
        return m

    @property
    def entries(self):
        return [x for row in self.data for x in row]

    def copy(self):
        m = IntMatrix(self.rows, self.cols)
        m.data = [row[:] for row in self.data]
        return m

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def __setitem__(self, idx, value):
        i, j = idx
        self.data[i][j] = int(value)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return "IntMatrix(%d, %d, %r)" % (self.rows, self.cols, self.entries)

    def __str__(self):
        if self.rows == 0 or self.cols == 0:
            return "<empty %dx%d>" % (self.rows, self.cols)
        return "\n".join(" ".join("%3d" % x for x in row) for row in self.data)

    def __add__(self, other):
        self._same_shape(other)
        m = IntMatrix(self.rows, self.cols)
        m.data = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        return m

    def __sub__(self, other):
        self._same_shape(other)
        m = IntMatrix(self.rows, self.cols)
        m.data = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        return m

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = int(c)
        m = IntMatrix(self.rows, self.cols)
        m.data = [[c * x for x in row] for row in self.data]
        return m

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if self.cols != other.rows:
            raise DimensionMismatch(
                "cannot multiply %dx%d by %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        out = IntMatrix(self.rows, other.cols)
        bdata = other.data
        for i in range(self.rows):
            arow = self.data[i]
            orow = out.data[i]
            for k in range(self.cols):
                a = arow[k]
                if a:
                    brow = bdata[k]
                    for j in range(other.cols):
                        orow[j] += a * brow[j]
        return out

    __rmul__ = __mul__

    def transpose(self):
        m = IntMatrix(self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                m.data[j][i] = self.data[i][j]
        return m

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def apply(self, vec):
        """Matrix times column vector (a list of ints)."""
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length %d, need %d" % (len(vec), self.cols))
        return [sum(self.data[i][j] * vec[j] for j in range(self.cols)) for i in range(self.rows)]

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    @classmethod
    def from_columns(cls, cols_list, rows=None):
        if not cols_list:
            return cls(rows or 0, 0)
        n = len(cols_list[0])
        m = cls(n, len(cols_list))
        for j, col in enumerate(cols_list):
            if len(col) != n:
                raise DimensionMismatch("ragged columns")
            for i in range(n):
                m.data[i][j] = int(col[i])
        return m

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        m = IntMatrix(self.rows, self.cols + other.cols)
        for i in range(self.rows):
            m.data[i] = self.data[i] + other.data[i]
        return m

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionMismatch("vstack col mismatch")
        m = IntMatrix(self.rows + other.rows, self.cols)
        m.data = [r[:] for r in self.data] + [r[:] for r in other.data]
        return m

    @classmethod
    def block_diag(cls, blocks):
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        m = cls(rows, cols)
        ro = co = 0
        for b in blocks:
            for i in range(b.rows):
                m.data[ro + i][co:co + b.cols] = b.data[i][:]
            ro += b.rows
            co += b.cols
        return m

    def submatrix(self, r0, r1, c0, c1):
        m = IntMatrix(r1 - r0, c1 - c0)
        for i in range(r0, r1):
            m.data[i - r0] = self.data[i][c0:c1]
        return m

    def kron(self, other):
        """Kronecker product; index (i,k) maps to i*other.rows + k."""
        m = IntMatrix(self.rows * other.rows, self.cols * other.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.data[i][j]
                if a:
                    for k in range(other.rows):
                        for l in range(other.cols):
                            m.data[i * other.rows + k][j * other.cols + l] = a * other.data[k][l]
        return m

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch")


class SmithDecomposition:
    """U*A*V = D with U, V unimodular and D in canonical Smith form."""

    __slots__ = ("U", "D", "V")

    def __init__(self, U, D, V):
        self.U = U
        self.D = D
        self.V = V

    @property
    def diagonal(self):
        n = min(self.D.rows, self.D.cols)
        return [self.D.data[i][i] for i in range(n)]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self):
        """Nontrivial invariant factors (the entries >= 2)."""
        return [d for d in self.diagonal if d not in (0, 1)]


def smith_normal_form(A):
    """Smith normal form with transforms.

    Returns SmithDecomposition(U, D, V) with D = U*A*V, det(U), det(V) = +-1,
    D diagonal, d1 | d2 | ... , all entries nonnegative, zeros trailing.
    """
    M = A.copy()
    U = IntMatrix.identity(A.rows)
    V = IntMatrix.identity(A.cols)
    rows, cols = M.rows, M.cols
    k = 0
    limit = min(rows, cols)
    while k < limit:
        piv = _find_pivot(M, k)
        if piv is None:
            break
        _move_pivot(M, U, V, k, piv)
        while True:
            if _reduce_column(M, U, k):
                continue
            if _reduce_row(M, V, k):
                continue
            off = _non_divisible(M, k)
            if off is None:
                break
            # fold the offending row into row k so the pivot can shrink to a
            # divisor of everything in the remaining block
            _row_add(M, U, k, off, 1)
        if M.data[k][k] < 0:
            _row_negate(M, U, k)
        k += 1
    # divisibility chain along the diagonal
    for i in range(k):
        for j in range(i + 1, k):
            a, b = M.data[i][i], M.data[j][j]
            if a and b % a != 0:
                # standard 2x2 fix-up: diag(a,b) -> diag(gcd, lcm)
                _col_add(M, V, i, j, 1)
                while True:
                    if _reduce_column(M, U, i):
                        continue
                    if _reduce_row(M, V, i):
                        continue
                    break
                if M.data[i][i] < 0:
                    _row_negate(M, U, i)
    return SmithDecomposition(U, M, V)


def _find_pivot(M, k):
    best = None
    best_abs = None
    for i in range(k, M.rows):
        for j in range(k, M.cols):
            x = M.data[i][j]
            if x != 0 and (best_abs is None or abs(x) < best_abs):
                best, best_abs = (i, j), abs(x)
                if best_abs == 1:
                    return best
    return best


def _move_pivot(M, U, V, k, piv):
    i, j = piv
    if i != k:
        M.data[k], M.data[i] = M.data[i], M.data[k]
        U.data[k], U.data[i] = U.data[i], U.data[k]
    if j != k:
        for row in M.data:
            row[k], row[j] = row[j], row[k]
        for row in V.data:
            row[k], row[j] = row[j], row[k]


def _row_add(M, U, dst, src, c):
    M.data[dst] = [a + c * b for a, b in zip(M.data[dst], M.data[src])]
    U.data[dst] = [a + c * b for a, b in zip(U.data[dst], U.data[src])]


def _col_add(M, V, dst, src, c):
    for row in M.data:
        row[dst] += c * row[src]
    for row in V.data:
        row[dst] += c * row[src]


def _row_negate(M, U, i):
    M.data[i] = [-x for x in M.data[i]]
    U.data[i] = [-x for x in U.data[i]]


def _reduce_column(M, U, k):
    """Clear column k below the pivot; returns True if the pivot moved."""
    changed = False
    while True:
        progressed = False
        for i in range(k + 1, M.rows):
            x = M.data[i][k]
            if x == 0:
                continue
            p = M.data[k][k]
            q = x // p
            _row_add(M, U, i, k, -q)
            if M.data[i][k] != 0:
                # remainder is smaller than the pivot; swap it up
                M.data[k], M.data[i] = M.data[i], M.data[k]
                U.data[k], U.data[i] = U.data[i], U.data[k]
                changed = True
            progressed = True
        if not progressed:
            return changed


def _reduce_row(M, V, k):
    changed = False
    while True:
        progressed = False
        for j in range(k + 1, M.cols):
            x = M.data[k][j]
            if x == 0:
                continue
            p = M.data[k][k]
            q = x // p
            _col_add(M, V, j, k, -q)
            if M.data[k][j] != 0:
                for row in M.data:
                    row[k], row[j] = row[j], row[k]
                for row in V.data:
                    row[k], row[j] = row[j], row[k]
                changed = True
            progressed = True
        if not progressed:
            return changed


def _non_divisible(M, k):
    p = M.data[k][k]
    for i in range(k + 1, M.rows):
        for j in range(k + 1, M.cols):
            if M.data[i][j] % p != 0:
                return i
    return None


def det_unimodular_sign(A):
    """Determinant of a matrix promised unimodular (exact, via Smith form)."""
    if A.rows != A.cols:
        raise DimensionMismatch("determinant of non-square matrix")
    return det(A)


def det(A):
    """Exact determinant by fraction-free Gaussian elimination (Bareiss)."""
    if A.rows != A.cols:
        raise DimensionMismatch("determinant of non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = [row[:] for row in A.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A):
    return smith_normal_form(A).rank


def kernel_basis(A):
    """Columns spanning the integral kernel of A (a saturated sublattice)."""
    snf = smith_normal_form(A)
    r = snf.rank
    cols = []
    for j in range(r, A.cols):
        cols.append(snf.V.column(j))
    m = IntMatrix(A.cols, len(cols))
    for j, col in enumerate(cols):
        for i in range(A.cols):
            m.data[i][j] = col[i]
    return m


def solve_integral(A, b):
    """One integral solution x of A x = b, or None when none exists."""
    if len(b) != A.rows:
        raise DimensionMismatch("rhs length %d, need %d" % (len(b), A.rows))
    snf = smith_normal_form(A)
    c = snf.U.apply(list(b))
    y = [0] * A.cols
    n = min(A.rows, A.cols)
    for i in range(A.rows):
        d = snf.D.data[i][i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            if i < A.cols:
                y[i] = c[i] // d
    return snf.V.apply(y)


def solve_integral_matrix(A, B):
    """Integral X with A X = B, or None.  Solves column by column."""
    if A.rows != B.rows:
        raise DimensionMismatch("row mismatch")
    snf = smith_normal_form(A)
    n = min(A.rows, A.cols)
    out_cols = []
    for j in range(B.cols):
        c = snf.U.apply(B.column(j))
        y = [0] * A.cols
        for i in range(A.rows):
            d = snf.D.data[i][i] if i < n else 0
            if d == 0:
                if c[i] != 0:
                    return None
            else:
                if c[i] % d != 0:
                    return None
                if i < A.cols:
                    y[i] = c[i] // d
        out_cols.append(snf.V.apply(y))
    return IntMatrix.from_columns(out_cols, rows=A.cols) if out_cols else IntMatrix(A.cols, 0)


class HomologyGroup:
    """H = Z^free_rank + Z/t1 + ... with chain-level representative cycles.

    Representatives are column vectors in the middle chain group; free
    generators first, then one generator per torsion factor t1 | t2 | ...
    """

    __slots__ = ("free_rank", "torsion", "free_reps", "torsion_reps")

    def __init__(self, free_rank, torsion, free_reps, torsion_reps):
        self.free_rank = free_rank
        self.torsion = list(torsion)
        self.free_reps = free_reps
        self.torsion_reps = torsion_reps

    @property
    def order(self):
        """Group order; 0 means infinite."""
        if self.free_rank:
            return 0
        p = 1
        for t in self.torsion:
            p *= t
        return p

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def __eq__(self, other):
        if not isinstance(other, HomologyGroup):
            return NotImplemented
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def __repr__(self):
        parts = ["Z"] * self.free_rank + ["Z/%d" % t for t in self.torsion]
        return "HomologyGroup(%s)" % (" + ".join(parts) if parts else "0")


def homology(d_next, d_this):
    """Homology at the middle of  C_{n+1} --d_next--> C_n --d_this--> C_{n-1}.

    Requires d_this * d_next = 0.  Returns a HomologyGroup whose
    representatives are cycles in C_n.
    """
    if d_this.cols != d_next.rows:
        raise DimensionMismatch("non-composable differentials")
    if d_this.rows > 0 and d_next.cols > 0:
        if not (d_this * d_next).is_zero():
            raise CompositionNonzero("d o d != 0")
    K = kernel_basis(d_this)  # C_n x k
    k = K.cols
    if k == 0:
        return HomologyGroup(0, [], IntMatrix(d_this.cols, 0), IntMatrix(d_this.cols, 0))
    # express image of d_next in kernel coordinates (always solvable: the
    # kernel lattice is saturated and contains the image)
    Y = solve_integral_matrix(K, d_next) if d_next.cols else IntMatrix(k, 0)
    if Y is None:
        raise CompositionNonzero("image not contained in kernel")
    snf = smith_normal_form(Y)
    # columns of K * U^{-1} generate the kernel adapted to the image; U^{-1}
    # is extracted by solving U X = I exactly (U unimodular)
    Uinv = solve_integral_matrix(snf.U, IntMatrix.identity(snf.U.rows))
    G = K * Uinv
    diag = snf.diagonal + [0] * (k - len(snf.diagonal))
    free_cols, tor_cols, torsion = [], [], []
    for i in range(k):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            free_cols.append(G.column(i))
        elif d == 1:
            continue
        else:
            torsion.append(d)
            tor_cols.append(G.column(i))
    order = sorted(range(len(torsion)), key=lambda t: torsion[t])
    torsion_sorted = [torsion[i] for i in order]
    tor_cols = [tor_cols[i] for i in order]
    return HomologyGroup(
        len(free_cols),
        torsion_sorted,
        IntMatrix.from_columns(free_cols, rows=d_this.cols),
        IntMatrix.from_columns(tor_cols, rows=d_this.cols),
    )


def rational_solve(A, b):
    """One rational solution of A x = b over Q, or None (exact Fractions)."""
    rows, cols = A.rows, A.cols
    M = [[Fraction(A.data[i][j]) for j in range(cols)] + [Fraction(b[i])]
         for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        p = None
        for i in range(r, rows):
            if M[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if M[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return x
