"""Classical form-level invariants.

Signatures are computed exactly over Q by congruent diagonalization; the only
floating-point computation in the library is the complex Gauss-sum comparison,
whose coset enumeration is still exact.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .exact import IntMatrix, smith_normal_form


class SingularForm(ValueError):
    pass


class DegenerateForm(ValueError):
    pass


class NoRefinement(ValueError):
    pass


class IntBilinearForm:
    """Symmetric bilinear form over Z given by its Gram matrix."""

    __slots__ = ("gram",)

    def __init__(self, gram):
        if gram.rows != gram.cols:
            raise DegenerateForm("gram matrix must be square")
        if gram != gram.transpose():
            raise DegenerateForm("gram matrix must be symmetric")
        self.gram = gram

    @property
    def rank(self):
        return self.gram.rows

    def direct_sum(self, other):
        return IntBilinearForm(IntMatrix.block_diag([self.gram, other.gram]))


def signature(form):
    """Signature (p - q) of a symmetric form; the radical is quotiented out.

    Exact congruent diagonalization over Q (no floating point).
    """
    g = form.gram if isinstance(form, IntBilinearForm) else form
    n = g.rows
    a = [[Fraction(g.data[i][j]) for j in range(n)] for i in range(n)]
    sig = 0
    rows = list(range(n))
    k = 0
    while k < n:
        # find a nonzero diagonal entry at or after k
        piv = None
        for i in range(k, n):
            if a[i][i] != 0:
                piv = i
                break
        if piv is None:
            # look for an off-diagonal entry; if none the rest is the radical
            found = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if a[i][j] != 0:
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                break
            i, j = found
            # row/col operation: add row j to row i, making a nonzero diagonal
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for t in range(n):
                a[t][k], a[t][piv] = a[t][piv], a[t][k]
        d = a[k][k]
        sig += 1 if d > 0 else -1
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f:
                for t in range(n):
                    a[i][t] -= f * a[k][t]
                for t in range(n):
                    a[t][i] -= f * a[t][k]
        k += 1
    return sig


class F2QuadraticForm:
    """Quadratic form q: V -> Z/2 refining a bilinear form over F2.

    q(x+y) = q(x) + q(y) + b(x,y); stored as q-values on a basis plus the
    Gram matrix of b mod 2.
    """

    __slots__ = ("rank", "bilinear", "q_values")

    def __init__(self, rank, bilinear, q_values):
        self.rank = rank
        self.bilinear = bilinear
        self.q_values = [v & 1 for v in q_values]
        if bilinear.rows != rank or bilinear.cols != rank:
            raise SingularForm("bilinear matrix size mismatch")

    def value(self, x):
        """q on the vector x (coordinates mod 2)."""
        v = 0
        xs = [c & 1 for c in x]
        for i in range(self.rank):
            if xs[i]:
                v ^= self.q_values[i]
        for i in range(self.rank):
            if xs[i]:
                for j in range(i + 1, self.rank):
                    if xs[j] and (self.bilinear.data[i][j] & 1):
                        v ^= 1
        return v

    def is_nonsingular(self):
        from .homalg import f2_kernel
        return len(f2_kernel(self.bilinear)) == 0

    def direct_sum(self, other):
        return F2QuadraticForm(
            self.rank + other.rank,
            IntMatrix.block_diag([self.bilinear, other.bilinear]),
            self.q_values + other.q_values)


def arf(form):
    """Arf invariant by the democratic count: 1 iff q hits 1 on a majority."""
    if not form.is_nonsingular():
        raise SingularForm("Arf invariant needs a nonsingular polarization")
    ones = 0
    total = 1 << form.rank
    for mask in range(total):
        x = [(mask >> i) & 1 for i in range(form.rank)]
        ones += form.value(x)
    if 2 * ones == total:
        raise SingularForm("no majority; polarization must be degenerate")
    return 1 if 2 * ones > total else 0


class LinkingForm:
    """Q/Z-valued symmetric pairing on a finite abelian group, with an
    optional Q/Z-valued quadratic refinement.

    The group is given by invariant factors; pairing[i][j] and q_values[i]
    are Fractions taken mod 1.
    """

    __slots__ = ("orders", "pairing", "q_values")

    def __init__(self, orders, pairing, q_values=None):
        self.orders = list(orders)
        k = len(self.orders)
        self.pairing = [[Fraction(pairing[i][j]) % 1 for j in range(k)] for i in range(k)]
        for i in range(k):
            for j in range(k):
                if self.pairing[i][j] != self.pairing[j][i]:
                    raise DegenerateForm("linking pairing must be symmetric")
                if (self.orders[i] * self.pairing[i][j]) % 1 != 0:
                    raise DegenerateForm("pairing not annihilated by the order")
        if q_values is None:
            self.q_values = None
        else:
            self.q_values = [Fraction(v) % 1 for v in q_values]

    @property
    def order(self):
        p = 1
        for t in self.orders:
            p *= t
        return p

    def elements(self):
        """All group elements as coordinate tuples."""
        coords = [range(t) for t in self.orders]
        out = [()]
        for r in coords:
            out = [prev + (c,) for prev in out for c in r]
        return out

    def q_of(self, x):
        if self.q_values is None:
            raise NoRefinement("no quadratic refinement present")
        total = Fraction(0)
        for i, xi in enumerate(x):
            total += self.q_values[i] * xi * xi
        for i in range(len(x)):
            for j in range(i + 1, len(x)):
                total += self.pairing[i][j] * x[i] * x[j]
        return total % 1

    def direct_sum(self, other):
        k1, k2 = len(self.orders), len(other.orders)
        pr = [[Fraction(0)] * (k1 + k2) for _ in range(k1 + k2)]
        for i in range(k1):
            for j in range(k1):
                pr[i][j] = self.pairing[i][j]
        for i in range(k2):
            for j in range(k2):
                pr[k1 + i][k1 + j] = other.pairing[i][j]
        qs = None
        if self.q_values is not None and other.q_values is not None:
            qs = self.q_values + other.q_values
        return LinkingForm(self.orders + other.orders, pr, qs)


def torsion_mod2_rank(orders):
    """Number of even invariant factors, mod 2."""
    return sum(1 for t in orders if t % 2 == 0) % 2


class RationalLattice:
    """Integral quadratic lattice: q(x) = x^T G x / 2 with q(L) in Z.

    G is the (even-diagonal) Gram matrix of the bilinear form
    b(x, y) = q(x+y) - q(x) - q(y) on a basis of L.
    """

    __slots__ = ("gram",)

    def __init__(self, gram):
        if gram.rows != gram.cols:
            raise DegenerateForm("gram must be square")
        if gram != gram.transpose():
            raise DegenerateForm("gram must be symmetric")
        for i in range(gram.rows):
            if gram.data[i][i] % 2 != 0:
                raise DegenerateForm("q integral on L needs an even diagonal")
        self.gram = gram

    @property
    def rank(self):
        return self.gram.rows

    def discriminant_order(self):
        from .exact import det
        d = det(self.gram)
        if d == 0:
            raise DegenerateForm("form is degenerate over Q")
        return abs(d)

    def q_value(self, x):
        """q on a rational vector x (list of Fractions), exact."""
        total = Fraction(0)
        n = self.rank
        for i in range(n):
            for j in range(n):
                total += Fraction(self.gram.data[i][j]) * x[i] * x[j]
        return total / 2

    def dual_cosets(self):
        """Exact coset representatives of L*/L as rational vectors.

        L* = G^{-1} Z^n, so representatives are G^{-1} u for u running over
        Z^n / G Z^n, enumerated through the Smith form of G.
        """
        from .exact import rational_solve, solve_integral_matrix
        snf = smith_normal_form(self.gram)
        diag = snf.diagonal
        if any(d == 0 for d in diag):
            raise DegenerateForm("form is degenerate over Q")
        # U G V = D, so G Z^n = U^{-1} D Z^n and Z^n / G Z^n is enumerated by
        # U^{-1} of the box [0,d_1) x ... x [0,d_n)
        uinv = solve_integral_matrix(snf.U, IntMatrix.identity(snf.U.rows))
        reps = []
        idx = [0] * len(diag)
        while True:
            u = uinv.apply(idx)
            x = rational_solve(self.gram, u)
            reps.append([v % 1 for v in x])
            k = 0
            while k < len(diag):
                idx[k] += 1
                if idx[k] < abs(diag[k]):
                    break
                idx[k] = 0
                k += 1
            if k == len(diag):
                break
        return reps

    def signature(self):
        return signature(IntBilinearForm(self.gram))


def gauss_sum(lattice):
    """sum over x in L*/L of exp(2 pi i q(x)); coset enumeration is exact."""
    total = 0j
    for x in lattice.dual_cosets():
        q = lattice.q_value(x) % 1
        total += cmath.exp(2j * cmath.pi * float(q))
    return total


def milgram_check(lattice, tol=1e-6):
    """sqrt(|L*/L|) * exp(i pi sign/4) == Gauss sum, within tol."""
    lhs = math.sqrt(lattice.discriminant_order()) * cmath.exp(
        1j * cmath.pi * lattice.signature() / 4)
    rhs = gauss_sum(lattice)
    return abs(lhs - rhs) <= tol


def finite_gauss_sum(linking):
    """sum of exp(2 pi i q(x)) over the finite group of a refined linking form."""
    if linking.q_values is None:
        raise NoRefinement("quadratic refinement required")
    total = 0j
    for x in linking.elements():
        total += cmath.exp(2j * cmath.pi * float(linking.q_of(x)))
    return total


def signature_mod8_from_linking(linking, tol=1e-6):
    """Mod-8 signature of any integral lattice presenting the refined form.

    By the Gauss-sum identity the finite sum equals sqrt(|T|) e^{i pi s / 4};
    s mod 8 is read off the argument.  Degenerate refinements (|sum| far from
    sqrt|T|) are rejected.
    """
    if linking.order == 1:
        return 0
    z = finite_gauss_sum(linking)
    expected = math.sqrt(linking.order)
    if abs(abs(z) - expected) > tol * max(1.0, expected):
        raise DegenerateForm("refined linking form is degenerate")
    angle = cmath.phase(z) / (math.pi / 4)
    s = round(angle) % 8
    if abs(angle - round(angle)) > 1e-6:
        raise DegenerateForm("Gauss sum argument is not a multiple of pi/4")
    return s
