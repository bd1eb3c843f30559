"""Bounded chain complexes of finitely generated free abelian groups.

Sign conventions used throughout the library:

  * differential of a tensor product: d(x@y) = dx@y + (-1)^|x| x@dy
  * dual complex:      dual(C)_m = (C_{-m})^*,  d_m = (-1)^m * transpose
  * shift by k:        shift(C,k)_m = C_{m-k},  differential scaled by (-1)^k
  * n-dual:            C^{n-*} = shift(dual(C), n), so its differential in
                        degree r is (-1)^r * (d_{n-r+1})^T

With these choices the slant map of a degree-n element of C@C is a chain map
C^{n-*} -> C with no correction signs (see structures.py).
"""

from __future__ import annotations

from .exact import (
    CompositionNonzero,
    DimensionMismatch,
    IntMatrix,
    homology,
)


class ShiftNonzero(ValueError):
    pass


class ChainComplex:
    """Graded free Z-modules C_n with differentials d_n: C_n -> C_{n-1}."""

    __slots__ = ("ranks", "diffs", "lo", "hi")

    def __init__(self, ranks, diffs, check=True):
        self.ranks = {n: r for n, r in ranks.items() if r}
        if self.ranks:
            self.lo = min(self.ranks)
            self.hi = max(self.ranks)
        else:
            self.lo = self.hi = 0
        self.diffs = {}
        for n, m in diffs.items():
            if m.rows or m.cols:
                if m.rows != self.rank(n - 1) or m.cols != self.rank(n):
                    raise DimensionMismatch(
                        "differential at degree %d has shape %dx%d, expected %dx%d"
                        % (n, m.rows, m.cols, self.rank(n - 1), self.rank(n)))
                if not m.is_zero():
                    self.diffs[n] = m
        if check:
            self.validate()

    @classmethod
    def concentrated(cls, degree, rank):
        return cls({degree: rank}, {})

    @classmethod
    def from_differentials(cls, diffs_by_degree, check=True):
        """Build from {n: d_n}; ranks inferred from matrix shapes."""
        ranks = {}
        for n, m in diffs_by_degree.items():
            ranks.setdefault(n, m.cols)
            ranks.setdefault(n - 1, m.rows)
            if ranks[n] != m.cols or ranks[n - 1] != m.rows:
                raise DimensionMismatch("inconsistent ranks at degree %d" % n)
        return cls(ranks, diffs_by_degree, check=check)

    def rank(self, n):
        return self.ranks.get(n, 0)

    def degrees(self):
        return sorted(self.ranks)

    def differential(self, n):
        d = self.diffs.get(n)
        if d is None:
            return IntMatrix.zeros(self.rank(n - 1), self.rank(n))
        return d

    def total_rank(self):
        return sum(self.ranks.values())

    def is_zero(self):
        return not self.ranks

    def validate(self):
        for n in list(self.diffs):
            a = self.differential(n)
            b = self.differential(n + 1)
            if a.cols and b.cols and not (a * b).is_zero():
                raise CompositionNonzero("d o d != 0 at degree %d" % n)

    def homology(self, n):
        return homology(self.differential(n + 1), self.differential(n))

    def homology_all(self):
        out = {}
        for n in range(self.lo, self.hi + 1):
            h = self.homology(n)
            if not h.is_trivial():
                out[n] = h
        return out

    def betti(self, n):
        return self.homology(n).free_rank

    def is_acyclic(self):
        return all(self.homology(n).is_trivial() for n in range(self.lo, self.hi + 1))

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self.ranks == other.ranks and self.diffs == other.diffs

    def __repr__(self):
        if self.is_zero():
            return "ChainComplex(0)"
        return "ChainComplex(%s)" % ", ".join(
            "%d:%d" % (n, self.ranks[n]) for n in self.degrees())


ZERO_COMPLEX = ChainComplex({}, {})


class ChainMap:
    """Degree-preserving (after shift) map of chain complexes.

    A map of degree_shift k sends C_n to D_{n+k} and satisfies
    d_D f = (-1)^k f d_C.
    """

    __slots__ = ("source", "target", "components", "degree_shift")

    def __init__(self, source, target, components, degree_shift=0, check=True):
        self.source = source
        self.target = target
        self.degree_shift = degree_shift
        self.components = {}
        for n, m in components.items():
            if m.rows != target.rank(n + degree_shift) or m.cols != source.rank(n):
                raise DimensionMismatch(
                    "component at degree %d has shape %dx%d, expected %dx%d"
                    % (n, m.rows, m.cols, target.rank(n + degree_shift), source.rank(n)))
            if not m.is_zero():
                self.components[n] = m
        if check:
            self.validate()

    @classmethod
    def zero(cls, source, target, degree_shift=0):
        return cls(source, target, {}, degree_shift, check=False)

    @classmethod
    def identity(cls, c):
        comps = {n: IntMatrix.identity(c.rank(n)) for n in c.degrees()}
        return cls(c, c, comps, 0, check=False)

    def component(self, n):
        m = self.components.get(n)
        if m is None:
            return IntMatrix.zeros(self.target.rank(n + self.degree_shift), self.source.rank(n))
        return m

    def validate(self):
        k = self.degree_shift
        sgn = -1 if k % 2 else 1
        for n in range(self.source.lo, self.source.hi + 1):
            lhs = self.target.differential(n + k) * self.component(n)
            rhs = self.component(n - 1) * self.source.differential(n)
            if sgn == -1:
                rhs = rhs.scale(-1)
            if lhs != rhs:
                raise CompositionNonzero("not a chain map at degree %d" % n)

    def compose(self, other):
        """self o other."""
        if other.target is not self.source and other.target != self.source:
            raise DimensionMismatch("composition source/target mismatch")
        comps = {}
        for n in range(other.source.lo, other.source.hi + 1):
            m = self.component(n + other.degree_shift) * other.component(n)
            if not m.is_zero():
                comps[n] = m
        return ChainMap(other.source, self.target, comps,
                        self.degree_shift + other.degree_shift, check=False)

    def __add__(self, other):
        comps = {}
        for n in set(self.components) | set(other.components):
            comps[n] = self.component(n) + other.component(n)
        return ChainMap(self.source, self.target, comps, self.degree_shift, check=False)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        comps = {n: m.scale(c) for n, m in self.components.items()}
        return ChainMap(self.source, self.target, comps, self.degree_shift, check=False)

    def induced_on_homology(self, n):
        """Matrix of H_n(source) -> H_{n+shift}(target) on (free+torsion) gens."""
        from .homalg import induced_homology_matrix
        return induced_homology_matrix(self, n)


def dual(c):
    """dual(C)_m = (C_{-m})^* with differential (-1)^m * transpose."""
    ranks = {-n: r for n, r in c.ranks.items()}
    diffs = {}
    for n in range(c.lo, c.hi + 1):
        d = c.differential(n)  # C_n -> C_{n-1}
        if d.rows and d.cols:
            m = 1 - n  # dual degree whose differential is d^T
            sgn = -1 if m % 2 else 1
            diffs[m] = d.transpose().scale(sgn)
    return ChainComplex(ranks, diffs, check=False)


def shift(c, k):
    """shift(C,k)_m = C_{m-k}; differentials pick up (-1)^k."""
    ranks = {n + k: r for n, r in c.ranks.items()}
    sgn = -1 if k % 2 else 1
    diffs = {n + k: m.scale(sgn) for n, m in c.diffs.items()}
    return ChainComplex(ranks, diffs, check=False)


def n_dual(c, n):
    """C^{n-*}: degree r part is (C_{n-r})^*."""
    return shift(dual(c), n)


class TensorLayout:
    """Basis bookkeeping for (A @ B)_g = sum of A_p @ B_q over p+q=g.

    Blocks are ordered by ascending p; within a block the basis is
    a_i @ b_j with i major.
    """

    __slots__ = ("a", "b", "offsets", "ranks")

    def __init__(self, a, b):
        self.a = a
        self.b = b
        self.offsets = {}
        self.ranks = {}
        if a.is_zero() or b.is_zero():
            return
        for g in range(a.lo + b.lo, a.hi + b.hi + 1):
            off = 0
            for p in range(a.lo, a.hi + 1):
                q = g - p
                ra, rb = a.rank(p), b.rank(q)
                if ra and rb:
                    self.offsets[(p, q)] = off
                    off += ra * rb
            if off:
                self.ranks[g] = off

    def offset(self, p, q):
        return self.offsets.get((p, q))

    def blocks(self, g):
        """List of (p, q, offset) for degree g, ascending p."""
        out = []
        for (p, q), off in self.offsets.items():
            if p + q == g:
                out.append((p, q, off))
        out.sort()
        return out


def tensor_complex(a, b):
    """Tensor product with Koszul-signed differential; returns (complex, layout)."""
    layout = TensorLayout(a, b)
    ranks = dict(layout.ranks)
    diffs = {}
    for g in sorted(ranks):
        rows = ranks.get(g - 1, 0)
        cols = ranks[g]
        if rows == 0:
            continue
        m = IntMatrix.zeros(rows, cols)
        for (p, q, off) in layout.blocks(g):
            ra, rb = a.rank(p), b.rank(q)
            da = a.differential(p)  # A_p -> A_{p-1}
            if da.rows:
                dst = layout.offset(p - 1, q)
                if dst is not None:
                    blk = da.kron(IntMatrix.identity(rb))
                    _paste(m, dst, off, blk)
            db = b.differential(q)
            if db.rows:
                dst = layout.offset(p, q - 1)
                if dst is not None:
                    blk = IntMatrix.identity(ra).kron(db)
                    if p % 2:
                        blk = blk.scale(-1)
                    _paste(m, dst, off, blk)
        if not m.is_zero():
            diffs[g] = m
    return ChainComplex(ranks, diffs, check=False), layout


def tensor(a, b):
    return tensor_complex(a, b)[0]


def _paste(m, row_off, col_off, blk):
    for i in range(blk.rows):
        row = m.data[row_off + i]
        src = blk.data[i]
        for j in range(blk.cols):
            if src[j]:
                row[col_off + j] += src[j]


class SumLayout:
    """Offsets of each summand inside a finite direct sum of complexes."""

    __slots__ = ("parts", "offsets", "ranks")

    def __init__(self, parts):
        self.parts = list(parts)
        self.offsets = []
        self.ranks = {}
        lo = min((p.lo for p in self.parts if not p.is_zero()), default=0)
        hi = max((p.hi for p in self.parts if not p.is_zero()), default=-1)
        for idx in range(len(self.parts)):
            self.offsets.append({})
        for n in range(lo, hi + 1):
            off = 0
            for idx, p in enumerate(self.parts):
                r = p.rank(n)
                if r:
                    self.offsets[idx][n] = off
                    off += r
            if off:
                self.ranks[n] = off

    def offset(self, idx, n):
        return self.offsets[idx].get(n, None)


def direct_sum(parts):
    """Block direct sum; returns (complex, layout)."""
    layout = SumLayout(parts)
    ranks = dict(layout.ranks)
    diffs = {}
    for n in ranks:
        rows = ranks.get(n - 1, 0)
        if rows == 0:
            continue
        m = IntMatrix.zeros(rows, ranks[n])
        for idx, p in enumerate(layout.parts):
            d = p.differential(n)
            if d.rows and d.cols:
                _paste(m, layout.offset(idx, n - 1), layout.offset(idx, n), d)
        if not m.is_zero():
            diffs[n] = m
    return ChainComplex(ranks, diffs, check=False), layout


def summand_inclusion(layout, idx, total):
    """ChainMap including summand idx into the direct sum."""
    part = layout.parts[idx]
    comps = {}
    for n in part.degrees():
        r = part.rank(n)
        m = IntMatrix.zeros(total.rank(n), r)
        off = layout.offset(idx, n)
        for i in range(r):
            m.data[off + i][i] = 1
        comps[n] = m
    return ChainMap(part, total, comps, 0, check=False)


def cone(f):
    """Mapping cone: cone(f)_n = target_n + source_{n-1}.

    d(b, a) = (d_B b + f a, -d_A a).  Returns (complex, layout) where layout
    gives per-degree offsets of the target part (always 0) and source part.
    """
    if f.degree_shift != 0:
        raise ShiftNonzero("cone needs a degree-0 chain map")
    a, b = f.source, f.target
    ranks = {}
    lo = min(b.lo, a.lo + 1) if not (a.is_zero() and b.is_zero()) else 0
    hi = max(b.hi, a.hi + 1) if not (a.is_zero() and b.is_zero()) else -1
    for n in range(lo, hi + 1):
        r = b.rank(n) + a.rank(n - 1)
        if r:
            ranks[n] = r
    diffs = {}
    for n in ranks:
        rows = ranks.get(n - 1, 0)
        if rows == 0:
            continue
        m = IntMatrix.zeros(rows, ranks[n])
        db = b.differential(n)
        if db.rows and db.cols:
            _paste(m, 0, 0, db)
        fc = f.component(n - 1)
        if fc.rows and fc.cols:
            _paste(m, 0, b.rank(n), fc)
        da = a.differential(n - 1)
        if da.rows and da.cols:
            _paste(m, b.rank(n - 1), b.rank(n), da.scale(-1))
        if not m.is_zero():
            diffs[n] = m
    return ChainComplex(ranks, diffs, check=False)


def fiber(f):
    """Homotopy fiber: shift of the cone, fiber(f)_n = cone(f)_{n+1}."""
    return shift(cone(f), -1)


def is_quasi_iso(f):
    """True iff f induces isomorphisms on all homology groups."""
    if f.degree_shift != 0:
        g = ChainMap(shift(f.source, f.degree_shift), f.target,
                     {n + f.degree_shift: m for n, m in f.components.items()},
                     0, check=False)
        return is_quasi_iso(g)
    return cone(f).is_acyclic()
