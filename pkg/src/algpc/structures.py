"""Symmetric and quadratic structures on chain complexes.

A structure is stored as a finite list of elements of (C @ C), one per level
s >= 0.  Conventions (fixed once, used by every constructor in the library):

  * transposition:  (T z)^{p,q} = (-1)^{pq} (z^{q,p})^transpose
  * symmetric coherence, dimension n, components phi_s in (C@C)_{n+s}:
        d(phi_s) = (-1)^(n+s-1) (phi_{s-1} + (-1)^s T phi_{s-1}),  phi_{-1}=0,
    required for every s >= 0 *and* one step past the top component (the top
    condition is what makes phi a genuine cycle against the standard free
    resolution of Z over Z[Z/2]).
  * quadratic coherence, components psi_s in (C@C)_{n-s}:
        d(psi_s) = (-1)^(n-s-1) (psi_{s+1} + (-1)^(s+1) T psi_{s+1})
  * pair coherence for f: A -> B with relative components delta_s on B@B and
    absolute structure phi on A (one dimension lower):
        d(delta_s) = (-1)^(n+s-1) (delta_{s-1} + (-1)^s T delta_{s-1})
                     - (f@f)(phi_s)
    and the quadratic analogue with (s-1, sign) replaced per the quadratic
    rule above.

The slant map of a degree-n element z of C@C is the chain map C^{n-*} -> C
whose degree-r component is the matrix z^{r,n-r}; with the dual/shift signs
fixed in chains.py this needs no corrections.
"""

from __future__ import annotations

from .chains import ChainComplex, ChainMap, ShiftNonzero, cone, is_quasi_iso, n_dual
from .exact import DimensionMismatch, IntMatrix


SYMMETRIC = "symmetric"
QUADRATIC = "quadratic"


class StructureError(ValueError):
    pass


class NotPoincare(ValueError):
    pass


class BigradedElement:
    """Element of (A @ B)_degree, stored as sparse {(p, q): IntMatrix}."""

    __slots__ = ("a", "b", "degree", "blocks")

    def __init__(self, a, b, degree, blocks=None):
        self.a = a
        self.b = b
        self.degree = degree
        self.blocks = {}
        if blocks:
            for (p, q), m in blocks.items():
                self.set_block(p, q, m)

    def set_block(self, p, q, m):
        if p + q != self.degree:
            raise DimensionMismatch("block (%d,%d) in degree-%d element" % (p, q, self.degree))
        if m.rows != self.a.rank(p) or m.cols != self.b.rank(q):
            raise DimensionMismatch(
                "block (%d,%d): got %dx%d, expected %dx%d"
                % (p, q, m.rows, m.cols, self.a.rank(p), self.b.rank(q)))
        if m.is_zero():
            self.blocks.pop((p, q), None)
        else:
            self.blocks[(p, q)] = m

    def block(self, p, q):
        m = self.blocks.get((p, q))
        if m is None:
            return IntMatrix.zeros(self.a.rank(p), self.b.rank(q))
        return m

    def add_to_block(self, p, q, m):
        self.set_block(p, q, self.block(p, q) + m)

    def bidegrees(self):
        """All (p, q) with p+q = degree and both ranks nonzero."""
        out = []
        for p in range(self.a.lo, self.a.hi + 1):
            q = self.degree - p
            if self.a.rank(p) and self.b.rank(q):
                out.append((p, q))
        return out

    def is_zero(self):
        return all(m.is_zero() for m in self.blocks.values())

    def copy(self):
        return BigradedElement(self.a, self.b, self.degree,
                               {k: m.copy() for k, m in self.blocks.items()})

    def __add__(self, other):
        out = self.copy()
        for (p, q), m in other.blocks.items():
            out.add_to_block(p, q, m)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, BigradedElement):
            return NotImplemented
        if self.degree != other.degree:
            return False
        keys = set(self.blocks) | set(other.blocks)
        return all(self.block(*k) == other.block(*k) for k in keys)

    def scale(self, c):
        if c == 0:
            return BigradedElement(self.a, self.b, self.degree)
        return BigradedElement(self.a, self.b, self.degree,
                               {k: m.scale(c) for k, m in self.blocks.items()})

    def boundary(self):
        """(dz)^{p,q} = dA_{p+1} z^{p+1,q} + (-1)^p z^{p,q+1} dB_{q+1}^T."""
        out = BigradedElement(self.a, self.b, self.degree - 1)
        for (p, q), m in self.blocks.items():
            da = self.a.differential(p)
            if da.rows:
                out.add_to_block(p - 1, q, da * m)
            db = self.b.differential(q)
            if db.rows:
                n = m * db.transpose()
                if p % 2:
                    n = n.scale(-1)
                out.add_to_block(p, q - 1, n)
        return out

    def transposition(self):
        """The signed swap T; requires a and b to be the same complex."""
        out = BigradedElement(self.a, self.b, self.degree)
        for (p, q), m in self.blocks.items():
            t = m.transpose()
            if (p * q) % 2:
                t = t.scale(-1)
            out.add_to_block(q, p, t)
        return out

    def push(self, f, g):
        """(f@g)(z) for degree-0 chain maps f: a -> a', g: b -> b'."""
        out = BigradedElement(f.target, g.target, self.degree)
        for (p, q), m in self.blocks.items():
            img = f.component(p) * m * g.component(q).transpose()
            out.add_to_block(p, q, img)
        return out

    def slant(self, check=False):
        """Chain map C^{n-*} -> C determined by a degree-n element of C@C."""
        if self.a is not self.b and self.a != self.b:
            raise DimensionMismatch("slant needs both factors equal")
        n = self.degree
        src = n_dual(self.a, n)
        comps = {}
        for r in range(self.a.lo, self.a.hi + 1):
            m = self.block(r, n - r)
            if not m.is_zero():
                comps[r] = m
        return ChainMap(src, self.a, comps, 0, check=check)


def zero_element(a, b, degree):
    return BigradedElement(a, b, degree)


def identity_element(c, degree_pairs):
    """Sum of identity blocks; degree_pairs is [(p, q, sign)] with p+q const."""
    deg = None
    out = None
    for p, q, sign in degree_pairs:
        if deg is None:
            deg = p + q
            out = BigradedElement(c, c, deg)
        m = IntMatrix.identity(c.rank(p)).scale(sign)
        out.add_to_block(p, q, m)
    return out


# -- structures ---------------------------------------------------------------


class Structure:
    """Shared container: dimension + list of (C@C)-elements, level s first."""

    __slots__ = ("kind", "dim", "comps")

    def __init__(self, kind, dim, comps):
        self.kind = kind
        self.dim = dim
        self.comps = list(comps)
        while self.comps and self.comps[-1].is_zero():
            self.comps.pop()

    def component(self, cx, s):
        if 0 <= s < len(self.comps):
            return self.comps[s]
        deg = self.dim + s if self.kind == SYMMETRIC else self.dim - s
        return BigradedElement(cx, cx, deg)

    @property
    def s_max(self):
        return len(self.comps) - 1

    def scale(self, c):
        return Structure(self.kind, self.dim, [e.scale(c) for e in self.comps])

    def __add__(self, other):
        if self.kind != other.kind or self.dim != other.dim:
            raise DimensionMismatch("structure mismatch")
        comps = []
        for s in range(max(len(self.comps), len(other.comps))):
            if s < len(self.comps) and s < len(other.comps):
                comps.append(self.comps[s] + other.comps[s])
            elif s < len(self.comps):
                comps.append(self.comps[s])
            else:
                comps.append(other.comps[s])
        return Structure(self.kind, self.dim, comps)


def symmetric_structure(dim, comps):
    return Structure(SYMMETRIC, dim, comps)


def quadratic_structure(dim, comps):
    return Structure(QUADRATIC, dim, comps)


def check_coherence(cx, st, where="structure"):
    """Validate the coherence relations; raises StructureError on failure."""
    n = st.dim
    if st.kind == SYMMETRIC:
        for s in range(st.s_max + 2):
            lhs = st.component(cx, s).boundary()
            prev = st.component(cx, s - 1) if s >= 1 else None
            sgn = -1 if (n + s - 1) % 2 else 1
            if prev is None:
                rhs = BigradedElement(cx, cx, n + s - 1)
            else:
                t = prev.transposition()
                rhs = (prev + t) if s % 2 == 0 else (prev - t)
                rhs = rhs.scale(sgn)
            if lhs != rhs:
                raise StructureError("%s: symmetric coherence fails at s=%d" % (where, s))
    else:
        for s in range(st.s_max + 1):
            lhs = st.component(cx, s).boundary()
            nxt = st.component(cx, s + 1)
            sgn = -1 if (n - s - 1) % 2 else 1
            t = nxt.transposition()
            rhs = (nxt + t) if (s + 1) % 2 == 0 else (nxt - t)
            rhs = rhs.scale(sgn)
            if lhs != rhs:
                raise StructureError("%s: quadratic coherence fails at s=%d" % (where, s))


class StructuredComplex:
    """Chain complex with a symmetric or quadratic structure."""

    __slots__ = ("cx", "st")

    def __init__(self, cx, st, check=True):
        self.cx = cx
        self.st = st
        if check:
            check_coherence(cx, st)

    @property
    def kind(self):
        return self.st.kind

    @property
    def dim(self):
        return self.st.dim

    def component(self, s):
        return self.st.component(self.cx, s)

    def duality_element(self):
        """phi_0 for symmetric, (1+T) psi_0 for quadratic."""
        z = self.component(0)
        if self.kind == QUADRATIC:
            z = z + z.transposition()
        return z

    def duality_map(self):
        return self.duality_element().slant()

    def is_poincare(self):
        if self.cx.is_zero():
            return True
        return is_quasi_iso(self.duality_map())

    def negate(self):
        return StructuredComplex(self.cx, self.st.scale(-1), check=False)

    def validate(self):
        self.cx.validate()
        check_coherence(self.cx, self.st)
        if self.kind == QUADRATIC:
            pass
        return True

    def __repr__(self):
        return "StructuredComplex(%s, dim=%d, %r)" % (self.kind, self.dim, self.cx)


def symmetrize(q):
    """Polarization: phi_0 = (1+T) psi_0, higher components zero."""
    if q.kind != QUADRATIC:
        raise StructureError("symmetrize wants a quadratic complex")
    z = q.component(0)
    phi0 = z + z.transposition()
    return StructuredComplex(q.cx, symmetric_structure(q.dim, [phi0]), check=False)


class StructuredPair:
    """Pair f: A -> B with relative structure and structured boundary.

    The boundary complex may be presented as a direct sum; `summands` then
    lists the structured pieces and `inclusions` the chain maps of each piece
    into B (their block sum is the inclusion of the full boundary).
    """

    __slots__ = ("kind", "dim", "total", "rel", "summands", "inclusions")

    def __init__(self, kind, dim, total, rel, summands, inclusions, check=True):
        self.kind = kind
        self.dim = dim
        self.total = total
        self.rel = list(rel)
        while self.rel and self.rel[-1].is_zero():
            self.rel.pop()
        self.summands = list(summands)
        self.inclusions = list(inclusions)
        if check:
            self.validate()

    @classmethod
    def closed(cls, x):
        """A closed structured complex viewed as a pair over nothing."""
        return cls(x.kind, x.dim, x.cx, list(x.st.comps), [], [], check=False)

    def rel_component(self, s):
        if 0 <= s < len(self.rel):
            return self.rel[s]
        deg = self.dim + s if self.kind == SYMMETRIC else self.dim - s
        return BigradedElement(self.total, self.total, deg)

    @property
    def rel_s_max(self):
        return len(self.rel) - 1

    def boundary_structure_component(self, s):
        """Component s of the block-sum boundary structure, per summand."""
        return [x.component(s) for x in self.summands]

    def boundary_is_empty(self):
        return all(x.cx.is_zero() for x in self.summands)

    def as_closed(self):
        if not self.boundary_is_empty():
            raise StructureError("pair has nonempty boundary")
        kindf = symmetric_structure if self.kind == SYMMETRIC else quadratic_structure
        return StructuredComplex(self.total, kindf(self.dim, self.rel), check=False)

    def negate(self):
        return StructuredPair(
            self.kind, self.dim, self.total,
            [e.scale(-1) for e in self.rel],
            [x.negate() for x in self.summands],
            list(self.inclusions), check=False)

    def validate(self):
        n = self.dim
        for x, inc in zip(self.summands, self.inclusions):
            if x.kind != self.kind:
                raise StructureError("boundary summand of the wrong kind")
            if x.dim != n - 1:
                raise StructureError("boundary summand of the wrong dimension")
            x.validate()
            inc.validate()
        smax = self.rel_s_max
        for x in self.summands:
            smax = max(smax, x.st.s_max)
        for s in range(smax + 2):
            lhs = self.rel_component(s).boundary()
            if self.kind == SYMMETRIC:
                prev = self.rel_component(s - 1) if s >= 1 else None
                sgn = -1 if (n + s - 1) % 2 else 1
                if prev is None:
                    rhs = BigradedElement(self.total, self.total, n + s - 1)
                else:
                    t = prev.transposition()
                    rhs = (prev + t) if s % 2 == 0 else (prev - t)
                    rhs = rhs.scale(sgn)
            else:
                nxt = self.rel_component(s + 1)
                sgn = -1 if (n - s - 1) % 2 else 1
                t = nxt.transposition()
                rhs = (nxt + t) if (s + 1) % 2 == 0 else (nxt - t)
                rhs = rhs.scale(sgn)
            for x, inc in zip(self.summands, self.inclusions):
                z = x.component(s)
                rhs = rhs - z.push(inc, inc)
            if lhs != rhs:
                raise StructureError("pair coherence fails at s=%d" % s)
        return True

    def duality_map(self):
        """Relative duality B^{n-*} -> cone(inclusion)."""
        from .chains import direct_sum, summand_inclusion
        n = self.dim
        bdy, layout = direct_sum([x.cx for x in self.summands])
        comps = {}
        for m in range(bdy.lo, bdy.hi + 1):
            cols = []
            for idx, x in enumerate(self.summands):
                inc = self.inclusions[idx]
                c = inc.component(m)
                if c.rows == 0 or c.cols == 0:
                    cols.append(IntMatrix.zeros(self.total.rank(m), x.cx.rank(m)))
                else:
                    cols.append(c)
            if cols:
                row = cols[0]
                for c in cols[1:]:
                    row = row.hstack(c)
                if not row.is_zero():
                    comps[m] = row
        f = ChainMap(bdy, self.total, comps, 0, check=False)
        k = cone(f)
        src = n_dual(self.total, n)
        # relative part: slant of (1+T)rel_0 for quadratic, rel_0 for symmetric
        rel0 = self.rel_component(0)
        if self.kind == QUADRATIC:
            rel0 = rel0 + rel0.transposition()
        hcomps = {}
        for r in range(src.lo, src.hi + 1):
            rows_b = self.total.rank(r)
            rows_a = bdy.rank(r - 1)
            src_r = src.rank(r)
            if src_r == 0 or (rows_b + rows_a) == 0:
                continue
            top = rel0.block(r, n - r)
            # boundary part: slant of each summand structure composed with
            # the transposed inclusion, stacked per the sum layout
            bot = IntMatrix.zeros(rows_a, src_r)
            for idx, x in enumerate(self.summands):
                z0 = x.component(0)
                if x.kind == QUADRATIC:
                    z0 = z0 + z0.transposition()
                blkm = z0.block(r - 1, n - r)  # (A_{n-r})^* -> A_{r-1}
                incT = self.inclusions[idx].component(n - r).transpose()
                piece = blkm * incT
                off = layout.offset(idx, r - 1)
                if off is not None and not piece.is_zero():
                    for i in range(piece.rows):
                        for j in range(piece.cols):
                            bot.data[off + i][j] += piece.data[i][j]
            full = top.vstack(bot) if rows_a else top
            if not full.is_zero():
                hcomps[r] = full
        return ChainMap(src, k, hcomps, 0, check=False)

    def is_poincare(self):
        for x in self.summands:
            if not x.is_poincare():
                return False
        if self.total.is_zero() and self.boundary_is_empty():
            return True
        return is_quasi_iso(self.duality_map())

    def __repr__(self):
        return "StructuredPair(%s, dim=%d, boundary pieces=%d)" % (
            self.kind, self.dim, len(self.summands))


def is_poincare(obj):
    return obj.is_poincare()


# -- the algebraic boundary ---------------------------------------------------


class BoundaryLayout:
    """(dC)_r = C_{r+1} (+) (C^{n-*})_r; remembers the two offsets."""

    __slots__ = ("c", "dualc", "n", "total")

    def __init__(self, c, n):
        self.c = c
        self.n = n
        self.dualc = n_dual(c, n)

    def ranks(self):
        out = {}
        lo = min(self.c.lo - 1, self.dualc.lo) if not self.c.is_zero() else 0
        hi = max(self.c.hi - 1, self.dualc.hi) if not self.c.is_zero() else -1
        for r in range(lo, hi + 1):
            k = self.c.rank(r + 1) + self.dualc.rank(r)
            if k:
                out[r] = k
        return out


def boundary(x):
    """Algebraic boundary pair of a symmetric complex (C, phi).

    Returns a Poincare pair (dC -> C^{n-*}) of dimension n, where dC is the
    shifted mapping cone of the duality map with the induced symmetric
    structure:

        d_{dC} = [[-d, -slant(phi_0)], [0, delta]]
        (dphi)_s = (-1)^(n+1) iota(phi_{s+1}) + (s=0 identity blocks)

    with iota(z)^{p,q} = (-1)^p z^{p+1,q+1} and identity blocks
    (-1)^((n-1)q) I on C_{p+1} @ dual_q and (-1)^p I on dual_p @ C_{q+1}.
    The relative structure of the pair is zero.
    """
    if x.kind != SYMMETRIC:
        raise StructureError("boundary is implemented for symmetric complexes")
    c = x.cx
    n = x.dim
    lay = BoundaryLayout(c, n)
    dualc = lay.dualc
    ranks = lay.ranks()
    phi0 = x.component(0)
    diffs = {}
    for r in ranks:
        rows = ranks.get(r - 1, 0)
        if rows == 0:
            continue
        m = IntMatrix.zeros(rows, ranks[r])
        cu_r = c.rank(r + 1)
        cu_r1 = c.rank(r)
        dc = c.differential(r + 1)
        if dc.rows and dc.cols:
            _paste_at(m, 0, 0, dc.scale(-1))
        sl = phi0.block(r, n - r)  # dual_r -> C_r
        if not sl.is_zero():
            _paste_at(m, 0, cu_r, sl.scale(-1))
        dd = dualc.differential(r)
        if dd.rows and dd.cols:
            _paste_at(m, cu_r1, cu_r, dd)
        if not m.is_zero():
            diffs[r] = m
    dcx = ChainComplex(ranks, diffs, check=False)

    def u_off(r):
        return 0

    def d_off(r):
        return c.rank(r + 1)

    comps = []
    top = x.st.s_max
    for s in range(max(top, 1) + 1):
        elem = BigradedElement(dcx, dcx, (n - 1) + s)
        phi_next = x.component(s + 1)
        sgn_iota = -1 if (n + 1) % 2 else 1
        for (p, q) in elem.bidegrees():
            blkm = phi_next.block(p + 1, q + 1)
            if not blkm.is_zero():
                sgn = sgn_iota * (-1 if p % 2 else 1)
                _add_sub_block(elem, p, q, u_off(p), u_off(q), blkm.scale(sgn))
        if s == 0:
            for q in range(dualc.lo, dualc.hi + 1):
                p = (n - 1) - q
                rk = c.rank(p + 1)
                if rk and dualc.rank(q) == rk:
                    sgn = -1 if ((n - 1) * q) % 2 else 1
                    _add_sub_block(elem, p, q, u_off(p), d_off(q),
                                   IntMatrix.identity(rk).scale(sgn))
            for p in range(dualc.lo, dualc.hi + 1):
                q = (n - 1) - p
                rk = c.rank(q + 1)
                if rk and dualc.rank(p) == rk:
                    sgn = -1 if p % 2 else 1
                    _add_sub_block(elem, p, q, d_off(p), u_off(q),
                                   IntMatrix.identity(rk).scale(sgn))
        comps.append(elem)
    bnd = StructuredComplex(dcx, symmetric_structure(n - 1, comps), check=False)
    # inclusion dC -> C^{n-*} is the projection on the dual part
    inc_comps = {}
    for r in dcx.degrees():
        rd = dualc.rank(r)
        if rd == 0:
            continue
        m = IntMatrix.zeros(rd, dcx.rank(r))
        for i in range(rd):
            m.data[i][d_off(r) + i] = 1
        inc_comps[r] = m
    inc = ChainMap(dcx, dualc, inc_comps, 0, check=False)
    total_str = StructuredComplex(dualc, symmetric_structure(n - 1, []), check=False)
    return StructuredPair(SYMMETRIC, n, dualc, [], [bnd], [inc], check=False)


def _paste_at(m, r0, c0, blk):
    for i in range(blk.rows):
        row = m.data[r0 + i]
        for j in range(blk.cols):
            if blk.data[i][j]:
                row[c0 + j] += blk.data[i][j]


def _add_sub_block(elem, p, q, roff, coff, blk):
    full = elem.block(p, q).copy()
    _paste_at(full, roff, coff, blk)
    elem.set_block(p, q, full)


# -- Q-groups -----------------------------------------------------------------


def q_group(c, n, kind):
    """Q-group of the complex: homology of the Hom/tensor complex against the
    standard 2-periodic resolution of Z over Z[Z/2].

    kind='symmetric' gives H_n Hom_{Z[Z/2]}(W, C@C); kind='quadratic' gives
    H_n of W tensor_{Z[Z/2]} (C@C).
    """
    from .chains import tensor_complex
    cc, _ = tensor_complex(c, c)

    def t_matrix(deg):
        """Matrix of T acting on (C@C)_deg in the tensor layout basis."""
        from .chains import TensorLayout
        lay = TensorLayout(c, c)
        rk = lay.ranks.get(deg, 0)
        m = IntMatrix.zeros(rk, rk)
        for (p, q, off) in lay.blocks(deg):
            dst = lay.offset(q, p)
            ra, rb = c.rank(p), c.rank(q)
            sgn = -1 if (p * q) % 2 else 1
            for i in range(ra):
                for j in range(rb):
                    # e_i @ e_j at (p,q) maps to sgn * e_j @ e_i at (q,p)
                    m.data[dst + j * ra + i][off + i * rb + j] += sgn
        return m

    if kind == SYMMETRIC:
        # chains in degree m: sum over s >= 0 of (C@C)_{m+s}
        def levels(m):
            out = []
            s = 0
            while m + s <= cc.hi:
                if cc.rank(m + s):
                    out.append(s)
                s += 1
            return out

        def d_matrix(m):
            # differential Hom_m -> Hom_{m-1}
            src_levels = levels(m)
            dst_levels = levels(m - 1)
            src_off = {}
            off = 0
            for s in src_levels:
                src_off[s] = off
                off += cc.rank(m + s)
            dst_off = {}
            doff = 0
            for s in dst_levels:
                dst_off[s] = doff
                doff += cc.rank(m - 1 + s)
            mat = IntMatrix.zeros(doff, off)
            for s in src_levels:
                blk = cc.differential(m + s)
                if s in dst_off and blk.rows:
                    _paste_at(mat, dst_off[s], src_off[s], blk)
                # -(-1)^m (1 + (-1)^{s'} T) on f_{s}, landing at level s+1
                sp = s + 1
                if sp in dst_off:
                    deg = m + s
                    t = t_matrix(deg)
                    one = IntMatrix.identity(t.rows)
                    term = (one + t) if sp % 2 == 0 else (one - t)
                    sgn = -1 if m % 2 == 0 else 1
                    _paste_at(mat, dst_off[sp], src_off[s], term.scale(sgn))
            return mat

        from .exact import homology as _homology
        return _homology(d_matrix(n + 1), d_matrix(n))
    else:
        # chains in degree m: sum over s >= 0 of (C@C)_{m-s}
        def levels(m):
            out = []
            s = 0
            while m - s >= cc.lo:
                if cc.rank(m - s):
                    out.append(s)
                s += 1
            return out

        def d_matrix(m):
            src_levels = levels(m)
            dst_levels = levels(m - 1)
            src_off = {}
            off = 0
            for s in src_levels:
                src_off[s] = off
                off += cc.rank(m - s)
            dst_off = {}
            doff = 0
            for s in dst_levels:
                dst_off[s] = doff
                doff += cc.rank(m - 1 - s)
            mat = IntMatrix.zeros(doff, off)
            for s in src_levels:
                # d(w_s @ x) = w_{s-1} @ (1 + (-1)^s T)x + (-1)^s w_s @ dx
                if s - 1 in dst_off:
                    deg = m - s
                    t = t_matrix(deg)
                    one = IntMatrix.identity(t.rows)
                    term = (one + t) if s % 2 == 0 else (one - t)
                    _paste_at(mat, dst_off[s - 1], src_off[s], term)
                blk = cc.differential(m - s)
                if s in dst_off and blk.rows:
                    blk2 = blk.scale(-1) if s % 2 else blk
                    _paste_at(mat, dst_off[s], src_off[s], blk2)
            return mat

        from .exact import homology as _homology
        return _homology(d_matrix(n + 1), d_matrix(n))
