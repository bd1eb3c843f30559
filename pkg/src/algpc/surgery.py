"""Algebraic gluing, Thom construction, nullcobordism factories, and linear
completion of relative structures.

The union of two pairs (f: A -> B) and (f': A -> B') over a common boundary
piece A (with opposite structure orientations) lives on

    G_r = B_r (+) A_{r-1} (+) B'_r,
    d(b, x, b') = (d_B b + f x, -d_A x, d_B' b' - f' x)

and carries the relative structure, per level s and bidegree (p, q):

    (B,B)   delta_s                  (B',B')  delta'_s
    (A,B)   phi_s^{p-1,q} f_q^T      (B',A)   (-1)^p f'_p phi_s^{p,q-1}
    (A,A)   symmetric: (-1)^{n+p} (T phi_{s-1})^{p-1,q-1}
            quadratic: (-1)^{n+1+p} (T psi_{s+1})^{p-1,q-1}

Gluing a boundary piece of a pair to another boundary piece of the same pair
(closing up a cycle) uses the same blocks with both correction legs landing
in the single total complex.
"""

from __future__ import annotations

from .chains import ChainComplex, ChainMap, ZERO_COMPLEX
from .exact import IntMatrix, solve_integral
from .structures import (
    QUADRATIC,
    SYMMETRIC,
    BigradedElement,
    StructureError,
    StructuredComplex,
    StructuredPair,
    quadratic_structure,
    symmetric_structure,
)


class BoundaryMismatch(ValueError):
    pass


class UnionLayout:
    __slots__ = ("b", "a", "bp", "total")

    def __init__(self, b, a, bp, total):
        self.b = b
        self.a = a
        self.bp = bp
        self.total = total

    def off_b(self, r):
        return 0

    def off_a(self, r):
        return self.b.rank(r)

    def off_bp(self, r):
        return self.b.rank(r) + self.a.rank(r - 1)


def _embed(g, total, off_fn):
    """Re-target a chain map into the union complex via an offset function."""
    comps = {}
    for n in range(g.source.lo, g.source.hi + 1):
        m = g.component(n)
        if m.rows == 0 or m.cols == 0 or m.is_zero():
            continue
        big = IntMatrix.zeros(total.rank(n), m.cols)
        off = off_fn(n)
        for i in range(m.rows):
            for j in range(m.cols):
                big.data[off + i][j] = m.data[i][j]
        comps[n] = big
    return ChainMap(g.source, total, comps, 0, check=False)


def _union_total(b, a, bp, f, fp, self_mode=False):
    """The union complex and its differential."""
    ranks = {}
    parts = [p for p in (b, a, bp) if not p.is_zero()]
    if not parts:
        return ZERO_COMPLEX, UnionLayout(b, a, bp, ZERO_COMPLEX)
    lo = min(min(p.lo for p in parts), a.lo + 1 if not a.is_zero() else 10 ** 9)
    hi = max(max(p.hi for p in parts), a.hi + 1 if not a.is_zero() else -(10 ** 9))
    for r in range(lo, hi + 1):
        k = b.rank(r) + a.rank(r - 1) + bp.rank(r)
        if k:
            ranks[r] = k
    lay = UnionLayout(b, a, bp, None)
    diffs = {}
    for r in ranks:
        rows = ranks.get(r - 1, 0)
        if rows == 0:
            continue
        m = IntMatrix.zeros(rows, ranks[r])
        ob, oa, ob2 = 0, b.rank(r), b.rank(r) + a.rank(r - 1)
        ob_d, oa_d, ob2_d = 0, b.rank(r - 1), b.rank(r - 1) + a.rank(r - 2)
        blk = b.differential(r)
        _paste(m, ob_d, ob, blk)
        blk = bp.differential(r)
        _paste(m, ob2_d, ob2, blk)
        da = a.differential(r - 1)
        _paste(m, oa_d, oa, da.scale(-1))
        fc = f.component(r - 1)
        _paste(m, ob_d, oa, fc)
        fpc = fp.component(r - 1)
        _paste(m, ob_d if self_mode else ob2_d, oa, fpc.scale(-1))
        if not m.is_zero():
            diffs[r] = m
    total = ChainComplex(ranks, diffs, check=False)
    return total, UnionLayout(b, a, bp, total)


def _paste(m, r0, c0, blk):
    if blk.rows == 0 or blk.cols == 0:
        return
    for i in range(blk.rows):
        row = m.data[r0 + i]
        src = blk.data[i]
        for j in range(blk.cols):
            if src[j]:
                row[c0 + j] += src[j]


def _union_structure(kind, n, total, lay, a_struct, f, fp, rel1, rel2, self_mode):
    """Relative structure components on the union complex."""
    a = lay.a
    smax = max(
        len(rel1) - 1,
        len(rel2) - 1,
        a_struct.st.s_max + (1 if kind == SYMMETRIC else 0),
        0,
    )
    if kind == QUADRATIC:
        smax = max(smax, a_struct.st.s_max)
    comps = []
    for s in range(smax + 1):
        deg = n + s if kind == SYMMETRIC else n - s
        elem = BigradedElement(total, total, deg)
        # (B,B) and (B',B') blocks
        if s < len(rel1):
            for (p, q), mat in rel1[s].blocks.items():
                _add_block(elem, p, q, lay.off_b(p), lay.off_b(q), mat)
        if s < len(rel2):
            off = lay.off_b if self_mode else lay.off_bp
            for (p, q), mat in rel2[s].blocks.items():
                _add_block(elem, p, q, off(p), off(q), mat)
        # corrections from the glued boundary structure
        phi_s = a_struct.component(s)
        if kind == SYMMETRIC:
            corner = a_struct.component(s - 1) if s >= 1 else None
        else:
            corner = a_struct.component(s + 1)
        for (p, q) in elem.bidegrees():
            # (A, B): phi_s^{p-1,q} f_q^T
            blk = phi_s.block(p - 1, q)
            if not blk.is_zero():
                mat = blk * f.component(q).transpose()
                if not mat.is_zero():
                    _add_block(elem, p, q, lay.off_a(p), lay.off_b(q), mat)
            # (B', A): (-1)^p f'_p phi_s^{p,q-1}
            blk = phi_s.block(p, q - 1)
            if not blk.is_zero():
                mat = fp.component(p) * blk
                if p % 2:
                    mat = mat.scale(-1)
                if not mat.is_zero():
                    off = lay.off_b if self_mode else lay.off_bp
                    _add_block(elem, p, q, off(p), lay.off_a(q), mat)
            # (A, A) corner
            if corner is not None:
                tz = corner.transposition()
                blk = tz.block(p - 1, q - 1)
                if not blk.is_zero():
                    if kind == SYMMETRIC:
                        sgn = -1 if (n + p) % 2 else 1
                    else:
                        sgn = -1 if (n + 1 + p) % 2 else 1
                    _add_block(elem, p, q, lay.off_a(p), lay.off_a(q), blk.scale(sgn))
        comps.append(elem)
    return comps


def _add_block(elem, p, q, roff, coff, blk):
    full = elem.block(p, q).copy()
    _paste(full, roff, coff, blk)
    elem.set_block(p, q, full)


def _check_opposite(x1, x2):
    if x1.cx != x2.cx:
        raise BoundaryMismatch("boundary complexes differ")
    s1, s2 = x1.st, x2.st
    if s1.kind != s2.kind or s1.dim != s2.dim:
        raise BoundaryMismatch("boundary structures differ in kind or dimension")
    for s in range(max(s1.s_max, s2.s_max) + 1):
        if s1.component(x1.cx, s) != s2.component(x2.cx, s).scale(-1):
            raise BoundaryMismatch("boundary structures are not opposite")


def union_pairs(p1, p2, idx1=0, idx2=0, check=True):
    """Glue boundary summand idx1 of p1 to summand idx2 of p2.

    p2's summand must carry the opposite structure of p1's on the same
    complex.  Returns the union StructuredPair whose boundary consists of the
    unglued summands of p1 followed by those of p2.
    """
    if p1.kind != p2.kind or p1.dim != p2.dim:
        raise BoundaryMismatch("pairs of different kind or dimension")
    x1 = p1.summands[idx1]
    x2 = p2.summands[idx2]
    _check_opposite(x1, x2)
    f = p1.inclusions[idx1]
    fp = p2.inclusions[idx2]
    total, lay = _union_total(p1.total, x1.cx, p2.total, f, fp)
    rel = _union_structure(p1.kind, p1.dim, total, lay, x1, f, fp,
                           p1.rel, p2.rel, self_mode=False)
    summands, incs = [], []
    for i, x in enumerate(p1.summands):
        if i == idx1:
            continue
        summands.append(x)
        incs.append(_embed(p1.inclusions[i], total, lay.off_b))
    for i, x in enumerate(p2.summands):
        if i == idx2:
            continue
        summands.append(x)
        incs.append(_embed(p2.inclusions[i], total, lay.off_bp))
    return StructuredPair(p1.kind, p1.dim, total, rel, summands, incs, check=check)


def self_union(p, idx1, idx2, check=True):
    """Glue boundary summand idx1 of p to summand idx2 of the same pair."""
    if idx1 == idx2:
        raise BoundaryMismatch("cannot glue a summand to itself")
    x1 = p.summands[idx1]
    x2 = p.summands[idx2]
    _check_opposite(x1, x2)
    f = p.inclusions[idx1]
    fp = p.inclusions[idx2]
    total, lay = _union_total(p.total, x1.cx, ZERO_COMPLEX, f, fp, self_mode=True)
    rel = _union_structure(p.kind, p.dim, total, lay, x1, f, fp,
                           p.rel, [], self_mode=True)
    summands, incs = [], []
    for i, x in enumerate(p.summands):
        if i in (idx1, idx2):
            continue
        summands.append(x)
        incs.append(_embed(p.inclusions[i], total, lay.off_b))
    return StructuredPair(p.kind, p.dim, total, rel, summands, incs, check=check)


def zero_pair_over(x):
    """The pair (X -> 0); Poincare exactly when X is acyclic."""
    zero_inc = ChainMap(x.cx, ZERO_COMPLEX, {}, 0, check=False)
    return StructuredPair(x.kind, x.dim + 1, ZERO_COMPLEX, [], [x], [zero_inc],
                          check=False)


def thom(p, check=True):
    """Algebraic Thom construction: cone off every boundary summand."""
    if not p.is_poincare():
        from .structures import NotPoincare
        raise NotPoincare("thom of a non-Poincare pair")
    out = p
    while out.summands:
        cap = zero_pair_over(out.summands[0].negate())
        out = union_pairs(out, cap, 0, 0, check=check)
    return out.as_closed()


def glue(p1, p2, matches=None, check=True):
    """Algebraic gluing of two Poincare pairs along their boundaries.

    matches is a list of (idx1, idx2) summand pairs; default glues summand 0
    to summand 0.  All matched boundaries must be glued for the result to be
    closed; remaining summands are returned as a pair.
    """
    if matches is None:
        matches = [(0, 0)]
    done1 = set()
    done2 = set()
    out = None
    for (i, j) in sorted(matches):
        if out is None:
            out = union_pairs(p1, p2, i, j, check=check)
            done1.add(i)
            done2.add(j)
            # recompute indices of remaining summands in the union
        else:
            # summand indices shift: p1 leftovers first, then p2 leftovers
            i1 = sum(1 for k in range(i) if k not in done1)
            j1 = len(p1.summands) - len(done1) + sum(1 for k in range(j) if k not in done2)
            out = self_union(out, i1, j1, check=check)
            done1.add(i)
            done2.add(j)
    if out is None:
        raise BoundaryMismatch("nothing to glue")
    if out.summands:
        return out
    return out.as_closed()


def null_pair(x):
    """The cylinder pair (X (+) -X -> X) with zero relative structure."""
    ident = ChainMap.identity(x.cx)
    return StructuredPair(x.kind, x.dim + 1, x.cx, [], [x, x.negate()],
                          [ident, ident], check=False)


def direct_sum_structured(xs):
    """Direct sum of structured complexes of equal kind and dimension."""
    from .chains import direct_sum
    kind = xs[0].kind
    dim = xs[0].dim
    total, lay = direct_sum([x.cx for x in xs])
    smax = max(x.st.s_max for x in xs)
    comps = []
    for s in range(smax + 1):
        deg = dim + s if kind == SYMMETRIC else dim - s
        elem = BigradedElement(total, total, deg)
        for idx, x in enumerate(xs):
            z = x.component(s)
            for (p, q), m in z.blocks.items():
                _add_block(elem, p, q, lay.offset(idx, p), lay.offset(idx, q), m)
        comps.append(elem)
    mk = symmetric_structure if kind == SYMMETRIC else quadratic_structure
    return StructuredComplex(total, mk(dim, comps), check=False)


def direct_sum_pairs(ps):
    """Direct sum of structured pairs (block everything)."""
    from .chains import direct_sum
    kind = ps[0].kind
    dim = ps[0].dim
    total, lay = direct_sum([p.total for p in ps])
    smax = max([p.rel_s_max for p in ps] + [0])
    rel = []
    for s in range(smax + 1):
        deg = dim + s if kind == SYMMETRIC else dim - s
        elem = BigradedElement(total, total, deg)
        for idx, p in enumerate(ps):
            z = p.rel_component(s)
            for (pp, qq), m in z.blocks.items():
                _add_block(elem, pp, qq, lay.offset(idx, pp), lay.offset(idx, qq), m)
        rel.append(elem)
    summands, incs = [], []
    for idx, p in enumerate(ps):
        for x, inc in zip(p.summands, p.inclusions):
            summands.append(x)
            incs.append(_embed(inc, total, lambda r, idx=idx: lay.offset(idx, r)))
    return StructuredPair(kind, dim, total, rel, summands, incs, check=False)


# -- linear completion of structures -----------------------------------------


def solve_pair_relative(kind, dim, total, summands, inclusions,
                        s_limit=None, pinned=None):
    """Solve the pair-coherence equations for the relative components.

    pinned maps (s, p, q) -> IntMatrix for blocks that are fixed in advance;
    all other block entries are unknowns.  Returns the list of relative
    components or None when the linear system has no integral solution.
    """
    n = dim
    cc_deg = (lambda s: n + s) if kind == SYMMETRIC else (lambda s: n - s)
    if s_limit is None:
        # beyond this the component groups vanish
        width = total.hi - total.lo if not total.is_zero() else 0
        s_limit = max(0, 2 * width + 2)
    pinned = pinned or {}
    # unknown index bookkeeping
    var_index = {}
    nvars = 0
    elems = []
    for s in range(s_limit + 1):
        elem = BigradedElement(total, total, cc_deg(s))
        for (p, q) in elem.bidegrees():
            key = (s, p, q)
            if key in pinned:
                elem.set_block(p, q, pinned[key])
            else:
                for i in range(total.rank(p)):
                    for j in range(total.rank(q)):
                        var_index[(s, p, q, i, j)] = nvars
                        nvars += 1
        elems.append(elem)

    def rel_comp(s):
        if 0 <= s <= s_limit:
            return elems[s]
        return BigradedElement(total, total, cc_deg(s))

    rows = []
    rhs = []

    def coeff_row():
        return [0] * nvars

    # linearized boundary of an unknown element: for each equation entry we
    # need the coefficients; easiest is to assemble equations blockwise
    for s in range(s_limit + 2):
        # equation: d(rel_s) - sign*(rel_{s'} +- T rel_{s'}) + sum(push phi) = 0
        deg_out = cc_deg(s) - 1
        if kind == SYMMETRIC:
            sprev = s - 1
            sgn = -1 if (n + s - 1) % 2 else 1
            t_sign = 1 if s % 2 == 0 else -1
        else:
            sprev = s + 1
            sgn = -1 if (n - s - 1) % 2 else 1
            t_sign = 1 if (s + 1) % 2 == 0 else -1
        if s > s_limit and (sprev > s_limit or sprev < 0):
            continue
        for p in range(total.lo, total.hi + 1):
            q = deg_out - p
            rp, rq = total.rank(p), total.rank(q)
            if rp == 0 or rq == 0:
                continue
            # constant part accumulators and linear coefficient maps
            const = [[0] * rq for _ in range(rp)]
            lin = {}

            def add(i, j, key, c):
                if c == 0:
                    return
                if key is None:
                    return
                if isinstance(key, int):
                    lin.setdefault((i, j), {}).setdefault(key, 0)
                    lin[(i, j)][key] += c
                else:
                    const[i][j] += c * key

            # d(rel_s) at (p, q): dA rel^{p+1,q} + (-1)^p rel^{p,q+1} dB^T
            if s <= s_limit:
                da = total.differential(p + 1)
                for i in range(rp):
                    for j in range(rq):
                        for k in range(total.rank(p + 1)):
                            c = da.data[i][k]
                            if c:
                                _acc(lin, const, total, pinned, var_index,
                                     s, p + 1, q, k, j, i, j, c)
                db = total.differential(q + 1)
                sgn_p = -1 if p % 2 else 1
                for i in range(rp):
                    for j in range(rq):
                        for k in range(total.rank(q + 1)):
                            c = db.data[j][k] * sgn_p
                            if c:
                                _acc(lin, const, total, pinned, var_index,
                                     s, p, q + 1, i, k, i, j, c)
            # -sgn * (rel_{sprev} + t_sign * T rel_{sprev}) at (p, q)
            if 0 <= sprev <= s_limit:
                for i in range(rp):
                    for j in range(rq):
                        _acc(lin, const, total, pinned, var_index,
                             sprev, p, q, i, j, i, j, -sgn)
                tsgn = -t_sign if (p * q) % 2 else t_sign
                for i in range(rp):
                    for j in range(rq):
                        _acc(lin, const, total, pinned, var_index,
                             sprev, q, p, j, i, i, j, -sgn * tsgn)
            # + sum over summands of push(phi_s) at (p, q)
            for x, inc in zip(summands, inclusions):
                z = x.component(s) if s <= x.st.s_max else None
                if z is None:
                    continue
                blk = z.block(p, q)
                if blk.rows and blk.cols:
                    img = inc.component(p) * blk * inc.component(q).transpose()
                    for i in range(rp):
                        for j in range(rq):
                            const[i][j] += img.data[i][j]
            for i in range(rp):
                for j in range(rq):
                    row_lin = lin.get((i, j))
                    if not row_lin and const[i][j] == 0:
                        continue
                    row = coeff_row()
                    if row_lin:
                        for k, c in row_lin.items():
                            row[k] += c
                    rows.append(row)
                    rhs.append(-const[i][j])

    if nvars == 0:
        if any(rhs):
            return None
        return [rel_comp(s) for s in range(s_limit + 1)]
    mat = IntMatrix.from_rows(rows) if rows else IntMatrix(0, nvars)
    sol = solve_integral(mat, rhs) if rows else [0] * nvars
    if sol is None:
        return None
    for (s, p, q, i, j), k in var_index.items():
        if sol[k]:
            blk = elems[s].block(p, q).copy()
            blk.data[i][j] += sol[k]
            elems[s].set_block(p, q, blk)
    return elems


def _acc(lin, const, total, pinned, var_index, s, p, q, i, j, ei, ej, c):
    """Accumulate coefficient c * rel_s[p,q][i,j] into equation entry (ei,ej)."""
    key = (s, p, q)
    if key in pinned:
        const[ei][ej] += c * pinned[key].data[i][j]
        return
    k = var_index.get((s, p, q, i, j))
    if k is None:
        return
    lin.setdefault((ei, ej), {}).setdefault(k, 0)
    lin[(ei, ej)][k] += c


# -- nullcobordism factories --------------------------------------------------


class WitnessNotFound(ValueError):
    pass


def null_pair_merged(x):
    """Cylinder pair with both ends merged into a single boundary summand
    X (+) -X, included into the total X by (1, 1)."""
    s = direct_sum_structured([x, x.negate()])
    comps = {}
    for n in x.cx.degrees():
        r = x.cx.rank(n)
        m = IntMatrix.zeros(r, 2 * r)
        for i in range(r):
            m.data[i][i] = 1
            m.data[i][r + i] = 1
        comps[n] = m
    inc = ChainMap(s.cx, x.cx, comps, 0, check=False)
    return StructuredPair(x.kind, x.dim + 1, x.cx, [], [s], [inc], check=False)


def double(p):
    """glue(P, -P) matching summand i with summand i, in order.

    The resulting total keeps the layout [B | A_0[1] | B' | A_1[1] | ...]
    with the two copies of B at fixed offsets (0 and rank B + rank A_0[1]).
    """
    q = p.negate()
    k = len(p.summands)
    if k == 0:
        raise BoundaryMismatch("double of a closed pair")
    out = union_pairs(p, q, 0, 0, check=False)
    for t in range(1, k):
        out = self_union(out, 0, k - t, check=False)
    return out


def double_null_pair(p, check=True):
    """The fold pair (double(P) -> P.total): an explicit nullcobordism of
    the double, with zero relative structure."""
    dbl = double(p)
    if dbl.summands:
        raise BoundaryMismatch("double left boundary pieces unglued")
    x = dbl.as_closed()
    g = x.cx
    b = p.total
    a0 = p.summands[0].cx if p.summands else None
    comps = {}
    for r in g.degrees():
        rb = b.rank(r)
        if rb == 0:
            continue
        m = IntMatrix.zeros(rb, g.rank(r))
        off2 = rb + (a0.rank(r - 1) if a0 is not None else 0)
        for i in range(rb):
            m.data[i][i] = 1
            m.data[i][off2 + i] = 1
        comps[r] = m
    inc = ChainMap(g, b, comps, 0, check=check)
    return StructuredPair(p.kind, p.dim + 1, b, [], [x], [inc], check=check)


def _isotropic_subset(gram, qmat, target):
    """Greedy integral rank-`target` sublattice isotropic for the pairing
    `gram` and (when qmat is given) with vanishing q = v^T qmat v."""
    n = gram.rows
    if target == 0:
        return []
    from itertools import product as iproduct

    def pairing(u, v):
        return sum(u[i] * gram.data[i][j] * v[j] for i in range(n) for j in range(n))

    def qval(v):
        if qmat is None:
            return 0
        return sum(v[i] * qmat.data[i][j] * v[j] for i in range(n) for j in range(n))

    basis = []
    for vec in iproduct((-1, 0, 1), repeat=n):
        if not any(vec):
            continue
        v = list(vec)
        if qval(v) != 0 or pairing(v, v) != 0:
            continue
        if any(pairing(v, u) != 0 or pairing(u, v) != 0 for u in basis):
            continue
        # the span must stay a primitive sublattice (all invariant factors 1)
        from .exact import smith_normal_form as _snf
        m = IntMatrix.from_columns(basis + [v], rows=n)
        diag = _snf(m).diagonal
        if len([d for d in diag if d != 0]) != len(basis) + 1 or any(
                d not in (0, 1) for d in diag):
            continue
        basis.append(v)
        if len(basis) == target:
            return basis
    return None


def _middle_pairing_data(y, m):
    """Middle homology data on the dual side: (duality map component,
    dual-side free reps, pairing gram, q matrix or None)."""
    g = y.duality_map()
    hd = g.source.homology(m)
    comp = g.component(m)
    k = hd.free_reps.cols
    gram = IntMatrix.zeros(k, k)
    for i in range(k):
        xi = hd.free_reps.column(i)
        for j in range(k):
            img = comp.apply(hd.free_reps.column(j))
            gram.data[i][j] = sum(a * b for a, b in zip(xi, img))
    qmat = None
    if y.kind == QUADRATIC:
        psi = y.component(0).block(m, y.dim - m)
        qmat = IntMatrix.zeros(k, k)
        for i in range(k):
            xi = hd.free_reps.column(i)
            for j in range(k):
                img = psi.apply(hd.free_reps.column(j))
                qmat.data[i][j] = sum(a * b for a, b in zip(xi, img))
    return comp, hd, gram, qmat


def find_null_pair(y, max_extra_cells=10):
    """Best-effort explicit nullcobordism of a closed structured complex.

    Tries: the zero pair when Y is acyclic; otherwise handle attachment along
    free homology below the middle plus an isotropic half of the middle
    pairing (with vanishing quadratic values in the quadratic case), solving
    the relative structure integrally.  Raises WitnessNotFound on failure.
    """
    if y.cx.is_acyclic():
        return zero_pair_over(y)
    n = y.dim
    c = y.cx
    mid2 = n - 1  # kill at degrees m with 2m <= mid2, Lagrangian at 2m in {n-1, n}
    kills = []
    for m in range(c.lo, c.hi + 1):
        h = c.homology(m)
        if h.is_trivial():
            continue
        if 2 * m < mid2:
            for j in range(h.free_reps.cols):
                kills.append((m, h.free_reps.column(j)))
            for j in range(h.torsion_reps.cols):
                kills.append((m, h.torsion_reps.column(j)))
        elif 2 * m in (n - 1, n):
            if h.free_reps.cols == 0:
                continue
            comp, hd, gram, qmat = _middle_pairing_data(y, m)
            k = hd.free_reps.cols
            if 2 * m == n:
                if k % 2:
                    raise WitnessNotFound("odd middle rank cannot be halved")
                target = k // 2
            else:
                target = k // 2
            iso = _isotropic_subset(gram, qmat, target)
            if iso is None:
                raise WitnessNotFound("no isotropic middle sublattice found")
            for v in iso:
                xi = [0] * hd.free_reps.rows
                for t in range(k):
                    col = hd.free_reps.column(t)
                    xi = [a + v[t] * b for a, b in zip(xi, col)]
                kills.append((m, comp.apply(xi)))
    if not kills:
        raise WitnessNotFound("nothing killable below or at the middle")
    if len(kills) > max_extra_cells:
        raise WitnessNotFound("too many cells required")
    ranks = dict(c.ranks)
    diffs = {m: c.differential(m).copy() for m in c.diffs}
    extra = {}
    for (m, vec) in kills:
        extra.setdefault(m + 1, []).append(vec)
    for deg, vecs in sorted(extra.items()):
        old = ranks.get(deg, 0)
        base = diffs.get(deg)
        if base is None:
            cols = [[0] * c.rank(deg - 1) for _ in range(old)]
        else:
            cols = base.columns()
        cols = cols + [list(v) for v in vecs]
        diffs[deg] = IntMatrix.from_columns(cols, rows=c.rank(deg - 1))
        ranks[deg] = old + len(vecs)
        up_rank = c.rank(deg + 1)
        if up_rank:
            up = diffs.get(deg + 1)
            if up is None:
                up = IntMatrix.zeros(c.rank(deg), up_rank)
            pad = IntMatrix.zeros(len(vecs), up_rank)
            diffs[deg + 1] = up.vstack(pad)
    b = ChainComplex(ranks, diffs)
    comps = {}
    for m in c.degrees():
        r = c.rank(m)
        mm = IntMatrix.zeros(b.rank(m), r)
        for i in range(r):
            mm.data[i][i] = 1
        comps[m] = mm
    inc = ChainMap(c, b, comps, 0, check=True)
    rel = solve_pair_relative(y.kind, n + 1, b, [y.negate()], [inc])
    if rel is None:
        raise WitnessNotFound("no integral relative structure on the handle body")
    out = StructuredPair(y.kind, n + 1, b, rel, [y.negate()], [inc], check=True)
    if not out.is_poincare():
        raise WitnessNotFound("handle body failed Poincare duality")
    return out
