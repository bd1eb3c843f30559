"""Chain-level cobordism invariants.

Middle-dimensional extraction: for a Poincare symmetric complex of dimension
n the intersection form lives on H_{n/2} (n = 4k) and the linking form on
the torsion of H_{(n-1)/2} (n = 4k+1).  For quadratic complexes of dimension
4k+2 the Kervaire form lives on H_{2k+1}( ;Z/2), demanding homology
concentrated there (or a caller-supplied reduction to such a complex).
"""

from __future__ import annotations

from fractions import Fraction

from .chains import ChainMap, cone, n_dual
from .exact import IntMatrix, rational_solve, solve_integral
from .forms import (
    F2QuadraticForm,
    IntBilinearForm,
    LinkingForm,
    arf,
    signature,
    torsion_mod2_rank,
)
from .homalg import express_cycle, f2_homology_basis, f2_kernel, f2_solve, torsion_inverse_image
from .structures import (
    QUADRATIC,
    SYMMETRIC,
    NotPoincare,
    StructureError,
    StructuredComplex,
    StructuredPair,
    symmetric_structure,
    symmetrize,
)
from .surgery import glue, union_pairs


class WrongDimension(ValueError):
    pass


class DivisibilityViolation(ArithmeticError):
    pass


class NotMiddleConcentrated(ValueError):
    pass


class InvalidWitness(ValueError):
    pass


def _require_poincare(x):
    if not x.is_poincare():
        raise NotPoincare("input is not Poincare")


def intersection_form(x, check_poincare=True):
    """Unimodular symmetric form on H_{2k}(C)/torsion of a 4k-dim complex."""
    if x.kind != SYMMETRIC:
        x = symmetrize(x)
    n = x.dim
    if n % 4 != 0:
        raise WrongDimension("intersection form needs dimension 0 mod 4")
    if check_poincare:
        _require_poincare(x)
    r = n // 2
    g = x.duality_map()
    hd = g.source.homology(r)
    comp = g.component(r)
    k = hd.free_reps.cols
    gram = IntMatrix.zeros(k, k)
    for i in range(k):
        xi = hd.free_reps.column(i)
        for j in range(k):
            img = comp.apply(hd.free_reps.column(j))
            gram.data[i][j] = sum(a * b for a, b in zip(xi, img))
    return IntBilinearForm(gram)


def chain_signature(x):
    """Signature when dim = 0 mod 4, else 0 (operating on Poincare input)."""
    _require_poincare(x)
    if x.dim % 4 != 0:
        return 0
    return signature(intersection_form(x, check_poincare=False))


def linking_form(x, check_poincare=True):
    """Torsion linking form on Tor H_{(n-1)/2} of a (4k+1)-dim complex.

    lambda(u_i, u_j) = (1/s_i) <xi_j, w_i> mod Z, with s_i u_i = d w_i and
    xi_j a torsion cycle in C^{n-*} mapping to u_j under the duality map.
    """
    if x.kind != SYMMETRIC:
        x = symmetrize(x)
    n = x.dim
    if n % 4 != 1:
        raise WrongDimension("linking form needs dimension 1 mod 4")
    if check_poincare:
        _require_poincare(x)
    r = (n - 1) // 2
    c = x.cx
    h = c.homology(r)
    orders = h.torsion
    m = len(orders)
    if m == 0:
        return LinkingForm([], [])
    g = x.duality_map()
    hd = g.source.homology(r)
    inv_cols = torsion_inverse_image(g, r, h_src=hd, h_tgt=h)
    if inv_cols is None:
        raise NotPoincare("duality map is not invertible on torsion")
    # torsion cycles in the dual complex hitting each torsion generator
    xis = []
    for j in range(m):
        vec = [0] * g.source.rank(r)
        for t in range(m):
            col = hd.torsion_reps.column(t)
            vec = [a + inv_cols[j][t] * b for a, b in zip(vec, col)]
        xis.append(vec)
    lam = [[Fraction(0)] * m for _ in range(m)]
    d_up = c.differential(r + 1)
    for i in range(m):
        target = [orders[i] * v for v in h.torsion_reps.column(i)]
        w = solve_integral(d_up, target)
        if w is None:
            raise StructureError("torsion representative does not bound")
        for j in range(m):
            val = sum(a * b for a, b in zip(xis[j], w))
            lam[i][j] = Fraction(val, orders[i]) % 1
    for i in range(m):
        for j in range(m):
            if lam[i][j] != lam[j][i]:
                raise StructureError("linking pairing failed to be symmetric")
    return LinkingForm(orders, lam)


def chain_de_rham(x):
    """Mod-2 rank of the middle torsion when dim = 1 mod 4, else 0."""
    _require_poincare(x)
    if x.dim % 4 != 1:
        return 0
    r = (x.dim - 1) // 2
    return torsion_mod2_rank(x.cx.homology(r).torsion)


def chain_index(q):
    """Sign(symmetrize)/8 for a Poincare quadratic complex of dim 0 mod 4."""
    if q.kind != QUADRATIC:
        raise StructureError("index wants a quadratic complex")
    if q.dim % 4 != 0:
        raise WrongDimension("index needs dimension 0 mod 4")
    _require_poincare(q)
    s = chain_signature(symmetrize(q))
    if s % 8 != 0:
        raise DivisibilityViolation("signature %d of a Poincare quadratic complex"
                                    " is not divisible by 8" % s)
    return s // 8


def _middle_concentrated(c, r):
    for m in range(c.lo, c.hi + 1):
        if m != r and not c.homology(m).is_trivial():
            return False
    return True


def chain_kervaire(q, reduction=None):
    """Arf invariant of x -> <x, psi_0 x> on middle mod-2 homology.

    Requires homology concentrated in the middle degree; a caller may pass
    reduction=(q2, f) with f: C -> C2 a quasi-isomorphism pushing psi_0 to
    the structure of the middle-concentrated complex q2.
    """
    if q.kind != QUADRATIC:
        raise StructureError("Kervaire invariant wants a quadratic complex")
    n = q.dim
    if n % 4 != 2:
        raise WrongDimension("Kervaire invariant needs dimension 2 mod 4")
    r = n // 2
    if reduction is not None:
        q2, f = reduction
        from .chains import is_quasi_iso
        if not is_quasi_iso(f):
            raise InvalidWitness("reduction map is not a quasi-isomorphism")
        if q.component(0).push(f, f) != q2.component(0):
            raise InvalidWitness("reduction does not carry the structure")
        return chain_kervaire(q2)
    if not _middle_concentrated(q.cx, r):
        raise NotMiddleConcentrated(
            "homology not concentrated in degree %d; supply a reduction" % r)
    _require_poincare(q)
    c = q.cx
    basis = f2_homology_basis(c.differential(r + 1), c.differential(r))
    k = len(basis)
    if k == 0:
        return 0
    g = q.duality_map()
    gm = g.component(r)
    dual_cx = g.source
    # mod-2 cycles of the dual complex in degree r
    kd = f2_kernel(dual_cx.differential(r))
    if not kd:
        raise NotPoincare("dual complex has no middle cycles")
    cyc = IntMatrix.from_columns(kd, rows=dual_cx.rank(r))
    d_up = c.differential(r + 1)
    sys_cols = (gm * cyc).columns() + d_up.columns()
    sysm = IntMatrix.from_columns(sys_cols, rows=c.rank(r)) if sys_cols else IntMatrix(c.rank(r), 0)
    psi0 = q.component(0).block(r, n - r)
    xis = []
    for b in basis:
        sol = f2_solve(sysm, b)
        if sol is None:
            raise NotPoincare("mod-2 duality is not surjective")
        coeffs = sol[:cyc.cols]
        xi = [0] * dual_cx.rank(r)
        for t, ct in enumerate(coeffs):
            if ct & 1:
                xi = [(a + b2) & 1 for a, b2 in zip(xi, cyc.column(t))]
        xis.append(xi)
    qvals = []
    bil = IntMatrix.zeros(k, k)
    for i in range(k):
        v = psi0.apply(xis[i])
        qvals.append(sum(a * b for a, b in zip(xis[i], v)) & 1)
        for j in range(k):
            w = gm.apply(xis[j])
            bil.data[i][j] = sum(a * b for a, b in zip(xis[i], w)) & 1
    return arf(F2QuadraticForm(k, bil, qvals))


def pair_signature(p):
    """Signature of the image form Im(H_{2k}(B) -> H_{2k}(B, dB))."""
    if p.dim % 4 != 0:
        return 0
    if not p.is_poincare():
        raise NotPoincare("pair signature needs a Poincare pair")
    if p.kind == QUADRATIC:
        from .invariants import _symmetrize_pair
        p = _symmetrize_pair(p)
    n = p.dim
    r = n // 2
    h = p.duality_map()
    k = h.target
    b = p.total
    hb = b.homology(r)
    hk = k.homology(r)
    hd = h.source.homology(r)
    if hb.free_reps.cols == 0:
        return 0
    # j: B -> cone includes as the first block
    bk = k.differential(r + 1)

    def into_k(vec):
        return list(vec) + [0] * (k.rank(r) - len(vec))

    j_cols = [express_cycle(hk, bk, into_k(hb.free_reps.column(i)))
              for i in range(hb.free_reps.cols)]
    h_cols = [express_cycle(hk, bk, h.component(r).apply(hd.free_reps.column(t)))
              for t in range(hd.free_reps.cols)]
    nf = hk.free_reps.cols
    hmat = IntMatrix.zeros(nf, hd.free_reps.cols)
    for t, (fc, _) in enumerate(h_cols):
        for i in range(nf):
            hmat.data[i][t] = fc[i]
    lam = []
    for jj in range(hb.free_reps.cols):
        fc, _ = j_cols[jj]
        sol = rational_solve(hmat, fc)
        if sol is None:
            raise NotPoincare("relative duality not invertible rationally")
        # the dual-side cycle representing h^{-1} j beta_j, rationally
        row = []
        for i in range(hb.free_reps.cols):
            beta = hb.free_reps.column(i)
            total = Fraction(0)
            for t in range(hd.free_reps.cols):
                if sol[t]:
                    xi = hd.free_reps.column(t)
                    total += sol[t] * sum(a * bb for a, bb in zip(xi, beta))
            row.append(total)
        lam.append(row)
    # symmetric rational Gram matrix of the image form
    m = len(lam)
    sym = [[lam[i][j] + lam[j][i] for j in range(m)] for i in range(m)]
    return _rational_signature(sym) if m else 0


def _rational_signature(rows):
    n = len(rows)
    a = [[Fraction(rows[i][j]) for j in range(n)] for i in range(n)]
    sig = 0
    k = 0
    while k < n:
        piv = None
        for i in range(k, n):
            if a[i][i] != 0:
                piv = i
                break
        if piv is None:
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


# -- normal complexes as symmetric-quadratic pairs ----------------------------


class SymQuadPair:
    """Normal complex in pair form: a Poincare quadratic boundary E of
    dimension m-1 inside a symmetric Poincare pair of dimension m whose
    boundary is the symmetrization of E."""

    __slots__ = ("quad", "pair")

    def __init__(self, quad, pair, check=True):
        self.quad = quad
        self.pair = pair
        if check:
            self.validate()

    @property
    def dim(self):
        return self.pair.dim

    @classmethod
    def from_symmetric(cls, x):
        """A closed symmetric complex with empty (zero) quadratic boundary."""
        from .chains import ZERO_COMPLEX
        from .structures import quadratic_structure
        zero_q = StructuredComplex(ZERO_COMPLEX,
                                   quadratic_structure(x.dim - 1, []), check=False)
        inc = ChainMap(ZERO_COMPLEX, x.cx, {}, 0, check=False)
        pair = StructuredPair(SYMMETRIC, x.dim, x.cx, list(x.st.comps),
                              [symmetrize_trivial(zero_q)], [inc], check=False)
        return cls(zero_q, pair, check=False)

    def validate(self):
        if self.quad.kind != QUADRATIC:
            raise StructureError("normal boundary must be quadratic")
        if self.pair.kind != SYMMETRIC:
            raise StructureError("normal total must be a symmetric pair")
        if self.pair.dim != self.quad.dim + 1:
            raise WrongDimension("dimension mismatch in normal pair")
        if len(self.pair.summands) != 1:
            raise StructureError("normal pair needs exactly one boundary piece")
        sym = symmetrize(self.quad)
        bd = self.pair.summands[0]
        if bd.cx != sym.cx:
            raise StructureError("pair boundary complex differs from (1+T) of E")
        for s in range(max(bd.st.s_max, sym.st.s_max) + 1):
            if bd.component(s) != sym.component(s):
                raise StructureError("pair boundary structure is not (1+T) of E")
        self.quad.validate()
        self.pair.validate()
        if not self.quad.is_poincare():
            raise NotPoincare("quadratic boundary is not Poincare")
        return True

    def is_poincare(self):
        return self.quad.is_poincare() and self.pair.is_poincare()

    def negate(self):
        return SymQuadPair(self.quad.negate(), self.pair.negate(), check=False)


def symmetrize_trivial(q):
    """Symmetrize that tolerates the empty complex."""
    if q.cx.is_zero():
        return StructuredComplex(q.cx, symmetric_structure(q.dim, []), check=False)
    return symmetrize(q)


def _symmetrize_pair(p):
    """Polarize a quadratic pair into a symmetric pair."""
    if p.kind != QUADRATIC:
        return p
    rel0 = p.rel_component(0)
    rel0 = rel0 + rel0.transposition()
    rel = [rel0] if not rel0.is_zero() else []
    summands = [symmetrize_trivial(x) for x in p.summands]
    return StructuredPair(SYMMETRIC, p.dim, p.total, rel, summands,
                          list(p.inclusions), check=False)


class Witness:
    """A Poincare quadratic pair asserted to bound a stated complex.

    The pair's single boundary summand must equal the negated target
    structure on the nose (identifications are the caller's burden).
    """

    __slots__ = ("pair",)

    def __init__(self, pair):
        self.pair = pair

    def validate_for(self, target):
        p = self.pair
        if len(p.summands) != 1:
            raise InvalidWitness("witness must have exactly one boundary piece")
        x = p.summands[0]
        if x.kind != target.kind or x.dim != target.dim:
            raise InvalidWitness("witness boundary kind/dimension mismatch")
        if x.cx != target.cx:
            raise InvalidWitness("witness boundary complex differs from target")
        for s in range(max(x.st.s_max, target.st.s_max) + 1):
            if x.component(s) != target.component(s).scale(-1):
                raise InvalidWitness("witness boundary is not the negated target")
        if not p.is_poincare():
            raise InvalidWitness("witness pair is not Poincare")
        return True


def normal_kervaire(n_obj):
    """K of a (4k+3)-normal complex: the Kervaire invariant of its boundary."""
    if n_obj.dim % 4 != 3:
        return 0
    if n_obj.quad.cx.is_zero():
        return 0
    return chain_kervaire(n_obj.quad)


def normal_de_rham(n_obj, witness=None):
    """dR of a (4k+1)-normal complex via a nullcobordism of -E."""
    if n_obj.dim % 4 != 1:
        return 0
    if n_obj.quad.cx.is_zero():
        closed = n_obj.pair.as_closed()
        return chain_de_rham(closed)
    if witness is None:
        raise InvalidWitness("a bounding witness for -E is required")
    witness.validate_for(n_obj.quad)
    wsym = _symmetrize_pair(witness.pair)
    glued = glue(n_obj.pair, wsym)
    return chain_de_rham(glued)


def normal_sign8(n_obj, witness=None):
    """Mod-8 signature of a 4k-normal complex via a nullcobordism of -E."""
    if n_obj.dim % 4 != 0:
        return 0
    if n_obj.quad.cx.is_zero():
        closed = n_obj.pair.as_closed()
        return chain_signature(closed) % 8
    if witness is None:
        raise InvalidWitness("a bounding witness for -E is required")
    witness.validate_for(n_obj.quad)
    wsym = _symmetrize_pair(witness.pair)
    glued = glue(n_obj.pair, wsym)
    return chain_signature(glued) % 8


# -- reports ------------------------------------------------------------------


class InvariantReport:
    """Named invariant values for a structured object.

    Only the invariants applicable to (kind, dimension mod 4) are present;
    accessors return 0 for the rest, matching the convention that each
    invariant extends by zero outside its dimension class.
    """

    __slots__ = ("kind", "dim", "values")

    def __init__(self, kind, dim, values):
        self.kind = kind
        self.dim = dim
        self.values = dict(values)

    def get(self, name):
        return self.values.get(name, 0)

    def __eq__(self, other):
        return (self.kind, self.dim, self.values) == (other.kind, other.dim, other.values)

    def __repr__(self):
        vals = ", ".join("%s=%s" % kv for kv in sorted(self.values.items()))
        return "InvariantReport(%s, dim=%d, %s)" % (self.kind, self.dim, vals)


def invariants(obj, witness=None):
    """Invariant report for a structured complex or a normal pair."""
    if isinstance(obj, SymQuadPair):
        vals = {}
        m = obj.dim
        if m % 4 == 0:
            vals["Sign8"] = normal_sign8(obj, witness)
        elif m % 4 == 1:
            vals["dR"] = normal_de_rham(obj, witness)
        elif m % 4 == 3:
            vals["K"] = normal_kervaire(obj)
        return InvariantReport("normal", m, vals)
    if obj.kind == SYMMETRIC:
        vals = {}
        if obj.dim % 4 == 0:
            vals["Sign"] = chain_signature(obj)
        elif obj.dim % 4 == 1:
            vals["dR"] = chain_de_rham(obj)
        return InvariantReport(SYMMETRIC, obj.dim, vals)
    vals = {}
    if obj.dim % 4 == 0:
        vals["I"] = chain_index(obj)
    elif obj.dim % 4 == 2:
        vals["K"] = chain_kervaire(obj)
    return InvariantReport(QUADRATIC, obj.dim, vals)
