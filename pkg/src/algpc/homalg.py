"""Homology-level bookkeeping on top of exact.homology.

Expressing cycles in terms of homology generators, induced maps of chain
maps, inverses on torsion subgroups, and small mod-2 linear algebra for
Kervaire-type computations.
"""

from __future__ import annotations

from .exact import IntMatrix, solve_integral


class NotACycle(ValueError):
    pass


def express_cycle(h, boundary_matrix, z):
    """Coordinates of a cycle z in the generators of the homology group h.

    Solves [free_reps | torsion_reps | boundaries] * x = z over Z and returns
    (free_coords, torsion_coords) with torsion coordinates reduced mod the
    orders.  Raises NotACycle when z is not in the span (i.e. not a cycle).
    """
    cols = []
    nf = h.free_reps.cols
    nt = h.torsion_reps.cols
    cols.extend(h.free_reps.columns())
    cols.extend(h.torsion_reps.columns())
    cols.extend(boundary_matrix.columns())
    A = IntMatrix.from_columns(cols, rows=len(z)) if cols else IntMatrix(len(z), 0)
    x = solve_integral(A, list(z))
    if x is None:
        raise NotACycle("vector is not a cycle in this degree")
    free = x[:nf]
    tors = [x[nf + i] % h.torsion[i] for i in range(nt)]
    return free, tors


def induced_homology_matrix(f, n):
    """Induced map on degree-n homology as coordinate data.

    Returns (h_src, h_tgt, free_block, tor_block) where free_block maps the
    source free generators and tor_block the source torsion generators, each
    expressed as (free_coords, torsion_coords) columns in the target.
    """
    k = f.degree_shift
    h_src = f.source.homology(n)
    h_tgt = f.target.homology(n + k)
    bmat = f.target.differential(n + k + 1)
    comp = f.component(n)
    free_cols, tor_cols = [], []
    for j in range(h_src.free_reps.cols):
        img = comp.apply(h_src.free_reps.column(j))
        free_cols.append(express_cycle(h_tgt, bmat, img))
    for j in range(h_src.torsion_reps.cols):
        img = comp.apply(h_src.torsion_reps.column(j))
        tor_cols.append(express_cycle(h_tgt, bmat, img))
    return h_src, h_tgt, free_cols, tor_cols


def torsion_inverse_image(f, n, h_src=None, h_tgt=None):
    """For f inducing an isomorphism on degree-n torsion, return the matrix
    sending target torsion generators to source torsion coordinates.

    Works modulo the orders; returns a list of coordinate columns (one per
    target torsion generator) or None when the induced map is not invertible
    on torsion.
    """
    k = f.degree_shift
    if h_src is None:
        h_src = f.source.homology(n)
    if h_tgt is None:
        h_tgt = f.target.homology(n + k)
    ts, tt = h_src.torsion, h_tgt.torsion
    if len(ts) != len(tt) or ts != tt:
        return None
    if not ts:
        return []
    bmat = f.target.differential(n + k + 1)
    comp = f.component(n)
    # matrix M of the induced map on torsion (columns = images of source gens)
    m = len(ts)
    M = [[0] * m for _ in range(m)]
    for j in range(m):
        img = comp.apply(h_src.torsion_reps.column(j))
        _, tcoords = express_cycle(h_tgt, bmat, img)
        for i in range(m):
            M[i][j] = tcoords[i]
    # invert the square system M x = e_i coordinate-wise over Z with the
    # congruences mod orders handled by an augmented integral solve:
    # solve M x + D y = e_i where D = diag(orders)
    cols = []
    D = IntMatrix.diagonal(tt)
    A = IntMatrix.from_rows(M).hstack(D)
    for i in range(m):
        e = [1 if r == i else 0 for r in range(m)]
        x = solve_integral(A, e)
        if x is None:
            return None
        cols.append([x[j] % ts[j] for j in range(m)])
    return cols


# -- mod-2 linear algebra ---------------------------------------------------

def f2_rref(rows, width):
    """Reduced row echelon form over GF(2); rows are int bitmasks.

    Pivots are chosen at the lowest set bit so that augmented columns packed
    at high positions are never used as pivots unless a row is supported
    there alone (which is exactly the inconsistent case)."""
    out = []
    pivots = []
    for r in rows:
        r &= (1 << width) - 1
        for p, pr in zip(pivots, out):
            if r >> p & 1:
                r ^= pr
        if r:
            p = (r & -r).bit_length() - 1
            # reduce previous rows
            for i in range(len(out)):
                if out[i] >> p & 1:
                    out[i] ^= r
            out.append(r)
            pivots.append(p)
    order = sorted(range(len(out)), key=lambda i: pivots[i])
    return [out[i] for i in order], sorted(pivots)


def f2_kernel(mat):
    """Kernel basis over GF(2) of an IntMatrix reduced mod 2.

    Returns a list of column vectors (0/1 ints) spanning ker(mat mod 2).
    """
    rows, cols = mat.rows, mat.cols
    # work with columns as unknowns: row-reduce the matrix
    bitrows = []
    for i in range(rows):
        v = 0
        for j in range(cols):
            if mat.data[i][j] & 1:
                v |= 1 << j
        bitrows.append(v)
    red, pivots = f2_rref(bitrows, cols)
    pivset = set(pivots)
    basis = []
    for j in range(cols):
        if j in pivset:
            continue
        vec = [0] * cols
        vec[j] = 1
        for r, p in zip(red, pivots):
            if r >> j & 1:
                vec[p] = 1
        basis.append(vec)
    return basis


def f2_solve(mat, b):
    """One solution of mat * x = b over GF(2), or None."""
    rows, cols = mat.rows, mat.cols
    aug = []
    for i in range(rows):
        v = 0
        for j in range(cols):
            if mat.data[i][j] & 1:
                v |= 1 << j
        if b[i] & 1:
            v |= 1 << cols
        aug.append(v)
    red, pivots = f2_rref(aug, cols + 1)
    x = [0] * cols
    for r, p in zip(red, pivots):
        if p == cols:
            return None
    for r, p in zip(red, pivots):
        # row has pivot p < cols; value = bit at position cols
        x[p] = (r >> cols) & 1
    return x


def f2_homology_basis(d_next, d_this):
    """Basis of H_n(C; Z/2) as cycle vectors, for the pair of differentials."""
    ker = f2_kernel(d_this)
    if not ker:
        return []
    # image vectors of d_next mod 2
    img = [d_next.column(j) for j in range(d_next.cols)]
    img = [[x & 1 for x in v] for v in img]
    width = d_this.cols
    img_rows = []
    for v in img:
        bits = 0
        for i, x in enumerate(v):
            if x & 1:
                bits |= 1 << i
        img_rows.append(bits)
    red_img, piv_img = f2_rref(img_rows, width)
    basis = []
    span = list(red_img)
    span_piv = list(piv_img)
    for v in ker:
        bits = 0
        for i, x in enumerate(v):
            if x & 1:
                bits |= 1 << i
        r = bits
        for p, pr in zip(span_piv, span):
            if r >> p & 1:
                r ^= pr
        if r:
            p = r.bit_length() - 1
            for i in range(len(span)):
                if span[i] >> p & 1:
                    span[i] ^= r
            span.append(r)
            span_piv.append(p)
            vec = [(r >> i) & 1 for i in range(width)]
            # keep the reduced representative; any cycle rep works
            basis.append([x & 1 for x in v])
    return basis
