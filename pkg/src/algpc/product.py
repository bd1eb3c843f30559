"""Tensor products of structured complexes and pairs.

Products are assembled through a chain-level diagonal D: W -> W @ W of the
standard 2-periodic resolution W of Z over Z[Z/2] (diagonal action on the
target).  D is computed once by lifting through the acyclic complex W @ W;
any lift gives homotopic products, and the lift below is deterministic.

Internally the components are rescaled to the strict chain-map normalization
(symmetric: phi~_s = (-1)^floor(s/2) phi_s; quadratic: psi~_s = (-1)^(n s)
psi_s), combined, and rescaled back, so that all public objects satisfy the
coherence conventions of structures.py.
"""

from __future__ import annotations

from .chains import ChainComplex, ChainMap, TensorLayout, tensor_complex
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

_DIAGONAL_CACHE = []


def w_diagonal(level):
    """Entries (i, j, a, b, coeff) of D(w_level) in the basis T^a w_i @ T^b w_j."""
    while len(_DIAGONAL_CACHE) <= level:
        s = len(_DIAGONAL_CACHE)
        if s == 0:
            _DIAGONAL_CACHE.append([(0, 0, 0, 0, 1)])
            continue

        def basis(lev):
            return [(i, lev - i, a, b)
                    for i in range(lev + 1) for a in (0, 1) for b in (0, 1)]

        src = basis(s)
        dst = basis(s - 1)
        dst_index = {e: k for k, e in enumerate(dst)}
        mat = IntMatrix.zeros(len(dst), len(src))
        for col, (i, j, a, b) in enumerate(src):
            if i >= 1:
                mat.data[dst_index[(i - 1, j, a, b)]][col] += 1
                mat.data[dst_index[(i - 1, j, a ^ 1, b)]][col] += (-1) ** i
            if j >= 1:
                mat.data[dst_index[(i, j - 1, a, b)]][col] += (-1) ** i
                mat.data[dst_index[(i, j - 1, a, b ^ 1)]][col] += (-1) ** (i + j)
        prev = _DIAGONAL_CACHE[s - 1]
        rhs = [0] * len(dst)
        for (i, j, a, b, c) in prev:
            rhs[dst_index[(i, j, a, b)]] += c
            twisted = (i, j, a ^ 1, b ^ 1)
            rhs[dst_index[twisted]] += c * ((-1) ** s)
        sol = solve_integral(mat, rhs)
        if sol is None:
            raise StructureError("diagonal lift failed at level %d" % s)
        _DIAGONAL_CACHE.append(
            [(i, j, a, b, c) for (i, j, a, b), c in zip(src, sol) if c])
    return _DIAGONAL_CACHE[level]


def _eps(s):
    return -1 if (s // 2) % 2 else 1


def _eta(n, s):
    return -1 if (n * s) % 2 else 1


def _to_strict(kind, dim, comps):
    out = []
    for s, e in enumerate(comps):
        c = _eps(s) if kind == SYMMETRIC else _eta(dim, s)
        out.append(e.scale(c))
    return out


_from_strict = _to_strict  # the rescaling is an involution


def _tpow(elem, a):
    return elem.transposition() if a % 2 else elem


def shuffle(x, y, cd, lay):
    """Middle-interchange of (C@C) x (D@D) into (CD)@(CD), with Koszul sign
    (-1)^{q r} on the (p,q) x (r,t) component."""
    out = BigradedElement(cd, cd, x.degree + y.degree)
    for (p, q), mx in x.blocks.items():
        for (r, t), my in y.blocks.items():
            ro = lay.offset(p, r)
            co = lay.offset(q, t)
            if ro is None or co is None:
                continue
            sgn = -1 if (q * r) % 2 else 1
            blk = out.block(p + r, q + t).copy()
            rkr = y.a.rank(r)
            rkt = y.b.rank(t)
            for i in range(mx.rows):
                for j in range(mx.cols):
                    c = mx.data[i][j] * sgn
                    if not c:
                        continue
                    for k in range(rkr):
                        rowd = blk.data[ro + i * rkr + k]
                        myk = my.data[k]
                        for l in range(rkt):
                            if myk[l]:
                                rowd[co + j * rkt + l] += c * myk[l]
            out.set_block(p + r, q + t, blk)
    return out


def _assemble(kind_x, comps_x, n, kind_y, comps_y, m, cd, lay):
    """Strict-normalization product of two component families."""
    xs = [e for e in comps_x]
    ys = [e for e in comps_y]
    sx = len(xs) - 1
    sy = len(ys) - 1
    out = []
    if kind_x == SYMMETRIC and kind_y == SYMMETRIC:
        for s in range(max(sx + sy + 1, 1)):
            elem = BigradedElement(cd, cd, n + m + s)
            for (i, j, a, b, c) in w_diagonal(s):
                if i > sx or j > sy:
                    continue
                sgn = c * ((-1) ** ((m * i) % 2))
                term = shuffle(_tpow(xs[i], a), _tpow(ys[j], b), cd, lay)
                elem = elem + term.scale(sgn)
            out.append(elem)
        return SYMMETRIC, out
    if kind_x == QUADRATIC and kind_y == SYMMETRIC:
        res = [BigradedElement(cd, cd, n + m - i) for i in range(sx + 1)]
        for s in range(sx + 1):
            if xs[s].is_zero():
                continue
            for (i, j, a, b, c) in w_diagonal(s):
                if i > sx or j > sy or j != s - i:
                    continue
                if j > sy:
                    continue
                sgn = c
                e = (j * (n - s) + m * (i + n - s)) % 2
                if e:
                    sgn = -sgn
                term = shuffle(_tpow(xs[s], a), _tpow(ys[j], (a + b) % 2), cd, lay)
                res[i] = res[i] + term.scale(sgn)
        return QUADRATIC, res
    if kind_x == SYMMETRIC and kind_y == QUADRATIC:
        res = [BigradedElement(cd, cd, n + m - j) for j in range(sy + 1)]
        for s in range(sy + 1):
            if ys[s].is_zero():
                continue
            for (i, j, a, b, c) in w_diagonal(s):
                if i > sx:
                    continue
                sgn = c
                if ((n + i) * j) % 2:
                    sgn = -sgn
                term = shuffle(_tpow(xs[i], (a + b) % 2), _tpow(ys[s], b), cd, lay)
                res[j] = res[j] + term.scale(sgn)
        return QUADRATIC, res
    raise StructureError("unsupported product %s x %s" % (kind_x, kind_y))


def _product_comps(kind_x, comps_x, n, kind_y, comps_y, m, cd, lay):
    sx = _to_strict(kind_x, n, comps_x)
    sy = _to_strict(kind_y, m, comps_y)
    kind, comps = _assemble(kind_x, sx, n, kind_y, sy, m, cd, lay)
    return kind, _from_strict(kind, n + m, comps)


def tensor_map(f, g, src_pair=None, tgt_pair=None):
    """f @ g for degree-0 chain maps, against given tensor layouts."""
    if src_pair is None:
        src, src_lay = tensor_complex(f.source, g.source)
    else:
        src, src_lay = src_pair
    if tgt_pair is None:
        tgt, tgt_lay = tensor_complex(f.target, g.target)
    else:
        tgt, tgt_lay = tgt_pair
    comps = {}
    for nn in range(src.lo, src.hi + 1):
        mat = IntMatrix.zeros(tgt.rank(nn), src.rank(nn))
        for (p, q, off) in src_lay.blocks(nn):
            fp = f.component(p)
            gq = g.component(q)
            toff = tgt_lay.offset(p, q)
            if toff is None:
                continue
            blk = fp.kron(gq)
            for i in range(blk.rows):
                for j in range(blk.cols):
                    if blk.data[i][j]:
                        mat.data[toff + i][off + j] += blk.data[i][j]
        if not mat.is_zero():
            comps[nn] = mat
    return ChainMap(src, tgt, comps, 0, check=False), (src, src_lay), (tgt, tgt_lay)


def tensor_structured(x, y, check=True):
    """Product of structured complexes.  Symmetric x symmetric is symmetric;
    a quadratic factor (either side, the other symmetric) gives quadratic."""
    cd, lay = tensor_complex(x.cx, y.cx)
    kind, comps = _product_comps(x.kind, list(x.st.comps), x.dim,
                                 y.kind, list(y.st.comps), y.dim, cd, lay)
    mk = symmetric_structure if kind == SYMMETRIC else quadratic_structure
    return StructuredComplex(cd, mk(x.dim + y.dim, comps), check=check)


def tensor_pair_closed(p, y, check=True):
    """(f: A -> B, rel) @ (Y, theta): the pair (A@Y -> B@Y)."""
    cd, lay = tensor_complex(p.total, y.cx)
    kind, rel = _product_comps(p.kind, [p.rel_component(s) for s in range(p.rel_s_max + 1)],
                               p.dim, y.kind, list(y.st.comps), y.dim, cd, lay)
    summands, incs = [], []
    for xb, inc in zip(p.summands, p.inclusions):
        xy = tensor_structured(xb, y, check=False)
        g, _, _ = tensor_map(inc, ChainMap.identity(y.cx),
                             src_pair=(xy.cx, TensorLayout(xb.cx, y.cx)),
                             tgt_pair=(cd, lay))
        summands.append(xy)
        incs.append(g)
    return StructuredPair(kind, p.dim + y.dim, cd, rel, summands, incs, check=check)


def tensor_closed_pair(x, p, check=True):
    """(X, phi) @ (g: C -> D, rel): the pair (X@C -> X@D)."""
    cd, lay = tensor_complex(x.cx, p.total)
    kind, rel = _product_comps(x.kind, list(x.st.comps), x.dim,
                               p.kind, [p.rel_component(s) for s in range(p.rel_s_max + 1)],
                               p.dim, cd, lay)
    summands, incs = [], []
    for yb, inc in zip(p.summands, p.inclusions):
        xy = tensor_structured(x, yb, check=False)
        g, _, _ = tensor_map(ChainMap.identity(x.cx), inc,
                             src_pair=(xy.cx, TensorLayout(x.cx, yb.cx)),
                             tgt_pair=(cd, lay))
        summands.append(xy)
        incs.append(g)
    return StructuredPair(kind, x.dim + p.dim, cd, rel, summands, incs, check=check)
