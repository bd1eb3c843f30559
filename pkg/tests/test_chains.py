import random

from algpc.chains import (
    ChainComplex,
    ChainMap,
    cone,
    direct_sum,
    dual,
    fiber,
    is_quasi_iso,
    n_dual,
    shift,
    tensor,
)
from algpc.exact import IntMatrix


def random_complex(rng, max_rank=3, lo=0, hi=3):
    """Random bounded complex built by factoring each differential through
    the kernel of the previous one (so d o d = 0 by construction)."""
    from algpc.exact import kernel_basis
    ranks = {n: rng.randint(0, max_rank) for n in range(lo, hi + 1)}
    diffs = {}
    prev = None  # d_{n-1} as a matrix C_{n-1} -> C_{n-2}
    for n in range(lo + 1, hi + 1):
        rows = ranks.get(n - 1, 0)
        cols = ranks.get(n, 0)
        if rows == 0 or cols == 0:
            prev = IntMatrix.zeros(ranks.get(n - 1, 0) and 0 or 0, rows) if rows else None
            prev = None
            continue
        if prev is None:
            m = IntMatrix(rows, cols, [rng.randint(-2, 2) for _ in range(rows * cols)])
        else:
            k = kernel_basis(prev)
            if k.cols == 0:
                m = IntMatrix.zeros(rows, cols)
            else:
                y = IntMatrix(k.cols, cols, [rng.randint(-2, 2) for _ in range(k.cols * cols)])
                m = k * y
        diffs[n] = m
        prev = m
    return ChainComplex(ranks, diffs)


def point(degree=0, rank=1):
    return ChainComplex.concentrated(degree, rank)


def test_dual_point():
    c = point(0)
    d = dual(c)
    assert d.rank(0) == 1 and d.total_rank() == 1


def test_dual_interval():
    c = ChainComplex({1: 1, 0: 1}, {1: IntMatrix.from_rows([[2]])})
    d = dual(c)
    assert d.rank(0) == 1 and d.rank(-1) == 1
    assert d.differential(0).data[0][0] in (2, -2)


def test_double_dual_ranks_and_signs():
    rng = random.Random(3)
    for _ in range(20):
        c = random_complex(rng)
        dd = dual(dual(c))
        assert dd.ranks == c.ranks
        for n in c.diffs:
            assert dd.differential(n) == c.differential(n).scale(-1)


def test_shift():
    rng = random.Random(4)
    c = random_complex(rng)
    assert shift(c, 0) == c
    assert shift(shift(c, 1), -1) == c
    for n in range(c.lo, c.hi + 1):
        h1 = shift(c, 2).homology(n + 2)
        h0 = c.homology(n)
        assert (h1.free_rank, h1.torsion) == (h0.free_rank, h0.torsion)


def test_tensor_unit_and_betti():
    rng = random.Random(5)
    c = random_complex(rng)
    t = tensor(point(0), c)
    assert t.ranks == c.ranks
    assert t.diffs == c.diffs
    circle = ChainComplex({0: 1, 1: 1}, {})
    torus = tensor(circle, circle)
    assert [torus.betti(i) for i in range(3)] == [1, 2, 1]


def test_tensor_d_squared_and_kunneth():
    rng = random.Random(6)
    for _ in range(25):
        a = random_complex(rng, max_rank=2, hi=2)
        b = random_complex(rng, max_rank=2, hi=2)
        t = tensor(a, b)
        t.validate()
        # Kunneth over Q: rational Betti numbers convolve (torsion and Tor
        # terms are finite and invisible rationally)
        for n in range(t.lo, t.hi + 1):
            expect = sum(a.betti(p) * b.betti(n - p) for p in range(a.lo, a.hi + 1))
            assert t.betti(n) == expect


def test_cone_identity_acyclic_and_times_two():
    c = point(0)
    f = ChainMap.identity(c)
    assert cone(f).is_acyclic()
    two = ChainMap(c, c, {0: IntMatrix.from_rows([[2]])})
    k = cone(two)
    h = k.homology(0)
    assert h.free_rank == 0 and h.torsion == [2]
    assert not is_quasi_iso(two)
    assert is_quasi_iso(f)


def test_cone_long_exact_sequence_ranks():
    rng = random.Random(9)
    for _ in range(30):
        a = random_complex(rng, max_rank=2, hi=2)
        b = random_complex(rng, max_rank=2, hi=2)
        comps = {}
        for n in range(a.lo, a.hi + 1):
            rows, cols = b.rank(n), a.rank(n)
            if rows and cols:
                comps[n] = IntMatrix(rows, cols, [rng.randint(-2, 2) for _ in range(rows * cols)])
        # project onto a chain map: solve the commuting condition greedily by
        # zeroing bad components; easiest is the zero map when this fails
        try:
            f = ChainMap(a, b, comps)
        except Exception:
            f = ChainMap.zero(a, b)
        k = cone(f)
        # Euler characteristic additivity is implied by the LES
        chi = lambda c: sum((-1) ** n * c.betti(n) for n in range(c.lo - 1, c.hi + 2))
        assert chi(k) == chi(b) - chi(a)


def test_fiber_shifts_cone():
    rng = random.Random(10)
    a = random_complex(rng, max_rank=2, hi=2)
    f = ChainMap.identity(a)
    fb = fiber(f)
    k = cone(f)
    for n in range(fb.lo, fb.hi + 1):
        assert fb.rank(n) == k.rank(n + 1)


def test_direct_sum():
    rng = random.Random(12)
    a = random_complex(rng)
    b = random_complex(rng)
    s, _ = direct_sum([a, b])
    for n in range(s.lo, s.hi + 1):
        assert s.rank(n) == a.rank(n) + b.rank(n)
        ha, hb, hs = a.homology(n), b.homology(n), s.homology(n)
        assert hs.free_rank == ha.free_rank + hb.free_rank
        assert sorted(hs.torsion) == sorted(ha.torsion + hb.torsion)
    z, _ = direct_sum([a, ChainComplex({}, {})])
    assert z == a


def test_n_dual_differential_sign():
    rng = random.Random(13)
    c = random_complex(rng)
    for n in (0, 1, 2):
        d = n_dual(c, n)
        d.validate()
        for r in range(d.lo, d.hi + 1):
            expect = c.differential(n - r + 1).transpose()
            if r % 2:
                expect = expect.scale(-1)
            assert d.differential(r) == expect
