import random

import pytest

from algpc.exact import (
    CompositionNonzero,
    IntMatrix,
    det,
    homology,
    kernel_basis,
    rank,
    smith_normal_form,
    solve_integral,
)


def gcd_list(xs):
    from math import gcd
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


def minors_gcd(a, k):
    """gcd of all k x k minors; the classical invariant-factor oracle."""
    from itertools import combinations
    vals = []
    for rows in combinations(range(a.rows), k):
        for cols in combinations(range(a.cols), k):
            sub = IntMatrix.from_rows([[a.data[i][j] for j in cols] for i in rows])
            vals.append(det(sub))
    return gcd_list(vals)


def oracle_invariant_factors(a):
    """d_1 = g_1, d_k = g_k / g_{k-1} with g_k the gcd of k x k minors."""
    out = []
    prev = 1
    for k in range(1, min(a.rows, a.cols) + 1):
        g = minors_gcd(a, k)
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def check_snf(a):
    snf = smith_normal_form(a)
    assert snf.U * a * snf.V == snf.D
    assert det(snf.U) in (1, -1)
    assert det(snf.V) in (1, -1)
    diag = snf.diagonal
    for i in range(len(diag) - 1):
        if diag[i + 1] != 0:
            assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
        assert diag[i] >= 0
    for i in range(min(a.rows, a.cols)):
        for j in range(min(a.rows, a.cols)):
            if i != j:
                assert snf.D.data[i][j] == 0
    return snf


def test_snf_spec_examples():
    snf = check_snf(IntMatrix.from_rows([[2, 4], [6, 8]]))
    assert snf.diagonal == [2, 4]
    snf = check_snf(IntMatrix.identity(3))
    assert snf.diagonal == [1, 1, 1]
    snf = check_snf(IntMatrix.from_rows([[0]]))
    assert snf.diagonal == [0]


def test_snf_gcd_minor_oracle_random():
    rng = random.Random(7)
    for _ in range(150):
        r = rng.randint(1, 5)
        c = rng.randint(1, 5)
        a = IntMatrix(r, c, [rng.randint(-4, 4) for _ in range(r * c)])
        snf = check_snf(a)
        expect = oracle_invariant_factors(a)
        got = [d for d in snf.diagonal if d != 0]
        assert got == expect


def test_solve_integral():
    assert solve_integral(IntMatrix.from_rows([[2]]), [4]) == [2]
    assert solve_integral(IntMatrix.from_rows([[2]]), [3]) is None
    a = IntMatrix.from_rows([[1, 1], [0, 2]])
    assert solve_integral(a, [3, 4]) == [1, 2]


def test_solve_integral_random():
    rng = random.Random(11)
    for _ in range(100):
        r = rng.randint(1, 4)
        c = rng.randint(1, 4)
        a = IntMatrix(r, c, [rng.randint(-3, 3) for _ in range(r * c)])
        x = [rng.randint(-3, 3) for _ in range(c)]
        b = a.apply(x)
        sol = solve_integral(a, b)
        assert sol is not None
        assert a.apply(sol) == b


def test_kernel_basis():
    a = IntMatrix.from_rows([[1, 2, 3]])
    k = kernel_basis(a)
    assert k.cols == 2
    for j in range(k.cols):
        assert a.apply(k.column(j)) == [0]


def test_homology_spec_examples():
    # Z --2--> Z has H_0 = Z/2
    d_next = IntMatrix.from_rows([[2]])
    d_this = IntMatrix.zeros(0, 1)
    h = homology(d_next, d_this)
    assert h.free_rank == 0 and h.torsion == [2]
    # both zero maps on rank 1
    h = homology(IntMatrix.zeros(1, 0), IntMatrix.zeros(0, 1))
    assert h.free_rank == 1 and h.torsion == []
    # diag(2, 4) cokernel
    h = homology(IntMatrix.from_rows([[2, 4], [6, 8]]), IntMatrix.zeros(0, 2))
    assert h.free_rank == 0 and h.torsion == [2, 4]


def test_homology_rejects_bad_composition():
    with pytest.raises(CompositionNonzero):
        homology(IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[1]]))


def test_homology_representatives_are_cycles():
    rng = random.Random(23)
    for _ in range(40):
        n1 = rng.randint(1, 3)
        n2 = rng.randint(1, 3)
        n3 = rng.randint(1, 3)
        # build a genuine pair d_this d_next = 0 by factoring through a kernel
        d_this = IntMatrix(n1, n2, [rng.randint(-2, 2) for _ in range(n1 * n2)])
        k = kernel_basis(d_this)
        if k.cols == 0:
            continue
        y = IntMatrix(k.cols, n3, [rng.randint(-2, 2) for _ in range(k.cols * n3)])
        d_next = k * y
        h = homology(d_next, d_this)
        for j in range(h.free_reps.cols):
            assert d_this.apply(h.free_reps.column(j)) == [0] * n1
        for j in range(h.torsion_reps.cols):
            assert d_this.apply(h.torsion_reps.column(j)) == [0] * n1
        assert h.free_rank + rank(d_next) + len([
            t for t in smith_normal_form(d_next).diagonal if t != 0]) >= h.free_rank


def test_rank_nullity_accounting():
    rng = random.Random(5)
    for _ in range(50):
        r = rng.randint(1, 4)
        c = rng.randint(1, 4)
        a = IntMatrix(r, c, [rng.randint(-3, 3) for _ in range(r * c)])
        assert rank(a) + kernel_basis(a).cols == c
