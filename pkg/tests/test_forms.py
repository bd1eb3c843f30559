import cmath
import math
import random
from fractions import Fraction

import pytest

from algpc.exact import IntMatrix, det
from algpc.forms import (
    DegenerateForm,
    F2QuadraticForm,
    IntBilinearForm,
    LinkingForm,
    RationalLattice,
    SingularForm,
    arf,
    finite_gauss_sum,
    gauss_sum,
    milgram_check,
    signature,
    signature_mod8_from_linking,
    torsion_mod2_rank,
)
from algpc.generators import E8_GRAM


def brute_force_signature(gram):
    """Jacobi-minors oracle: signs of leading principal minors (valid when
    all leading minors are nonzero)."""
    n = gram.rows
    minors = [1]
    for k in range(1, n + 1):
        sub = IntMatrix.from_rows([row[:k] for row in gram.data[:k]])
        minors.append(det(sub))
    if any(m == 0 for m in minors[1:]):
        return None
    sig = 0
    for k in range(1, n + 1):
        sig += 1 if minors[k] * minors[k - 1] > 0 else -1
    return sig


def test_signature_basics():
    assert signature(IntBilinearForm(IntMatrix.from_rows([[1]]))) == 1
    assert signature(IntBilinearForm(IntMatrix.from_rows([[0, 1], [1, 0]]))) == 0
    assert signature(IntBilinearForm(E8_GRAM)) == 8
    assert signature(IntBilinearForm(IntMatrix.from_rows([[0]]))) == 0


def test_signature_against_minors_oracle():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 5)
        m = IntMatrix(n, n)
        for i in range(n):
            for j in range(i, n):
                v = rng.randint(-3, 3)
                m.data[i][j] = v
                m.data[j][i] = v
        expect = brute_force_signature(m)
        if expect is not None:
            assert signature(IntBilinearForm(m)) == expect


def test_signature_invariance_and_additivity():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 4)
        m = IntMatrix(n, n)
        for i in range(n):
            for j in range(i, n):
                v = rng.randint(-3, 3)
                m.data[i][j] = v
                m.data[j][i] = v
        f = IntBilinearForm(m)
        s = signature(f)
        # random unimodular conjugation
        u = IntMatrix.identity(n)
        for _ in range(4):
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                c = rng.randint(-2, 2)
                for t in range(n):
                    u.data[i][t] += c * u.data[j][t]
        m2 = u * m * u.transpose()
        assert signature(IntBilinearForm(m2)) == s
        g = IntBilinearForm(IntMatrix.from_rows([[1]]))
        assert signature(f.direct_sum(g)) == s + 1


def brute_force_arf(form):
    ones = sum(form.value([(mask >> i) & 1 for i in range(form.rank)])
               for mask in range(1 << form.rank))
    return 1 if 2 * ones > (1 << form.rank) else 0


def hyperbolic_plane(q_e, q_f):
    return F2QuadraticForm(2, IntMatrix.from_rows([[0, 1], [1, 0]]), [q_e, q_f])


def test_arf_basics():
    assert arf(hyperbolic_plane(0, 0)) == 0
    assert arf(hyperbolic_plane(1, 1)) == 1
    # values on the four elements of the q=1 plane: 0, 1, 1, 1
    h = hyperbolic_plane(1, 1)
    vals = sorted(h.value([(m >> 1) & 1, m & 1]) for m in range(4))
    assert vals == [0, 1, 1, 1]


def test_arf_additive_and_matches_brute_force():
    rng = random.Random(7)
    for _ in range(30):
        a = hyperbolic_plane(rng.randint(0, 1), rng.randint(0, 1))
        b = hyperbolic_plane(rng.randint(0, 1), rng.randint(0, 1))
        s = a.direct_sum(b)
        assert arf(s) == (arf(a) + arf(b)) % 2
        assert arf(s) == brute_force_arf(s)


def test_arf_rejects_singular():
    f = F2QuadraticForm(1, IntMatrix.from_rows([[0]]), [1])
    with pytest.raises(SingularForm):
        arf(f)


def test_torsion_mod2_rank():
    assert torsion_mod2_rank([2]) == 1
    assert torsion_mod2_rank([3]) == 0
    assert torsion_mod2_rank([4, 2]) == 0


def test_gauss_sum_unimodular():
    lat = RationalLattice(E8_GRAM)
    z = gauss_sum(lat)
    assert abs(z - 1) < 1e-9
    assert milgram_check(lat)


def test_gauss_sum_two():
    lat = RationalLattice(IntMatrix.from_rows([[2]]))
    z = gauss_sum(lat)
    expect = cmath.exp(1j * cmath.pi / 4) * math.sqrt(2)
    assert abs(z - expect) < 1e-9
    assert milgram_check(lat)


def test_keyproduct_lattice():
    # a lattice with |L*/L| = 4 and q = 1/2 on all three nonzero cosets: the
    # 4-dimensional even lattice of signature 4 (D4).  Its Gauss sum is -2
    # and the Gauss-sum identity forces signature 4 mod 8.
    gram = IntMatrix.from_rows([
        [2, -1, 0, 0],
        [-1, 2, -1, -1],
        [0, -1, 2, 0],
        [0, -1, 0, 2],
    ])
    lat = RationalLattice(gram)
    assert lat.discriminant_order() == 4
    qs = sorted(float(lat.q_value(x) % 1) for x in lat.dual_cosets())
    assert qs == [0.0, 0.5, 0.5, 0.5]
    z = gauss_sum(lat)
    assert abs(z - (-2)) < 1e-9
    assert lat.signature() == 4
    assert milgram_check(lat)


def test_milgram_random_lattices():
    rng = random.Random(11)
    count = 0
    while count < 100:
        n = rng.randint(1, 5)
        m = IntMatrix(n, n)
        for i in range(n):
            for j in range(i, n):
                v = rng.randint(-3, 3)
                if i == j:
                    v = 2 * rng.randint(-1, 1)
                m.data[i][j] = v
                m.data[j][i] = v
        if det(m) == 0:
            continue
        count += 1
        assert milgram_check(RationalLattice(m))


def test_signature_mod8_from_linking():
    trivial = LinkingForm([], [], [])
    assert signature_mod8_from_linking(trivial) == 0
    # (Z/2)^2 with q = 1/2 on all nonzero elements
    half = Fraction(1, 2)
    t = LinkingForm([2, 2], [[half, half], [half, 0]], [half, half])
    vals = sorted(t.q_of(x) for x in t.elements())
    assert vals == [0, half, half, half]
    assert signature_mod8_from_linking(t) == 4
    # Z/2 with q(1) = 1/4: the boundary of <2>
    t2 = LinkingForm([2], [[half]], [Fraction(1, 4)])
    assert signature_mod8_from_linking(t2) == 1
    t3 = LinkingForm([2], [[half]], [Fraction(-1, 4)])
    assert signature_mod8_from_linking(t3) == 7


def test_gauss_sum_basis_independent():
    # conjugating the gram by a unimodular matrix fixes the sum
    gram = IntMatrix.from_rows([[2, 1], [1, 4]])
    u = IntMatrix.from_rows([[1, 1], [0, 1]])
    g2 = u * gram * u.transpose()
    z1 = gauss_sum(RationalLattice(gram))
    z2 = gauss_sum(RationalLattice(g2))
    assert abs(z1 - z2) < 1e-9
