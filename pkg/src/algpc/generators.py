"""Small explicit structured complexes used as generators and test anchors.

* point_sym:      Z in degree 0 with the unit pairing; signature 1.
* sign_generator: Z in degree 2k with pairing <1>; the signature-1 class in
                  dimension 4k (k=1 by default).
* e8_quadratic:   Z^8 in degree 2k with the E8 form split as P + P^T;
                  index 1 in dimension 4k.
* torsion_circle: Z --2--> Z in degrees 1,0 with its symmetric structure;
                  the de-Rham-invariant-1 class in dimension 1 (here "G1").
* arf_generator:  Z^2 in degree 2k+1 with psi_0 = [[1,1],[0,1]]; Arf 1 in
                  dimension 4k+2.
"""

from __future__ import annotations

from .chains import ChainComplex
from .exact import IntMatrix
from .structures import (
    BigradedElement,
    StructuredComplex,
    quadratic_structure,
    symmetric_structure,
)

E8_GRAM = IntMatrix.from_rows([
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, 0],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, -1],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, 0, 0, -1, 0, 0, 2],
])


def form_complex(gram, degree=0, check=True):
    """Symmetric complex concentrated in an even degree with the given Gram
    matrix as phi_0.  In odd degrees the same data is skew and rejected by
    the coherence check."""
    cx = ChainComplex.concentrated(degree, gram.rows)
    phi0 = BigradedElement(cx, cx, 2 * degree)
    phi0.set_block(degree, degree, gram)
    return StructuredComplex(cx, symmetric_structure(2 * degree, [phi0]), check=check)


def point_sym():
    return form_complex(IntMatrix.from_rows([[1]]), 0)


def sign_generator(k=1):
    """<1> placed in degree 2k: the signature-1 symmetric class in dim 4k."""
    return form_complex(IntMatrix.from_rows([[1]]), 2 * k)


def quadratic_form_complex(p_matrix, degree, check=True):
    """Quadratic complex concentrated in one degree with psi_0 = p_matrix."""
    cx = ChainComplex.concentrated(degree, p_matrix.rows)
    psi0 = BigradedElement(cx, cx, 2 * degree)
    psi0.set_block(degree, degree, p_matrix)
    return StructuredComplex(cx, quadratic_structure(2 * degree, [psi0]), check=check)


def e8_quadratic(k=0):
    """E8 as a quadratic complex in degree 2k (dimension 4k); index 1."""
    p = IntMatrix.zeros(8, 8)
    for i in range(8):
        for j in range(8):
            if i < j:
                p.data[i][j] = E8_GRAM.data[i][j]
            elif i == j:
                p.data[i][j] = E8_GRAM.data[i][j] // 2
    return quadratic_form_complex(p, 2 * k)


def arf_generator(k=0):
    """psi_0 = [[1,1],[0,1]] in degree 2k+1: Arf invariant 1 in dim 4k+2."""
    p = IntMatrix.from_rows([[1, 1], [0, 1]])
    return quadratic_form_complex(p, 2 * k + 1)


def torsion_circle():
    """(Z --2--> Z) in degrees 1,0 with phi_0 = (1, -1), phi_1 = (1).

    One-dimensional symmetric Poincare complex with H_0 = Z/2; de Rham
    invariant 1 and self-linking 1/2 on the torsion class.
    """
    cx = ChainComplex({1: 1, 0: 1}, {1: IntMatrix.from_rows([[2]])})
    phi0 = BigradedElement(cx, cx, 1)
    phi0.set_block(1, 0, IntMatrix.from_rows([[1]]))
    phi0.set_block(0, 1, IntMatrix.from_rows([[-1]]))
    phi1 = BigradedElement(cx, cx, 2)
    phi1.set_block(1, 1, IntMatrix.from_rows([[1]]))
    return StructuredComplex(cx, symmetric_structure(1, [phi0, phi1]))


def hyperbolic_quadratic(k=0):
    """psi_0 = [[0,1],[0,0]] in degree 2k+1: Arf invariant 0."""
    p = IntMatrix.from_rows([[0, 1], [0, 0]])
    return quadratic_form_complex(p, 2 * k + 1)
