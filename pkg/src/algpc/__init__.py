"""Exact-arithmetic algebraic Poincare complexes.

Chain complexes over Z with symmetric/quadratic structures, cobordism
invariants (signature, de Rham, Arf/Kervaire, mod-8 signature), Z/2^k
coefficient versions with the modified tensor product, presheaves over
finite Delta-sets, and the L-group classification tables.
"""

__version__ = "0.1.0"
