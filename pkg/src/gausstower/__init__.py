"""Exact Gauss-sum arithmetic for tame characters of unramified local fields.

Subpackage map:

- ``cyclotomic`` / ``padic``: exact number substrate (cyclotomic integers,
  truncated unramified p-adic integers, finite residue fields).
- ``groups``: split metacyclic groups, their irreducible characters, and
  degree-zero virtual-character decompositions.
- ``localfields``: tame abelian characters of unramified local fields and the
  dictionary identifying them with residue characters.
- ``gauss``: Galois Gauss sums, conductors, twisting and induction identities.
- ``tower``: Gauss sums normalized to unit times Frobenius power, with the
  equivariant homomorphism interpretation.
- ``lattices``: normal integral bases along p-towers and associated group-ring
  units.
- ``krings``: group-ring correction elements, their inverses, and determinant
  identities.
- ``cli``: command-line driver producing JSON/CSV reports.
"""

__version__ = "0.1.0"
