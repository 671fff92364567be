"""Gauss-sum monomials over the unramified Z_p-tower.

Every value of the tower homomorphism is a single group-like monomial
scalar * phi^k in the completed group algebra of the unramified tower, so
the (scalar, exponent) pair is a lossless representation: products add
exponents and multiply scalars, and no power-series truncation enters.
The exponent is minus the valuation of a generator of the conductor ideal
times the appropriate power of the different; every base field here is
unramified over Q_p, so the different is trivial and the exponent reduces
to minus the conductor exponent of the character.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CycNum, RootOfUnity
from .gauss import (
    _omega_compose,
    artin_conductor,
    galois_equivariance_check,
    gauss_induced,
    gauss_nonabelian,
)
from .groups import IrrChar, VirtualChar, induce, irr_table
from .localfields import FieldDesc, MulChar, TameExtDesc, artin_dict

__all__ = [
    "TowerMonomial",
    "TypeWChar",
    "homW_check",
    "res_functoriality_check",
    "tau_tower",
    "tau_tower_virtual",
    "tower_galois_check",
]


@dataclass(frozen=True)
class TowerMonomial:
    """scalar * phi^exponent, a group-like element of the tower algebra."""

    scalar: CycNum
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int):
            raise TypeError("exponent must be an integer")

    @classmethod
    def one(cls) -> "TowerMonomial":
        return cls(CycNum.from_rational(1), 0)

    def is_unit(self) -> bool:
        return not self.scalar.is_zero()

    def __mul__(self, other):
        if not isinstance(other, TowerMonomial):
            return NotImplemented
        return TowerMonomial(
            (self.scalar * other.scalar).normalized(), self.exponent + other.exponent
        )

    def inverse(self) -> "TowerMonomial":
        return TowerMonomial(self.scalar.inverse(), -self.exponent)

    def __pow__(self, n: int) -> "TowerMonomial":
        if n < 0:
            return self.inverse() ** (-n)
        out = TowerMonomial.one()
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self):
        return f"TowerMonomial({self.scalar!r}, phi^{self.exponent})"


@dataclass(frozen=True)
class TypeWChar:
    """Unramified tower character, recorded by its value on Frobenius.

    Characters of the Z_p-quotient take p-power-order root-of-unity values
    on Frobenius; that single value determines the whole character.
    """

    p: int
    value: RootOfUnity

    def __post_init__(self):
        order = self.value.order
        while order % self.p == 0:
            order //= self.p
        if order != 1:
            raise ValueError("Frobenius value must have p-power order")

    def sharp(self, mono: TowerMonomial) -> TowerMonomial:
        """The substitution phi -> value * phi on a group-like monomial."""
        scalar = (mono.scalar * self.value**mono.exponent).normalized()
        return TowerMonomial(scalar, mono.exponent)


def tau_tower(place, chi) -> TowerMonomial:
    """The tower homomorphism on one character.

    The scalar is the Gauss sum of the induction to the prime field; the
    exponent is minus the valuation of the conductor ideal over ``place``.
    ``place`` is either a FieldDesc paired with a linear character or a
    TameExtDesc paired with an irreducible character of its group.  The
    deg(chi) correction for the different vanishes on unramified bases.
    """
    if isinstance(place, TameExtDesc):
        scalar = gauss_nonabelian(place, chi).value
        return TowerMonomial(scalar, -artin_conductor(place, chi))
    if not isinstance(place, FieldDesc):
        raise TypeError("place must be a field or a tame extension")
    if chi.field != place:
        raise ValueError("character does not live on the given field")
    scalar = gauss_induced(FieldDesc(place.p, 1), chi).value
    return TowerMonomial(scalar, -chi.conductor())


def tau_tower_virtual(E: TameExtDesc, vchar: VirtualChar) -> TowerMonomial:
    """Multiplicative extension of the tower map to virtual characters."""
    if vchar.group is not E.group:
        raise ValueError("virtual character does not belong to the extension")
    out = TowerMonomial.one()
    for coeff, chi in zip(vchar.coeffs, irr_table(E.group)):
        if coeff:
            out = out * tau_tower(E, chi) ** coeff
    return out


def homW_check(chi: MulChar, rho: TypeWChar) -> bool:
    """Twisting law against the Frobenius substitution, both sides fresh.

    The left side recomputes the full sum of the twisted character; the
    right side only rescales by value^exponent.  Unramified twisting keeps
    the conductor, so the exponents agree as part of the equality.
    """
    K = chi.field
    if rho.p != K.p:
        raise ValueError("tower character lives at a different prime")
    twist = MulChar.unramified(K, rho.value)
    lhs = tau_tower(K, chi * twist)
    rhs = rho.sharp(tau_tower(K, chi))
    return lhs == rhs


def res_functoriality_check(E: TameExtDesc, sub, lam) -> bool:
    """Induction through an unramified subtower, valuation and monomial.

    The conductor-ideal valuation of the induced character over the base
    equals the relative residue degree times the valuation over the
    subfield, and under phi_sub = phi_base^f the monomials coincide.  The
    induced side is evaluated irreducible by irreducible through stabilizer
    decompositions, the subfield side through the cyclic-factor route, so
    the equality compares two genuinely different computations.
    """
    Kp = E.fixed_field(sub)
    chi_p = artin_dict(E, sub, lam)
    fpr = E.residue_degree_over_base(sub)
    ind = induce(sub, lam)
    v_base = 0
    scalar = CycNum.from_rational(1)
    for coeff, chi_i in zip(ind.coeffs, irr_table(E.group)):
        if coeff == 0:
            continue
        if coeff < 0:
            raise AssertionError("induction of a character has negative parts")
        v_base += coeff * artin_conductor(E, chi_i)
        scalar = scalar * gauss_nonabelian(E, chi_i).value ** coeff
    base_side = TowerMonomial(scalar.normalized(), -v_base)
    sub_side = tau_tower(Kp, chi_p)
    if v_base != fpr * chi_p.conductor():
        return False
    return base_side == TowerMonomial(sub_side.scalar, fpr * sub_side.exponent)


def tower_galois_check(chi: MulChar, a: int) -> bool:
    """Galois equivariance over the prime field with exponent bookkeeping.

    Composing with the automorphism keeps the conductor, so both monomials
    carry one exponent and the scalar identity is exactly the abelian
    equivariance statement.
    """
    ok = galois_equivariance_check(chi, a)
    chi = chi.canonical()
    twisted = _omega_compose(chi, a).canonical()
    K = chi.field
    return ok and tau_tower(K, twisted).exponent == tau_tower(K, chi).exponent
