"""Tests for tower monomials and the tower homomorphism.

The scalar routes are cross-checked against the gauss module by construction
(the tower code carries no summation of its own), so the oracles here drive
the identities from the gauss primitives directly:
  * the twisting law is expanded on both sides through gauss_twist, whose
    direct side is a fresh summation of the twisted character;
  * the induction exponents are recomputed through the conductor chain,
    freezing the quadratic-subtower instance (-2) vs f * (-1).
"""

import pytest

from gausstower.cyclotomic import CycNum, RootOfUnity
from gausstower.gauss import artin_conductor, gauss_abelian, gauss_twist
from gausstower.groups import VirtualChar, irr_table
from gausstower.localfields import FieldDesc, MulChar, artin_dict, tame_extension
from gausstower.tower import (
    TowerMonomial,
    TypeWChar,
    homW_check,
    res_functoriality_check,
    tau_tower,
    tau_tower_virtual,
    tower_galois_check,
)

Q3 = FieldDesc(3, 1)
Q5 = FieldDesc(5, 1)
ONE = RootOfUnity.one()


class TestTowerMonomial:
    def test_product_adds_exponents(self):
        a = TowerMonomial(CycNum.from_rational(3), -1)
        b = TowerMonomial(CycNum.from_rational(5), 2)
        ab = a * b
        assert ab.scalar == CycNum.from_rational(15)
        assert ab.exponent == 1

    def test_inverse_and_negative_power(self):
        mono = TowerMonomial(CycNum.from_rational(7), -2)
        assert mono * mono.inverse() == TowerMonomial.one()
        assert (mono**-2).exponent == 4
        assert (mono**0) == TowerMonomial.one()

    def test_unit_detection(self):
        assert TowerMonomial(CycNum.from_rational(2), 5).is_unit()
        assert not TowerMonomial(CycNum.from_rational(0), 5).is_unit()

    def test_scalar_equality_is_value_based(self):
        z = RootOfUnity(3, 1)
        a = TowerMonomial((z.as_cyc(3)), 1)
        b = TowerMonomial((z.as_cyc(12)), 1)
        assert a == b

    def test_non_integer_exponent_rejected(self):
        with pytest.raises(TypeError):
            TowerMonomial(CycNum.from_rational(1), 1.5)


class TestTypeWChar:
    def test_p_power_orders_accepted(self):
        for order, exp in [(1, 0), (3, 1), (9, 4), (27, 26)]:
            TypeWChar(3, RootOfUnity(order, exp))

    def test_other_orders_rejected(self):
        for order, exp in [(2, 1), (4, 1), (6, 1), (15, 2)]:
            with pytest.raises(ValueError):
                TypeWChar(3, RootOfUnity(order, exp))

    def test_sharp_rescales_by_exponent(self):
        rho = TypeWChar(3, RootOfUnity(9, 1))
        mono = TowerMonomial(CycNum.from_rational(2), -3)
        out = rho.sharp(mono)
        assert out.exponent == -3
        assert out.scalar == CycNum.from_rational(2) * RootOfUnity(9, 1) ** -3

    def test_sharp_fixes_exponent_zero(self):
        rho = TypeWChar(5, RootOfUnity(25, 7))
        mono = TowerMonomial(CycNum.from_rational(4), 0)
        assert rho.sharp(mono) == mono


class TestTauTower:
    def test_trivial_character(self):
        t = tau_tower(Q3, MulChar.unramified(Q3, ONE))
        assert t.scalar == CycNum.from_rational(1)
        assert t.exponent == 0

    def test_unramified_over_extension(self):
        K = FieldDesc(3, 2)
        t = tau_tower(K, MulChar.unramified(K, RootOfUnity(3, 1)))
        assert t.scalar == CycNum.from_rational(1)
        assert t.exponent == 0

    def test_ramified_linear_conductor_p(self):
        chi = MulChar(Q5, 1, 2, (), ONE)
        t = tau_tower(Q5, chi)
        assert t.scalar == gauss_abelian(Q5, chi).value
        assert t.exponent == -1

    def test_deeper_conductor_exponent(self):
        chi = MulChar(Q3, 2, 1, (1,), RootOfUnity(4, 1))
        assert tau_tower(Q3, chi).exponent == -2

    def test_irreducible_of_tame_extension(self):
        E = tame_extension(Q3, 4, 2)
        chi = next(c for c in irr_table(E.group) if c.degree == 2)
        t = tau_tower(E, chi)
        assert t.exponent == -2
        assert t.is_unit()

    def test_wrong_field_rejected(self):
        with pytest.raises(ValueError):
            tau_tower(Q3, MulChar(Q5, 1, 2, (), ONE))

    def test_bad_place_rejected(self):
        with pytest.raises(TypeError):
            tau_tower("Q3", MulChar(Q3, 1, 1, (), ONE))


class TestHomW:
    def test_trivial_rho(self):
        chi = MulChar(Q3, 1, 1, (), ONE)
        assert homW_check(chi, TypeWChar(3, RootOfUnity.one()))

    def test_exponent_stability_under_twist(self):
        # unramified twisting keeps the conductor, hence the exponent
        chi = MulChar(Q3, 2, 1, (2,), ONE)
        twist = MulChar.unramified(Q3, RootOfUnity(9, 1))
        assert tau_tower(Q3, chi * twist).exponent == tau_tower(Q3, chi).exponent

    def test_order_three_both_sides_oracle(self):
        # both sides expanded through the gauss layer: the direct side of
        # gauss_twist is a fresh summation, the formula side the rescaling
        chi = MulChar(Q3, 1, 1, (), ONE)
        rho_val = RootOfUnity(3, 1)
        rho_mul = MulChar.unramified(Q3, rho_val)
        direct, formula = gauss_twist(Q3, chi, rho_mul)
        assert tau_tower(Q3, chi * rho_mul).scalar == direct.value
        sharped = TypeWChar(3, rho_val).sharp(tau_tower(Q3, chi))
        assert sharped.scalar == formula.value
        assert homW_check(chi, TypeWChar(3, rho_val))

    def test_orders_dividing_p_squared(self):
        for K, p in [(Q3, 3), (Q5, 5)]:
            chis = [
                MulChar(K, 1, 1, (), ONE),
                MulChar(K, 2, 1, (1,), RootOfUnity(4, 1)),
                MulChar.unramified(K, RootOfUnity(p - 1, 1)),
            ]
            for chi in chis:
                for j in range(p * p):
                    assert homW_check(chi, TypeWChar(p, RootOfUnity(p * p, j)))

    def test_prime_mismatch_rejected(self):
        chi = MulChar(Q3, 1, 1, (), ONE)
        with pytest.raises(ValueError):
            homW_check(chi, TypeWChar(5, RootOfUnity(5, 1)))


class TestResFunctoriality:
    def test_identity_subtower(self):
        E = tame_extension(Q3, 4, 2)
        full = E.group.subgroup_t_over(1)
        for lam in full.linear_chars():
            assert res_functoriality_check(E, full, lam)

    def test_quadratic_subtower_frozen_exponents(self):
        # conductor chain: the induced character has exponent 2 over the
        # base while lam~ has conductor 1 over the quadratic subfield, so
        # the monomial exponents compare as -2 vs 2 * (-1)
        E = tame_extension(Q3, 4, 2)
        chi = next(c for c in irr_table(E.group) if c.degree == 2)
        lam_t = artin_dict(E, chi.st, chi.lam)
        assert artin_conductor(E, chi) == 2
        assert lam_t.conductor() == 1
        assert E.residue_degree_over_base(chi.st) == 2
        assert tau_tower(E, chi).exponent == -2
        assert tau_tower(E.fixed_field(chi.st), lam_t).exponent == -1
        assert res_functoriality_check(E, chi.st, chi.lam)

    def test_symmetric_family_exhaustive(self):
        E = tame_extension(Q5, 3, 2)
        for d in (1, 2):
            sub = E.group.subgroup_t_over(d)
            for lam in sub.linear_chars():
                assert res_functoriality_check(E, sub, lam)

    def test_dihedral_family_exhaustive(self):
        E = tame_extension(Q3, 4, 2)
        for d in (1, 2):
            sub = E.group.subgroup_t_over(d)
            for lam in sub.linear_chars():
                assert res_functoriality_check(E, sub, lam)

    def test_below_inertia_rejected(self):
        E = tame_extension(Q5, 3, 2)
        cyc = E.group.cyclic_subgroup((0, 1))
        with pytest.raises(ValueError):
            res_functoriality_check(E, cyc, cyc.linear_chars()[1])


class TestVirtualMultiplicativity:
    def test_sum_of_irreducibles(self):
        E = tame_extension(Q3, 4, 2)
        tab = irr_table(E.group)
        va = VirtualChar.basis(E.group, 1) + VirtualChar.basis(E.group, 4)
        assert tau_tower_virtual(E, va) == tau_tower(E, tab[1]) * tau_tower(E, tab[4])

    def test_negative_coefficients(self):
        E = tame_extension(Q5, 3, 2)
        tab = irr_table(E.group)
        va = VirtualChar.basis(E.group, 2) - VirtualChar.basis(E.group, 1)
        expected = tau_tower(E, tab[2]) * tau_tower(E, tab[1]).inverse()
        assert tau_tower_virtual(E, va) == expected

    def test_foreign_group_rejected(self):
        E = tame_extension(Q3, 4, 2)
        other = tame_extension(Q5, 3, 2)
        with pytest.raises(ValueError):
            tau_tower_virtual(E, VirtualChar.trivial(other.group))


class TestTowerGalois:
    def test_exhaustive_small_conductors(self):
        for te in range(2):
            for pe in range(3):
                chi = MulChar(Q3, 2, te, (pe,), ONE)
                for a in (1, 2, 4, 5, 7, 8):
                    assert tower_galois_check(chi, a)

    def test_with_uniformizer_part(self):
        chi = MulChar(Q5, 1, 1, (), RootOfUnity(4, 1))
        for a in (1, 2, 3, 4, 6, 7):
            assert tower_galois_check(chi, a)

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError):
            tower_galois_check(MulChar(Q3, 1, 1, (), ONE), 6)
