"""Tests for unit-group presentations, characters, and the tame dictionary.

In-file oracles, written before the assertions they feed:
  _oracle_units          exhaustive unit enumeration by plain generator powers,
                         independent of UnitGroupPres.compose/elements
  _oracle_conductor      minimal level with trivial unit part, by direct kernel
                         scan over the enumerated units
  _norm_exponent         residue norm to a subfield through discrete logs,
                         using only norm compatibility of the generators
Frozen dictionary values below were worked out by hand from the generator
orders of (Z/p^m)^x and the pinned normalization (uniformizer to Frobenius
coset, unit sign -1); each carries its derivation in a comment.
"""

from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gausstower.cyclotomic import CycNum, RootOfUnity
from gausstower.groups import metacyclic
from gausstower.localfields import (
    FieldDesc,
    MulChar,
    TameExtDesc,
    artin_dict,
    conductor,
    get_convention_sign,
    set_convention_sign,
    tame_extension,
    unit_group,
)
from gausstower.padic import UnramInt, teichmuller

# shapes with q^m <= 10^4, kept exhaustively enumerable
SMALL_SHAPES = [(5, 1, 2), (3, 1, 3), (3, 2, 2), (7, 1, 2), (3, 2, 1), (5, 2, 1)]


def _oracle_units(pres):
    """All (exps, unit) pairs by direct powering of the stored generators."""
    gens = (pres.teich_gen,) + pres.prin_gens
    out = []
    for exps in product(*(range(o) for o in pres.orders)):
        u = UnramInt.one(pres.field.p, pres.field.f, pres.m)
        for g, a in zip(gens, exps):
            u = u * g**a
        out.append((exps, u))
    return out


def _oracle_conductor(chi):
    """Kernel scan: smallest m* with chi trivial on all units = 1 mod p^m*."""
    pres = unit_group(chi.field, chi.m)
    units = _oracle_units(pres)
    for mstar in range(chi.m + 1):
        trivial = True
        for exps, u in units:
            diff = u - 1
            if mstar == 0 or diff.is_zero() or diff.valuation() >= mstar:
                if not chi.unit_value_from_exps(exps).is_one():
                    trivial = False
                    break
        if trivial:
            return mstar
    return chi.m


def _norm_exponent(k, q_big, q_small):
    """Exponent of the residue norm of g'^k against the compatible subfield
    generator g: N(g') = g, so N(g'^k) = g^(k mod q_small - 1)."""
    assert (q_big - 1) % (q_small - 1) == 0
    return k % (q_small - 1)


class TestFieldDesc:
    def test_basic_data(self):
        K = FieldDesc(5, 2)
        assert K.q == 25
        assert K.different_exponent == 0
        assert K.uniformizer == 5
        assert K.valuation(3) == 3
        assert repr(K) == "K(5^2)"

    def test_residue_generator_is_primitive(self):
        for p, f in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)]:
            g = FieldDesc(p, f).residue_generator()
            assert g.multiplicative_order() == p**f - 1

    def test_even_prime_rejected(self):
        with pytest.raises(ValueError):
            FieldDesc(2, 1)

    def test_composite_rejected(self):
        with pytest.raises(ValueError):
            FieldDesc(9, 1)


class TestTameExtDesc:
    def test_inertia_order_must_divide(self):
        # e = 4 needs mult = q mod e of multiplicative order f mod e
        E = tame_extension(FieldDesc(3, 1), 4, 2)
        assert E.e == 4 and E.f_rel == 2 and E.degree == 8

    def test_bad_multiplier_rejected(self):
        G = metacyclic(5, 4, 2)  # mult = 2, but base q = 3 mod 4
        with pytest.raises(ValueError):
            TameExtDesc(FieldDesc(3, 1), G)

    def test_fixed_fields_unramified(self):
        E = tame_extension(FieldDesc(3, 1), 4, 6)
        G = E.group
        for d in (1, 2, 3, 6):
            st = G.subgroup_t_over(d)
            K1 = E.fixed_field(st)
            assert K1 == FieldDesc(3, d)
            assert E.residue_degree_over_base(st) == d

    def test_subgroup_without_inertia_rejected(self):
        E = tame_extension(FieldDesc(3, 1), 4, 2)
        sub = E.group.cyclic_subgroup((0, 1))
        with pytest.raises(ValueError):
            E.fixed_field(sub)

    def test_ramification_times_residue_is_order(self):
        for p, e, f in [(3, 4, 2), (5, 3, 2), (3, 4, 6)]:
            E = tame_extension(FieldDesc(p, 1), e, f)
            assert E.e * E.f_rel == E.group.order


class TestUnitGroup:
    def test_q5_level_one(self):
        U = unit_group(FieldDesc(5, 1), 1)
        assert U.orders == (4,)
        assert U.order == 4

    def test_q5_level_two(self):
        U = unit_group(FieldDesc(5, 1), 2)
        assert U.orders == (4, 5)
        assert U.order == 20

    @pytest.mark.parametrize("p,f,m", SMALL_SHAPES)
    def test_order_product(self, p, f, m):
        U = unit_group(FieldDesc(p, f), m)
        q = p**f
        total = 1
        for o in U.orders:
            total *= o
        assert total == (q - 1) * q ** (m - 1)

    @pytest.mark.parametrize("p,f,m", SMALL_SHAPES)
    def test_dlog_roundtrip_exhaustive(self, p, f, m):
        U = unit_group(FieldDesc(p, f), m)
        seen = set()
        for exps, u in _oracle_units(U):
            assert U.dlog(u) == exps
            assert U.compose(exps) == u
            seen.add(u.coeff_ints)
        assert len(seen) == U.order

    @pytest.mark.parametrize("p,f,m", SMALL_SHAPES)
    def test_elements_matches_oracle(self, p, f, m):
        # same exps -> unit assignment; iteration order is not part of the
        # contract, so compare as maps
        U = unit_group(FieldDesc(p, f), m)
        got = dict(U.elements())
        want = dict(_oracle_units(U))
        assert len(got) == U.order
        assert got == want

    def test_dlog_needs_precision(self):
        U = unit_group(FieldDesc(5, 1), 3)
        shallow = UnramInt.from_int(5, 1, 2, 7)
        with pytest.raises(ValueError):
            U.dlog(shallow)

    def test_dlog_rejects_nonunit(self):
        U = unit_group(FieldDesc(5, 1), 2)
        with pytest.raises(ValueError):
            U.dlog(UnramInt.from_int(5, 1, 2, 5))

    def test_extra_precision_truncated(self):
        U = unit_group(FieldDesc(3, 1), 2)
        deep = UnramInt.from_int(3, 1, 5, 7 + 9 * 2)
        assert U.dlog(deep) == U.dlog(UnramInt.from_int(3, 1, 2, 7))


class TestMulChar:
    def test_trivial_conductor_zero(self):
        chi = MulChar.one(FieldDesc(3, 1))
        assert conductor(chi) == 0
        assert chi.is_trivial() and chi.is_unramified()

    def test_teich_only_conductor_one(self):
        chi = MulChar(FieldDesc(3, 1), 1, 1, (), RootOfUnity.one())
        assert conductor(chi) == 1
        assert _oracle_conductor(chi) == 1

    def test_faithful_principal_conductor_two(self):
        chi = MulChar(FieldDesc(3, 1), 2, 0, (1,), RootOfUnity.one())
        assert conductor(chi) == 2
        assert _oracle_conductor(chi) == 2

    def test_conductor_matches_kernel_scan(self):
        # every character of (Z/27)^x and of the f=2, m=2 group at p=3
        K = FieldDesc(3, 1)
        for te in range(2):
            for pe in range(9):
                chi = MulChar(K, 3, te, (pe,), RootOfUnity.one())
                assert conductor(chi) == _oracle_conductor(chi)
        K2 = FieldDesc(3, 2)
        for te in range(0, 8, 3):
            for pe1 in range(3):
                for pe2 in range(3):
                    chi = MulChar(K2, 2, te, (pe1, pe2), RootOfUnity.one())
                    assert conductor(chi) == _oracle_conductor(chi)

    def test_values_are_homomorphic(self):
        K = FieldDesc(5, 1)
        chi = MulChar(K, 2, 3, (2,), RootOfUnity(4, 1))
        U = unit_group(K, 2)
        units = _oracle_units(U)
        for _, u in units[::3]:
            for _, v in units[::5]:
                lhs = chi.eval_unit(u * v)
                assert lhs == chi.eval_unit(u) * chi.eval_unit(v)

    def test_value_includes_uniformizer_part(self):
        K = FieldDesc(5, 1)
        chi = MulChar(K, 1, 0, (), RootOfUnity(4, 1))
        u = UnramInt.one(5, 1, 1)
        assert chi.value(3, u) == RootOfUnity(4, 3).as_cyc()

    def test_lift_descend_roundtrip(self):
        K = FieldDesc(3, 1)
        chi = MulChar(K, 2, 1, (2,), RootOfUnity(4, 1))
        assert chi.lift_to(4).descend_to(2).same_char(chi)
        lifted = chi.lift_to(3)
        assert lifted.conductor() == chi.conductor() == 2
        # lifted character agrees on units known at the deeper level
        U3 = unit_group(K, 3)
        for exps, u in _oracle_units(U3):
            assert lifted.eval_unit(u) == chi.eval_unit(u.at_precision(2))

    def test_descend_below_conductor_rejected(self):
        chi = MulChar(FieldDesc(3, 1), 2, 0, (1,), RootOfUnity.one())
        with pytest.raises(ValueError):
            chi.descend_to(1)

    def test_canonical_minimal_level(self):
        chi = MulChar(FieldDesc(3, 1), 3, 1, (3,), RootOfUnity.one())
        assert chi.conductor() == 2
        assert chi.canonical().m == 2
        assert chi.canonical().same_char(chi)

    def test_product_conductor_rule(self):
        # conductor(a*b) <= max, with equality when the conductors differ
        K = FieldDesc(3, 1)
        chars = [
            MulChar(K, 2, te, (pe,), RootOfUnity.one())
            for te in range(2)
            for pe in range(3)
        ]
        for a in chars:
            for b in chars:
                ca, cb, cab = a.conductor(), b.conductor(), (a * b).conductor()
                assert cab <= max(ca, cb)
                if ca != cb:
                    assert cab == max(ca, cb)

    def test_unramified_twist_keeps_conductor(self):
        K = FieldDesc(5, 1)
        for te in range(4):
            for pe in range(5):
                chi = MulChar(K, 2, te, (pe,), RootOfUnity.one())
                rho = MulChar.unramified(K, RootOfUnity(8, 3))
                assert (chi * rho).conductor() == chi.conductor()

    def test_galois_compose(self):
        K = FieldDesc(3, 1)
        chi = MulChar(K, 2, 1, (1,), RootOfUnity(4, 1))
        g = chi.galois_compose(5)
        # unit values get composed with zeta -> zeta^5
        U = unit_group(K, 2)
        for exps, u in _oracle_units(U):
            assert g.eval_unit(u) == chi.eval_unit(u).galois(5)
        assert g.pival == RootOfUnity(4, 1) ** 5

    def test_galois_compose_needs_coprime(self):
        chi = MulChar(FieldDesc(3, 1), 2, 1, (1,), RootOfUnity.one())
        with pytest.raises(ValueError):
            chi.galois_compose(3)

    def test_inverse(self):
        chi = MulChar(FieldDesc(5, 1), 2, 3, (2,), RootOfUnity(4, 1))
        both = chi * chi.inverse()
        assert both.conductor() == 0 and both.pival == RootOfUnity.one()

    @given(
        te=st.integers(0, 3),
        pe=st.integers(0, 24),
        te2=st.integers(0, 3),
        pe2=st.integers(0, 24),
    )
    @settings(max_examples=40, deadline=None)
    def test_product_exponents_add(self, te, pe, te2, pe2):
        K = FieldDesc(5, 1)
        a = MulChar(K, 3, te, (pe,), RootOfUnity.one())
        b = MulChar(K, 3, te2, (pe2,), RootOfUnity.one())
        ab = a * b
        assert ab.teich_exp == (te + te2) % 4
        assert ab.prin_exps == (((pe + pe2) % 25),)


class TestArtinDict:
    def test_trivial_char_maps_to_trivial(self):
        E = tame_extension(FieldDesc(3, 1), 4, 2)
        st_t = E.group.subgroup_t_over(2)
        chi = artin_dict(E, st_t, st_t.trivial_char())
        assert chi.is_trivial() and chi.conductor() == 0

    def test_inertia_trivial_gives_unramified(self):
        E = tame_extension(FieldDesc(3, 1), 4, 2)
        full = E.group.subgroup_t_over(1)
        lam = next(
            l
            for l in full.linear_chars()
            if l.value((1, 0)).is_one() and not l.value((0, 1)).is_one()
        )
        chi = artin_dict(E, full, lam)
        assert chi.is_unramified() and chi.conductor() == 0
        assert chi.pival.order == 2  # the nontrivial s-value survives as pival

    def test_dihedral_frozen_values(self):
        # St = <t> inside the (e, f) = (4, 2) group at p = 3: K1 = K(3^2),
        # q1 - 1 = 8, e_d = gcd(4, 8) = 4.  lam(t) = zeta_4 gives unit part
        # of order 4, so teich exponent -1 * 1 * (8 / 4) = -2 = 6 mod 8, and
        # s^2 = 1 in the group forces the Frobenius-coset value to be 1.
        E = tame_extension(FieldDesc(3, 1), 4, 2)
        st_t = E.group.subgroup_t_over(2)
        lam = next(
            l
            for l in st_t.linear_chars()
            if l.value((1, 0)) == RootOfUnity(4, 1).as_cyc()
        )
        chi = artin_dict(E, st_t, lam)
        assert chi.field == FieldDesc(3, 2)
        assert chi.teich_exp == 6
        assert chi.pival == RootOfUnity.one()
        assert chi.conductor() == 1

    def test_sign_convention_flag(self):
        E = tame_extension(FieldDesc(3, 1), 4, 2)
        st_t = E.group.subgroup_t_over(2)
        lam = next(
            l
            for l in st_t.linear_chars()
            if l.value((1, 0)) == RootOfUnity(4, 1).as_cyc()
        )
        assert get_convention_sign() == -1
        try:
            set_convention_sign(1)
            assert artin_dict(E, st_t, lam).teich_exp == 2
        finally:
            set_convention_sign(-1)
        with pytest.raises(ValueError):
            set_convention_sign(0)

    def test_conductor_is_zero_or_one(self):
        for p, e, f in [(3, 4, 2), (5, 3, 2)]:
            E = tame_extension(FieldDesc(p, 1), e, f)
            for d in (x for x in range(1, f + 1) if f % x == 0):
                sub = E.group.subgroup_t_over(d)
                for lam in sub.linear_chars():
                    chi = artin_dict(E, sub, lam)
                    ramified = not lam.value((1, 0)).is_one()
                    assert chi.conductor() == (1 if ramified else 0)

    @pytest.mark.parametrize("p,e,f", [(3, 4, 2), (5, 3, 2), (3, 4, 6)])
    def test_bijection_onto_character_group(self, p, e, f):
        # group isomorphism: distinct images, all inside the subgroup of
        # characters of K1^x with unit order | e_d and pival order | n/d,
        # and the counts match |St^ab| = e_d * (n / d)
        E = tame_extension(FieldDesc(p, 1), e, f)
        for d in (x for x in range(1, f + 1) if f % x == 0):
            sub = E.group.subgroup_t_over(d)
            q1 = p**d
            e_d = gcd(e, q1 - 1)
            images = set()
            for lam in sub.linear_chars():
                chi = artin_dict(E, sub, lam)
                assert chi.field == FieldDesc(p, d)
                assert chi.conductor() <= 1
                assert (chi.teich_exp * e_d) % (q1 - 1) == 0
                assert (chi.pival ** (f // d)) == RootOfUnity.one()
                images.add((chi.teich_exp, chi.pival.order, chi.pival.exp))
            assert len(images) == e_d * (f // d) == len(sub.linear_chars())

    @pytest.mark.parametrize("p,e,f", [(3, 4, 2), (5, 3, 2)])
    def test_respects_products(self, p, e, f):
        E = tame_extension(FieldDesc(p, 1), e, f)
        for d in (x for x in range(1, f + 1) if f % x == 0):
            sub = E.group.subgroup_t_over(d)
            chars = sub.linear_chars()
            for l1 in chars:
                for l2 in chars:
                    lhs = artin_dict(E, sub, l1 * l2)
                    rhs = artin_dict(E, sub, l1) * artin_dict(E, sub, l2)
                    assert lhs.same_char(rhs)

    @pytest.mark.parametrize(
        "p,e,f,d,d2", [(3, 4, 2, 1, 2), (3, 4, 6, 1, 2), (3, 4, 6, 2, 6), (3, 4, 6, 3, 6), (5, 3, 2, 1, 2)]
    )
    def test_restriction_is_norm_compatible(self, p, e, f, d, d2):
        # restricting lam to the smaller subgroup matches composing the
        # dictionary character with the norm of the residue extension
        E = tame_extension(FieldDesc(p, 1), e, f)
        big = E.group.subgroup_t_over(d)
        small = E.group.subgroup_t_over(d2)
        q_small, q_big = p**d, p**d2
        r = d2 // d
        for lam in big.linear_chars():
            lam_res = next(
                l
                for l in small.linear_chars()
                if all(l.value(x) == lam.value(x) for x in small.elems)
            )
            chi = artin_dict(E, big, lam)
            chi2 = artin_dict(E, small, lam_res)
            assert chi2.pival == chi.pival**r
            for k in range(q_big - 1):
                lhs = chi2.unit_value_from_exps((k,))
                rhs = chi.unit_value_from_exps(
                    (_norm_exponent(k, q_big, q_small),)
                )
                assert lhs == rhs

    def test_foreign_character_rejected(self):
        E = tame_extension(FieldDesc(3, 1), 4, 2)
        sub1 = E.group.subgroup_t_over(1)
        sub2 = E.group.subgroup_t_over(2)
        lam = sub2.linear_chars()[1]
        with pytest.raises(ValueError):
            artin_dict(E, sub1, lam)

    def test_inertia_free_subgroup_rejected(self):
        E = tame_extension(FieldDesc(3, 1), 4, 2)
        sub = E.group.cyclic_subgroup((0, 1))
        lam = sub.linear_chars()[0]
        with pytest.raises(ValueError):
            artin_dict(E, sub, lam)
