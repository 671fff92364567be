"""Local-field bookkeeping over unramified base fields.

Field descriptors, tame extension descriptors, unit-group presentations of
(O_K / p^m)^x with exact discrete logarithms, multiplicative characters of
K^x of finite order, and the tame Artin dictionary sending linear characters
of Galois stabilizers to characters of the fixed field's multiplicative group.

Conventions pinned here:
  - base fields are unramified over Q_p with p odd, so d_K = 0 and the
    distinguished uniformizer is p itself;
  - the reciprocity normalization sends the uniformizer to the Frobenius
    coset, so the dictionary assigns pival = lambda(s^d);
  - the action on units goes through the tame symbol
    u |-> t^(sign * dlog(ubar)) with a configurable global sign
    (default -1, the inverse-residue action).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .cyclotomic import CycNum, RootOfUnity, factorize
from .groups import LinearChar, MetacyclicGroup, Subgroup, metacyclic
from .padic import (
    ResidueElem,
    UnramInt,
    norm_generator,
    residue_dlog,
    teichmuller,
)

_convention_sign = -1


def get_convention_sign() -> int:
    return _convention_sign


def set_convention_sign(sign: int) -> None:
    """Flip the tame-symbol convention; only +1 and -1 are meaningful."""
    global _convention_sign
    if sign not in (1, -1):
        raise ValueError("convention sign must be +1 or -1")
    _convention_sign = sign


# ---------------------------------------------------------------------------
# field descriptors


@dataclass(frozen=True)
class FieldDesc:
    """An unramified extension K of Q_p of residue degree f.

    The uniformizer is p, v_K(p) = 1, the different is trivial, and the
    residue field is F_q with q = p^f.
    """

    p: int
    f: int

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or factorize(self.p) != {self.p: 1}:
            raise ValueError("need an odd prime")
        if self.f < 1:
            raise ValueError("need a positive residue degree")

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def different_exponent(self) -> int:
        return 0

    @property
    def uniformizer(self) -> int:
        return self.p

    def valuation(self, k: int) -> int:
        """v_K of p^k (the only rational powers the artifact manipulates)."""
        return k

    def one(self, N: int) -> UnramInt:
        return UnramInt.one(self.p, self.f, N)

    def residue_generator(self) -> ResidueElem:
        """The norm-compatible primitive root of the residue field."""
        return norm_generator(self.p, self.f)

    def __repr__(self):
        return f"K({self.p}^{self.f})"


@dataclass(frozen=True)
class TameExtDesc:
    """A tame Galois extension L/K with group <t, s | t^e, s^f, sts^-1 = t^q>.

    t generates inertia, s lifts the residue Frobenius of K; subgroups
    containing <t> are exactly the ones whose fixed field is unramified
    over Q_p.
    """

    base: FieldDesc
    group: MetacyclicGroup

    def __post_init__(self):
        e = self.group.e
        if e > 1 and self.group.mult != self.base.q % e:
            raise ValueError("group multiplier must match the base residue size")

    @property
    def e(self) -> int:
        return self.group.e

    @property
    def f_rel(self) -> int:
        return self.group.n

    @property
    def degree(self) -> int:
        return self.group.order

    def fixed_field(self, st: Subgroup) -> FieldDesc:
        """Fixed field of a subgroup containing inertia: unramified of degree d."""
        self._require_inertia(st)
        d = self.group.n // (st.order // self.e)
        return FieldDesc(self.base.p, self.base.f * d)

    def residue_degree_over_base(self, st: Subgroup) -> int:
        self._require_inertia(st)
        return self.group.n // (st.order // self.e)

    def _require_inertia(self, st: Subgroup) -> None:
        t_elems = {(a, 0) for a in range(self.e)}
        if not t_elems <= set(st.elems):
            raise ValueError("subgroup does not contain inertia")

    def __repr__(self):
        return f"Tame({self.group!r}/{self.base!r})"


def tame_extension(base: FieldDesc, e: int, f_rel: int) -> TameExtDesc:
    if base.f == 1:
        return TameExtDesc(base, metacyclic(base.p, e, f_rel))
    return TameExtDesc(base, MetacyclicGroup.with_multiplier(e, base.q % e, f_rel))


# ---------------------------------------------------------------------------
# unit groups


@dataclass(frozen=True)
class UnitGroupPres:
    """Presentation of (O_K / p^m)^x.

    One Teichmuller generator of order q - 1, then f principal generators
    1 + p*w(xi_i) for the power-basis xi_i of the residue field, each of
    order p^(m-1).  Discrete logs are exact: baby-step/giant-step on the
    residue part, digit peeling on the principal part.
    """

    field: FieldDesc
    m: int
    teich_gen: UnramInt
    prin_gens: tuple[UnramInt, ...]

    @property
    def teich_order(self) -> int:
        return self.field.q - 1

    @property
    def prin_order(self) -> int:
        return self.field.p ** (self.m - 1)

    @property
    def orders(self) -> tuple[int, ...]:
        return (self.teich_order,) + (self.prin_order,) * len(self.prin_gens)

    @property
    def order(self) -> int:
        return (self.field.q - 1) * self.field.q ** (self.m - 1)

    def dlog(self, u: UnramInt) -> tuple[int, ...]:
        """Exponents (k, a_1..a_f) with u = g^k * prod (1 + p w_i)^(a_i) mod p^m."""
        p, f, m = self.field.p, self.field.f, self.m
        if u.precision < m:
            raise ValueError("unit known to too little precision for this modulus")
        u = u.at_precision(m)
        ubar = u.reduce()
        if ubar.is_zero():
            raise ValueError("not a unit")
        k = residue_dlog(self.field.residue_generator(), ubar, self.teich_order)
        rem = u * _pow_cached(self.teich_gen, self.teich_order - k % self.teich_order)
        a = [0] * len(self.prin_gens)
        for j in range(1, m):
            # rem = 1 + p^j c with the digits below j already cleared
            diff = rem - 1
            c = diff.divexact_p(j).reduce() if not diff.is_zero() else None
            if c is None or c.is_zero():
                continue
            step = p ** (j - 1)
            for i in range(f):
                d = c.coeffs[i]
                if d:
                    a[i] = (a[i] + d * step) % self.prin_order
                    rem = rem * _pow_cached(self.prin_gens[i], (self.prin_order - d * step) % self.prin_order)
        if not rem.is_one():
            raise AssertionError("principal-part digit peeling did not terminate")
        return (k,) + tuple(a)

    def compose(self, exps: tuple[int, ...]) -> UnramInt:
        """Inverse of dlog: the unit with the given exponents."""
        out = _pow_cached(self.teich_gen, exps[0] % self.teich_order)
        for g, a in zip(self.prin_gens, exps[1:]):
            out = out * _pow_cached(g, a % self.prin_order)
        return out

    def elements(self):
        """Iterate (exps, unit) over the whole group by generator odometer.

        Every generator has exact order in (O/p^m)^x, so rolling a digit
        over multiplies the running product by gen^order = 1; each step is
        then a single group multiplication, amortized.
        """
        gens = (self.teich_gen,) + self.prin_gens
        orders = self.orders
        exps = [0] * len(gens)
        cur = self.field.one(self.m)
        for _ in range(self.order):
            yield tuple(exps), cur
            i = 0
            while i < len(gens):
                exps[i] += 1
                cur = cur * gens[i]
                if exps[i] < orders[i]:
                    break
                exps[i] = 0
                i += 1


@lru_cache(maxsize=None)
def _pow_cached(g: UnramInt, k: int) -> UnramInt:
    return g**k


@lru_cache(maxsize=None)
def unit_group(K: FieldDesc, m: int) -> UnitGroupPres:
    if m < 1:
        raise ValueError("modulus exponent must be >= 1")
    p, f = K.p, K.f
    teich = teichmuller(K.residue_generator(), m) if K.q > 2 else K.one(m)
    prins = []
    for i in range(f):
        xi = ResidueElem(p, f, tuple(1 if j == i else 0 for j in range(f)))
        prins.append(K.one(m) + teichmuller(xi, m) * p)
    return UnitGroupPres(K, m, teich, tuple(prins) if m > 1 else ())


# ---------------------------------------------------------------------------
# multiplicative characters


def _vp(k: int, p: int, cap: int) -> int:
    """p-adic valuation of k, with `cap` standing in for infinity."""
    if k == 0:
        return cap
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return min(v, cap)


@dataclass(frozen=True)
class MulChar:
    """A finite-order character of K^x, split as unit part x value at p.

    The unit part is stored as exponents against the unit_group(K, m)
    generators; pival is chi(p).  Characters at different presentation
    moduli are compared and combined after lifting to the larger one.
    """

    field: FieldDesc
    m: int
    teich_exp: int
    prin_exps: tuple[int, ...]
    pival: RootOfUnity

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("presentation modulus must be >= 1")
        K = self.field
        expected = K.f if self.m > 1 else 0
        if len(self.prin_exps) != expected:
            raise ValueError("principal exponent tuple has the wrong length")
        object.__setattr__(self, "teich_exp", self.teich_exp % (K.q - 1))
        pm = K.p ** (self.m - 1)
        object.__setattr__(
            self, "prin_exps", tuple(k % pm for k in self.prin_exps)
        )

    # -- constructors

    @classmethod
    def one(cls, K: FieldDesc) -> "MulChar":
        return cls(K, 1, 0, (), RootOfUnity(1, 0))

    @classmethod
    def unramified(cls, K: FieldDesc, pival: RootOfUnity) -> "MulChar":
        return cls(K, 1, 0, (), pival)

    # -- structure

    def is_trivial(self) -> bool:
        return self.is_unramified() and self.pival.order == 1

    def is_unramified(self) -> bool:
        return self.teich_exp == 0 and not any(self.prin_exps)

    def conductor(self) -> int:
        """Exponent of the smallest unit filtration level the character kills."""
        p, m = self.field.p, self.m
        if self.is_unramified():
            return 0
        best = 1
        for k in self.prin_exps:
            if k:
                best = max(best, m - _vp(k, p, m - 1))
        return best

    def unit_order(self) -> int:
        q1 = self.field.q - 1
        out = q1 // gcd(q1, self.teich_exp) if self.teich_exp else 1
        pm = self.field.p ** (self.m - 1)
        for k in self.prin_exps:
            if k:
                out = out * (pm // gcd(pm, k)) // gcd(out, pm // gcd(pm, k))
        return out

    def order(self) -> int:
        u, w = self.unit_order(), self.pival.order
        return u * w // gcd(u, w)

    # -- evaluation

    def unit_value_from_exps(self, exps: tuple[int, ...]) -> CycNum:
        """Value on the unit with the given unit_group exponents."""
        K = self.field
        acc = RootOfUnity(K.q - 1, self.teich_exp * exps[0])
        pm = K.p ** (self.m - 1)
        for k, a in zip(self.prin_exps, exps[1:]):
            acc = acc * RootOfUnity(pm, k * a)
        return acc.as_cyc()

    def eval_unit(self, u: UnramInt) -> CycNum:
        return self.unit_value_from_exps(unit_group(self.field, self.m).dlog(u))

    def eval_at_int_unit(self, a: int) -> CycNum:
        """Value on an integer prime to p, as a unit of O_K."""
        if a % self.field.p == 0:
            raise ValueError("not a unit")
        return self.eval_unit(UnramInt.from_int(self.field.p, self.field.f, self.m, a))

    def value(self, vp: int, u: UnramInt | None = None) -> CycNum:
        """Value on p^vp * u."""
        out = (self.pival**vp).as_cyc()
        if u is not None:
            out = out * self.eval_unit(u)
        return out

    # -- algebra

    def lift_to(self, m2: int) -> "MulChar":
        """The same character presented at a finer modulus (m2 >= conductor)."""
        if m2 < self.m:
            return self.descend_to(m2)
        if m2 == self.m:
            return self
        scale = self.field.p ** (m2 - self.m)
        prin = self.prin_exps if self.m > 1 else (0,) * self.field.f
        return MulChar(
            self.field, m2, self.teich_exp, tuple(k * scale for k in prin), self.pival
        )

    def descend_to(self, m2: int) -> "MulChar":
        if m2 < max(1, self.conductor()):
            raise ValueError("cannot present below the conductor")
        if m2 == self.m:
            return self
        scale = self.field.p ** (self.m - m2)
        prin = tuple(k // scale for k in self.prin_exps) if m2 > 1 else ()
        return MulChar(self.field, m2, self.teich_exp, prin, self.pival)

    def canonical(self) -> "MulChar":
        """Presented exactly at its conductor (or modulus 1 when unramified)."""
        return self.descend_to(max(1, self.conductor()))

    def __mul__(self, other: "MulChar") -> "MulChar":
        if self.field != other.field:
            raise ValueError("characters of different fields")
        m = max(self.m, other.m)
        a, b = self.lift_to(m), other.lift_to(m)
        return MulChar(
            self.field,
            m,
            a.teich_exp + b.teich_exp,
            tuple(x + y for x, y in zip(a.prin_exps, b.prin_exps)),
            a.pival * b.pival,
        )

    def inverse(self) -> "MulChar":
        return MulChar(
            self.field,
            self.m,
            -self.teich_exp,
            tuple(-k for k in self.prin_exps),
            self.pival**-1,
        )

    def galois_compose(self, a: int) -> "MulChar":
        """sigma_a composed with the character: all values are raised to a."""
        if gcd(a, self.order()) != 1:
            raise ValueError("a must be coprime to the character order")
        return MulChar(
            self.field,
            self.m,
            a * self.teich_exp,
            tuple(a * k for k in self.prin_exps),
            self.pival**a,
        )

    def same_char(self, other: "MulChar") -> bool:
        m = max(self.m, other.m)
        return self.lift_to(m) == other.lift_to(m)

    def __repr__(self):
        return (
            f"MulChar({self.field!r},m={self.m},t={self.teich_exp},"
            f"u={self.prin_exps},p->{self.pival!r})"
        )


def conductor(chi: MulChar) -> int:
    return chi.conductor()


# ---------------------------------------------------------------------------
# the tame Artin dictionary


def _root_exponent(value: CycNum, order: int) -> int:
    """The k with value = zeta_order^k, by scanning the finite group."""
    for k in range(order):
        if value == RootOfUnity(order, k).as_cyc():
            return k
    raise ValueError("value is not a root of unity of the expected order")


def artin_dict(E: TameExtDesc, st: Subgroup, lam: LinearChar) -> MulChar:
    """Transport a linear character of a stabilizer St >= <t> to a character
    of the fixed field K1 = L^St.

    Pinned normalization: the uniformizer p of K1 goes to the Frobenius
    coset s^d, so pival = lam(s^d); inertia is read through the tame symbol
    with the global convention sign, giving a Teichmuller exponent
    sign * i * (q1 - 1)/e_d where lam(t) = zeta_{e_d}^i.
    """
    if lam.subgroup.elems != st.elems:
        raise ValueError("character does not live on the given subgroup")
    E._require_inertia(st)
    d = E.residue_degree_over_base(st)
    K1 = E.fixed_field(st)
    q1 = K1.q
    n = E.f_rel
    e = E.e
    sign = get_convention_sign()
    if e == 1:
        i, e_d = 0, 1
    else:
        e_d = gcd(e, q1 - 1)
        i = _root_exponent(lam.value((1, 0)), e_d)
    j = _root_exponent(lam.value((0, d % n)), n // d)
    pival = RootOfUnity(n // d, j)
    teich = (sign * i * ((q1 - 1) // e_d)) % (q1 - 1)
    return MulChar(K1, 1, teich, (), pival)

