"""Split metacyclic groups, their characters, and degree-zero decompositions.

Groups are presented as <t, s | t^e = 1, s^n = 1, s t s^-1 = t^mult> with
gcd(mult, e) = 1 and mult^n = 1 mod e; elements are pairs (a, b) meaning
t^a s^b, multiplied by (a, b)(a', b') = (a + mult^b a', b + b').  The public
constructor takes a prime p with e | p^f - 1 and sets mult = p mod e; the
general-multiplier form exists so that subgroups containing <t> can be viewed
as groups of the same shape.

Irreducible characters come from the orbit construction: a character of <t>
with index r has orbit {r, r*mult, ...} of size w under s-conjugation,
stabilizer U_w = <t, s^w>, and f/w linear extensions; inducing each extension
to G yields an irreducible of degree w, and every irreducible arises this way
exactly once.  Character values are exact cyclotomic numbers stored at the
level of the group exponent.

The degree-zero solver expresses a virtual character of degree 0 over the
family ind_U(lam - 1), U cyclic or containing <t>, by Smith normal form; among
the integer solutions it returns the deterministic output of an L1-reduction
(greedy line search per kernel vector, then exhaustive unit-box descent when
the kernel is small, ties broken lexicographically).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, isqrt, lcm

from .cyclotomic import CycNum, RootOfUnity
from .snf import solve_integer_system

__all__ = [
    "MetacyclicGroup",
    "metacyclic",
    "Subgroup",
    "LinearChar",
    "IrrChar",
    "VirtualChar",
    "Deg0Decomp",
    "irr_table",
    "induce",
    "induce_class_function",
    "restrict",
    "tensor",
    "inner_product",
    "inner_product_on",
    "ind_res_tensor",
    "deg0_decompose",
    "character_table_csv",
]

Elem = tuple[int, int]


class MetacyclicGroup:
    """Split metacyclic group; treat instances as immutable after construction."""

    def __init__(self, p: int, e: int, f: int):
        if e < 1 or f < 1:
            raise ValueError("e and f must be positive")
        if p < 2 or any(p % d == 0 for d in range(2, isqrt(p) + 1)):
            raise ValueError("p must be prime")
        if gcd(e, p) != 1:
            raise ValueError("need gcd(e, p) = 1")
        if e > 1 and (pow(p, f, e) != 1 % e):
            raise ValueError("need e | p^f - 1")
        self.p: int | None = p
        self.e = e
        self.n = f
        self.mult = p % e if e > 1 else 0
        self._init_caches()

    @classmethod
    def with_multiplier(cls, e: int, mult: int, n: int) -> "MetacyclicGroup":
        """Internal presentation with an explicit twist multiplier (no prime attached)."""
        self = cls.__new__(cls)
        if e < 1 or n < 1:
            raise ValueError("e and n must be positive")
        mult %= max(e, 1)
        if e > 1:
            if gcd(mult, e) != 1:
                raise ValueError("multiplier must be a unit mod e")
            if pow(mult, n, e) != 1:
                raise ValueError("multiplier order must divide n")
        self.p = None
        self.e = e
        self.n = n
        self.mult = mult if e > 1 else 0
        self._init_caches()
        return self

    def _init_caches(self):
        self._mult_pows = [pow(self.mult, b, self.e) if self.e > 1 else 0 for b in range(self.n)]
        self._elements: list[Elem] | None = None
        self._classes = None
        self._class_index = None
        self._exponent = None
        self._irr = None

    # -- presentation views

    @property
    def f(self) -> int:
        return self.n

    @property
    def order(self) -> int:
        return self.e * self.n

    def __repr__(self):
        tag = f"p={self.p}," if self.p is not None else f"mult={self.mult},"
        return f"MetacyclicGroup({tag}e={self.e},n={self.n})"

    # -- element arithmetic

    @property
    def identity(self) -> Elem:
        return (0, 0)

    def elements(self) -> list[Elem]:
        if self._elements is None:
            self._elements = [(a, b) for a in range(self.e) for b in range(self.n)]
        return self._elements

    def mul(self, g: Elem, h: Elem) -> Elem:
        a, b = g
        c, d = h
        if self.e > 1:
            a = (a + self._mult_pows[b] * c) % self.e
        return (a if self.e > 1 else 0, (b + d) % self.n)

    def inv(self, g: Elem) -> Elem:
        a, b = g
        nb = (-b) % self.n
        if self.e > 1:
            return ((-a * self._mult_pows[nb]) % self.e, nb)
        return (0, nb)

    def power(self, g: Elem, k: int) -> Elem:
        if k < 0:
            return self.power(self.inv(g), -k)
        out = self.identity
        cur = g
        while k:
            if k & 1:
                out = self.mul(out, cur)
            cur = self.mul(cur, cur)
            k >>= 1
        return out

    def conj(self, h: Elem, g: Elem) -> Elem:
        """h g h^-1."""
        return self.mul(self.mul(h, g), self.inv(h))

    def order_of(self, g: Elem) -> int:
        k = 1
        cur = g
        while cur != self.identity:
            cur = self.mul(cur, g)
            k += 1
        return k

    def exponent(self) -> int:
        if self._exponent is None:
            m = 1
            for g in self.elements():
                m = lcm(m, self.order_of(g))
            self._exponent = m
        return self._exponent

    # -- conjugacy classes

    def conj_classes(self) -> list[tuple[Elem, ...]]:
        if self._classes is None:
            seen: set[Elem] = set()
            classes = []
            for g in self.elements():
                if g in seen:
                    continue
                orbit = {self.conj(h, g) for h in self.elements()}
                seen |= orbit
                classes.append(tuple(sorted(orbit)))
            classes.sort(key=lambda cl: cl[0])
            self._classes = classes
            self._class_index = {}
            for idx, cl in enumerate(classes):
                for g in cl:
                    self._class_index[g] = idx
        return self._classes

    def class_index(self, g: Elem) -> int:
        self.conj_classes()
        return self._class_index[g]

    # -- subgroups

    def subgroup_t_over(self, d: int) -> "Subgroup":
        """U_d = <t, s^d> for d | n; these are exactly the subgroups containing <t>."""
        if self.n % d:
            raise ValueError("d must divide the s-order")
        elems = tuple((a, b) for a in range(self.e) for b in range(0, self.n, d))
        return Subgroup(self, tuple(sorted(elems)), "t_over", (d,))

    def cyclic_subgroup(self, g: Elem) -> "Subgroup":
        elems = []
        cur = self.identity
        while True:
            elems.append(cur)
            cur = self.mul(cur, g)
            if cur == self.identity:
                break
        return Subgroup(self, tuple(sorted(elems)), "cyclic", (g,))

    def solver_subgroups(self) -> list["Subgroup"]:
        """Deterministic generator family for the degree-zero solver: the
        subgroups containing <t> (ascending d), then cyclic subgroups not
        already listed (by lex-least generator)."""
        out = []
        seen = set()
        for d in sorted(x for x in range(1, self.n + 1) if self.n % x == 0):
            sub = self.subgroup_t_over(d)
            if sub.elems not in seen:
                seen.add(sub.elems)
                out.append(sub)
        for g in self.elements():
            sub = self.cyclic_subgroup(g)
            if sub.elems not in seen:
                seen.add(sub.elems)
                out.append(sub)
        return out


@lru_cache(maxsize=None)
def metacyclic(p: int, e: int, f: int) -> MetacyclicGroup:
    """Cached factory so that equal presentations share one instance."""
    return MetacyclicGroup(p, e, f)


@dataclass(frozen=True)
class Subgroup:
    """Subgroup given by its element set; kind is 't_over' (data = (d,)) or 'cyclic' (data = (g,))."""

    parent: MetacyclicGroup
    elems: tuple[Elem, ...]
    kind: str
    data: tuple

    @property
    def order(self) -> int:
        return len(self.elems)

    def __contains__(self, g: Elem) -> bool:
        return g in self._elem_set()

    def _elem_set(self) -> frozenset:
        cached = self.__dict__.get("_eset")
        if cached is None:
            cached = frozenset(self.elems)
            object.__setattr__(self, "_eset", cached)
        return cached

    def coset_reps(self) -> list[Elem]:
        """Left coset representatives, chosen greedily in lex element order."""
        cached = self.__dict__.get("_reps")
        if cached is not None:
            return cached
        G = self.parent
        covered: set[Elem] = set()
        reps = []
        for g in G.elements():
            if g in covered:
                continue
            reps.append(g)
            for u in self.elems:
                covered.add(G.mul(g, u))
        object.__setattr__(self, "_reps", reps)
        return reps

    def as_group(self) -> MetacyclicGroup:
        """The subgroup as a standalone group of the same shape ('t_over' only)."""
        if self.kind != "t_over":
            raise ValueError("only subgroups containing <t> have the metacyclic shape here")
        d = self.data[0]
        G = self.parent
        return MetacyclicGroup.with_multiplier(G.e, pow(G.mult, d, G.e) if G.e > 1 else 0, G.n // d)

    def to_sub_elem(self, g: Elem) -> Elem:
        d = self.data[0]
        return (g[0], g[1] // d)

    def from_sub_elem(self, g: Elem) -> Elem:
        d = self.data[0]
        return (g[0], g[1] * d)

    def linear_chars(self) -> list["LinearChar"]:
        """All linear characters, deterministically ordered (trivial first)."""
        G = self.parent
        out = []
        if self.kind == "t_over":
            d = self.data[0]
            ed = gcd(G.e, (pow(G.mult, d, G.e) - 1) % G.e) if G.e > 1 else 1
            nd = G.n // d
            for i in range(ed):
                for j in range(nd):
                    values = {}
                    for (a, b) in self.elems:
                        val = RootOfUnity(ed, i * a) * RootOfUnity(nd, j * (b // d))
                        values[(a, b)] = val.as_cyc()
                    out.append(LinearChar(self, ("t_over", d, i, j), values))
        elif self.kind == "cyclic":
            g = self.data[0]
            m = self.order
            for j in range(m):
                values = {}
                cur = G.identity
                for k in range(m):
                    values[cur] = RootOfUnity(m, j * k).as_cyc()
                    cur = G.mul(cur, g)
                out.append(LinearChar(self, ("cyclic", g, j), values))
        else:
            raise ValueError(f"unknown subgroup kind {self.kind}")
        # trivial char must come first: for t_over/cyclic the (0, .., 0) index is trivial
        return out

    def trivial_char(self) -> "LinearChar":
        return self.linear_chars()[0]


@dataclass(frozen=True, eq=False)
class LinearChar:
    """Linear character of a subgroup, stored by explicit values."""

    subgroup: Subgroup
    key: tuple
    values: dict

    def value(self, g: Elem) -> CycNum:
        return self.values[g]

    def is_trivial(self) -> bool:
        return all(v.is_one() for v in self.values.values())

    def __mul__(self, other: "LinearChar") -> "LinearChar":
        if other.subgroup.elems != self.subgroup.elems:
            raise ValueError("characters of different subgroups")
        vals = {g: self.values[g] * other.values[g] for g in self.values}
        return LinearChar(self.subgroup, ("prod", self.key, other.key), vals)

    def __repr__(self):
        return f"LinearChar{self.key}"


@dataclass(frozen=True, eq=False)
class IrrChar:
    """Irreducible character with its monomial realization ind_{U_w}(lam)."""

    group: MetacyclicGroup
    degree: int
    st_d: int            # w: the orbit size; inducing subgroup is <t, s^w>
    r: int               # lam(t) = zeta_e^r
    j: int               # lam(s^w) = zeta_{n/w}^j
    st: Subgroup
    lam: LinearChar
    class_values: tuple  # CycNum per conjugacy class, at the exponent level

    def value(self, g: Elem) -> CycNum:
        return self.class_values[self.group.class_index(g)]

    def monomial_matrix(self, g: Elem) -> tuple[tuple[int, ...], tuple]:
        """The induced representation matrix of g, as (perm, values): the
        nonzero entries sit at (i, perm[i]) with value values[i]."""
        G = self.group
        reps = self.st.coset_reps()
        uset = self.st._elem_set()
        perm = []
        vals = []
        for i, xi in enumerate(reps):
            hit = None
            for jj, xj in enumerate(reps):
                u = G.mul(G.mul(G.inv(xi), g), xj)
                if u in uset:
                    if hit is not None:
                        raise AssertionError("monomial row with two entries")
                    hit = jj
                    vals.append(self.lam.value(u))
            if hit is None:
                raise AssertionError("monomial row with no entry")
            perm.append(hit)
        return tuple(perm), tuple(vals)

    def __repr__(self):
        return f"IrrChar(deg={self.degree},r={self.r},j={self.j})"


def _perm_sign(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            ln += 1
        if ln % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True, eq=False)
class VirtualChar:
    """Integer combination of the irreducibles of a group."""

    group: MetacyclicGroup
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(irr_table(self.group)):
            raise ValueError("coefficient vector length mismatch")

    @classmethod
    def zero(cls, G: MetacyclicGroup) -> "VirtualChar":
        return cls(G, (0,) * len(irr_table(G)))

    @classmethod
    def basis(cls, G: MetacyclicGroup, i: int) -> "VirtualChar":
        c = [0] * len(irr_table(G))
        c[i] = 1
        return cls(G, tuple(c))

    @classmethod
    def trivial(cls, G: MetacyclicGroup) -> "VirtualChar":
        table = irr_table(G)
        for i, chi in enumerate(table):
            if chi.degree == 1 and all(v.is_one() for v in chi.class_values):
                return cls.basis(G, i)
        raise AssertionError("trivial character missing from table")

    def __eq__(self, other):
        return (
            isinstance(other, VirtualChar)
            and other.group is self.group
            and other.coeffs == self.coeffs
        )

    __hash__ = None

    def __add__(self, other: "VirtualChar") -> "VirtualChar":
        if other.group is not self.group:
            raise ValueError("different groups")
        return VirtualChar(self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "VirtualChar":
        return VirtualChar(self.group, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "VirtualChar") -> "VirtualChar":
        return self + (-other)

    def __rmul__(self, k: int) -> "VirtualChar":
        if not isinstance(k, int):
            return NotImplemented
        return VirtualChar(self.group, tuple(k * a for a in self.coeffs))

    def degree(self) -> int:
        table = irr_table(self.group)
        return sum(c * chi.degree for c, chi in zip(self.coeffs, table))

    def value(self, g: Elem) -> CycNum:
        table = irr_table(self.group)
        acc = CycNum.zero(1)
        for c, chi in zip(self.coeffs, table):
            if c:
                acc = acc + chi.value(g) * c
        return acc

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        return f"VirtualChar{self.coeffs}"


# ---------------------------------------------------------------------------
# irreducible table


def _orbits(e: int, mult: int) -> list[tuple[int, ...]]:
    if e == 1:
        return [(0,)]
    seen = [False] * e
    orbits = []
    for r in range(e):
        if seen[r]:
            continue
        orb = []
        cur = r
        while not seen[cur]:
            seen[cur] = True
            orb.append(cur)
            cur = (cur * mult) % e
        orbits.append(tuple(orb))
    return orbits


def irr_table(G: MetacyclicGroup) -> list[IrrChar]:
    """Complete table of irreducibles via the orbit construction."""
    if G._irr is not None:
        return G._irr
    M = G.exponent()
    classes = G.conj_classes()
    chars: list[IrrChar] = []
    for orb in _orbits(G.e, G.mult):
        r = orb[0]
        w = len(orb)
        st = G.subgroup_t_over(w)
        for j in range(G.n // w):
            lam = _stabilizer_char(G, st, r, j)
            values = _induced_values(G, st, lam, classes, M)
            chars.append(IrrChar(G, w, w, r, j, st, lam, tuple(values)))
    chars.sort(key=lambda c: (c.degree, c.r, c.j))
    if len(chars) != len(classes):
        raise AssertionError("character count does not match class count")
    if sum(c.degree ** 2 for c in chars) != G.order:
        raise AssertionError("degree sum check failed")
    G._irr = chars
    return chars


def _stabilizer_char(G: MetacyclicGroup, st: Subgroup, r: int, j: int) -> LinearChar:
    """The extension of lam_r from <t> to U_w with lam(s^w) = zeta_{n/w}^j."""
    w = st.data[0]
    nw = G.n // w
    values = {}
    for (a, b) in st.elems:
        val = RootOfUnity(G.e if G.e > 1 else 1, r * a if G.e > 1 else 0) * RootOfUnity(nw, j * (b // w))
        values[(a, b)] = val.as_cyc()
    return LinearChar(st, ("stab", w, r, j), values)


def _induced_values(G, st, lam, classes, M) -> list[CycNum]:
    reps = st.coset_reps()
    uset = st._elem_set()
    out = []
    for cl in classes:
        g = cl[0]
        acc = CycNum.zero(1)
        for x in reps:
            u = G.mul(G.mul(G.inv(x), g), x)
            if u in uset:
                acc = acc + lam.value(u)
        out.append(acc.lift_to(M))
    return out


# ---------------------------------------------------------------------------
# class-function machinery


def induce_class_function(sub: Subgroup, phi: dict) -> dict:
    """Induce a class function on a subgroup to the parent, by the averaging formula."""
    G = sub.parent
    uset = sub._elem_set()
    out = {}
    for g in G.elements():
        acc = CycNum.zero(1)
        for x in G.elements():
            u = G.mul(G.mul(G.inv(x), g), x)
            if u in uset:
                acc = acc + phi[u]
        out[g] = acc / sub.order
    return out


def induce(sub: Subgroup, lam: LinearChar) -> VirtualChar:
    """ind_U^G of a linear character, expressed in the irreducible basis."""
    if lam.subgroup.elems != sub.elems:
        raise ValueError("character does not live on the given subgroup")
    cf = induce_class_function(sub, lam.values)
    return class_function_to_virtual(sub.parent, cf)


def restrict(chi: VirtualChar, sub: Subgroup) -> dict:
    """res_U of a virtual character, as a value dictionary on the subgroup."""
    return {g: chi.value(g) for g in sub.elems}


def tensor(a: VirtualChar, b: VirtualChar) -> VirtualChar:
    if a.group is not b.group:
        raise ValueError("different groups")
    G = a.group
    cf = {g: a.value(g) * b.value(g) for g in G.elements()}
    return class_function_to_virtual(G, cf)


def inner_product_on(elems, phi: dict, psi: dict) -> Fraction:
    """<phi, psi> averaged over the given element list; must come out rational."""
    acc = CycNum.zero(1)
    for g in elems:
        acc = acc + phi[g] * psi[g].conjugate()
    if not acc.is_rational():
        raise AssertionError("inner product came out irrational")
    return acc.as_rational() / len(elems)


def inner_product(G: MetacyclicGroup, phi: dict, psi: dict) -> Fraction:
    """<phi, psi> over G; exact, and the result must be rational."""
    return inner_product_on(G.elements(), phi, psi)


def class_function_to_virtual(G: MetacyclicGroup, cf: dict) -> VirtualChar:
    """Express an exact class function in the irreducible basis (must be integral)."""
    table = irr_table(G)
    coeffs = []
    for chi in table:
        val = inner_product(G, cf, {g: chi.value(g) for g in G.elements()})
        if val.denominator != 1:
            raise ValueError("class function is not a virtual character")
        coeffs.append(int(val))
    vc = VirtualChar(G, tuple(coeffs))
    # integrality does not by itself guarantee equality; verify one value
    for g in G.elements():
        if not (vc.value(g) == cf[g]):
            raise ValueError("class function is not a virtual character (value mismatch)")
    return vc


def ind_res_tensor(sub: Subgroup, lam: LinearChar, chi: VirtualChar):
    """Bundle: (ind_U lam, res_U chi, ind_U(lam) tensor chi) in the irreducible basis."""
    ind = induce(sub, lam)
    res = restrict(chi, sub)
    return ind, res, tensor(ind, chi)


# ---------------------------------------------------------------------------
# degree-zero decompositions


@dataclass(frozen=True, eq=False)
class Deg0Decomp:
    """Sum_U z_U ind_U(lam_U - 1_U) = target, as a list of (U, lam_U, z_U)."""

    group: MetacyclicGroup
    target: VirtualChar
    terms: tuple  # of (Subgroup, LinearChar, int)

    def recompose(self) -> VirtualChar:
        acc = VirtualChar.zero(self.group)
        for sub, lam, z in self.terms:
            acc = acc + z * (induce(sub, lam) - induce(sub, sub.trivial_char()))
        return acc

    def verify(self) -> bool:
        return self.recompose() == self.target

    def __repr__(self):
        body = ", ".join(f"({s.kind}{s.data}, {l.key}, {z})" for s, l, z in self.terms)
        return f"Deg0Decomp[{body}]"


def _solver_generators(G: MetacyclicGroup):
    gens = []
    for sub in G.solver_subgroups():
        chars = sub.linear_chars()
        triv = chars[0]
        if not triv.is_trivial():
            raise AssertionError("first subgroup character is not trivial")
        ind1 = induce(sub, triv)
        for lam in chars[1:]:
            gens.append((sub, lam, induce(sub, lam) - ind1))
    return gens


def _l1(v: list[int]) -> int:
    return sum(abs(x) for x in v)


def _reduce_solution(z: list[int], kernel: list[list[int]]) -> list[int]:
    """Deterministic L1 reduction over the solution coset z + lattice(kernel)."""
    if not kernel:
        return z
    z = z[:]
    improved = True
    while improved:
        improved = False
        # greedy line search along each kernel vector
        for kv in kernel:
            best_c, best_key = 0, (_l1(z), tuple(z))
            bound = max(2, 2 * max(abs(x) for x in z) // max(1, min(abs(x) for x in kv if x)) + 2)
            for c in range(-bound, bound + 1):
                cand = [a - c * b for a, b in zip(z, kv)]
                key = (_l1(cand), tuple(cand))
                if key < best_key:
                    best_key, best_c = key, c
            if best_c:
                z = [a - best_c * b for a, b in zip(z, kv)]
                improved = True
        # exhaustive unit-box descent when the kernel is small
        if len(kernel) <= 8:
            cur_key = (_l1(z), tuple(z))
            best = None
            for combo in product((-1, 0, 1), repeat=len(kernel)):
                if not any(combo):
                    continue
                cand = z[:]
                for c, kv in zip(combo, kernel):
                    if c:
                        cand = [a - c * b for a, b in zip(cand, kv)]
                key = (_l1(cand), tuple(cand))
                if key < cur_key and (best is None or key < best[0]):
                    best = (key, cand)
            if best is not None:
                z = best[1]
                improved = True
    return z


def deg0_decompose(chi0: VirtualChar, order: list[int] | None = None) -> Deg0Decomp:
    """Decompose a degree-0 virtual character over the ind_U(lam - 1) family.

    ``order`` optionally permutes the generator family before solving, to
    exercise the non-uniqueness of decompositions; the canonical ordering is
    used when omitted.
    """
    if chi0.degree() != 0:
        raise ValueError("input must have degree 0")
    G = chi0.group
    gens = _solver_generators(G)
    if order is not None:
        if sorted(order) != list(range(len(gens))):
            raise ValueError("order must be a permutation of the generator indices")
        gens = [gens[i] for i in order]
    nirr = len(irr_table(G))
    A = [[gens[k][2].coeffs[i] for k in range(len(gens))] for i in range(nirr)]
    z0, kernel = solve_integer_system(A, list(chi0.coeffs))
    z = _reduce_solution(z0, kernel)
    terms = tuple((sub, lam, c) for (sub, lam, _), c in zip(gens, z) if c)
    out = Deg0Decomp(G, chi0, terms)
    if not out.verify():
        raise AssertionError("decomposition failed to recompose")
    return out


# ---------------------------------------------------------------------------
# export


def character_table_csv(G: MetacyclicGroup) -> str:
    """Character table as CSV: rows = irreducibles, columns = conjugacy classes."""
    table = irr_table(G)
    classes = G.conj_classes()
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["char"] + [f"t^{cl[0][0]}*s^{cl[0][1]}" for cl in classes])
    writer.writerow(["class_size"] + [str(len(cl)) for cl in classes])
    for chi in table:
        row = [f"deg{chi.degree}_r{chi.r}_j{chi.j}"]
        for v in chi.class_values:
            row.append(str(v.to_json()))
        writer.writerow(row)
    return buf.getvalue()
