"""Group-ring reduced norms, determinant identities, and the tame correction element.

Everything lives in the group algebra of one metacyclic layer group.  The
reduced norm of an element is the vector of determinants of its images under
the monomial irreducible representations; for a single group element the
determinant at chi pairs with a Frobenius-position exponent k * chi(1), and
det_identity_check certifies that pairing two independent ways (a dense
determinant against the monomial shortcut, and the twist action of the
characters of the Frobenius quotient, which pins the exponent).

The correction element of a tame layer divides two star-regularized central
values, numerator (1 - sigma/q) e_I and denominator (1 - sigma^-1) e_I where
e_I averages the inertia subgroup, and certifies that
(1 - q sigma^-1) e_I + (1 - e_I) is a unit of Z/p^N[G] by constructing its
inverse as a geometric series and verifying the product exactly.  The star
rule replaces vanishing components by 1 so the regularized vectors are
invertible componentwise.

Scalars are exact throughout: CycNum coefficients for character-level work,
PadicInt coefficients for the mod-p^N inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .cyclotomic import CycNum, RootOfUnity
from .groups import Elem, IrrChar, MetacyclicGroup, Subgroup, _perm_sign, irr_table
from .localfields import TameExtDesc
from .padic import PadicInt

__all__ = [
    "GroupRingElem",
    "IdempotentData",
    "StarValue",
    "CorrectionElement",
    "nrd",
    "det_identity_check",
    "star_value",
    "inertia_idempotent",
    "correction_element",
    "layer_quotient",
]


class GroupRingElem:
    """Finitely supported element of a group algebra with exact scalars.

    Coefficients are CycNum for character-level computations or PadicInt for
    mod-p^N work; the two kinds never mix inside one element.  Zero
    coefficients are dropped on construction, so the support is canonical and
    equality is plain dict comparison.
    """

    __slots__ = ("group", "coeffs")

    def __init__(self, group: MetacyclicGroup, coeffs: dict):
        cleaned = {}
        for g, c in coeffs.items():
            a, b = g
            if not (0 <= a < group.e and 0 <= b < group.n):
                raise ValueError(f"{g} is not an element of {group}")
            if not c.is_zero():
                cleaned[g] = c
        self.group = group
        self.coeffs = cleaned

    @classmethod
    def zero(cls, group: MetacyclicGroup) -> "GroupRingElem":
        return cls(group, {})

    @classmethod
    def one(cls, group: MetacyclicGroup) -> "GroupRingElem":
        return cls.from_element(group, group.identity)

    @classmethod
    def from_element(cls, group: MetacyclicGroup, g: Elem, coeff=None) -> "GroupRingElem":
        return cls(group, {g: CycNum.one(1) if coeff is None else coeff})

    def _same_algebra(self, other: "GroupRingElem") -> None:
        a, b = self.group, other.group
        if a is not b and (a.e, a.n, a.mult) != (b.e, b.n, b.mult):
            raise ValueError("elements of different group algebras")

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        self._same_algebra(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out[g] + c if g in out else c
        return GroupRingElem(self.group, out)

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem(self.group, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GroupRingElem):
            self._same_algebra(other)
            G = self.group
            out: dict = {}
            for g, c in self.coeffs.items():
                for h, d in other.coeffs.items():
                    k = G.mul(g, h)
                    cd = c * d
                    out[k] = out[k] + cd if k in out else cd
            return GroupRingElem(G, out)
        return GroupRingElem(self.group, {g: c * other for g, c in self.coeffs.items()})

    def __rmul__(self, other):
        # scalars act the same from either side of the basis elements
        return self * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        a, b = self.group, other.group
        if (a.e, a.n, a.mult) != (b.e, b.n, b.mult):
            return False
        return self.coeffs == other.coeffs

    def coefficient(self, g: Elem, default=None):
        return self.coeffs.get(g, default)

    @property
    def support(self) -> tuple[Elem, ...]:
        return tuple(sorted(self.coeffs))

    def conjugate_by(self, h: Elem) -> "GroupRingElem":
        G = self.group
        return GroupRingElem(G, {G.conj(h, g): c for g, c in self.coeffs.items()})

    def is_central(self) -> bool:
        return all(self.conjugate_by(h) == self for h in self.group.elements())

    def __repr__(self):
        terms = ", ".join(f"{g}: {c!r}" for g, c in sorted(self.coeffs.items()))
        return f"GroupRingElem({self.group!r}, {{{terms}}})"


# ---------------------------------------------------------------------------
# reduced norms


def _det(mat: list[list[CycNum]]) -> CycNum:
    """Determinant over the cyclotomic field by Gaussian elimination."""
    n = len(mat)
    rows = [list(r) for r in mat]
    det = CycNum.one(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if piv is None:
            return CycNum.zero(1)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        pivot = rows[col][col]
        det = det * pivot
        inv = pivot.inverse()
        for r in range(col + 1, n):
            if rows[r][col].is_zero():
                continue
            factor = rows[r][col] * inv
            for cc in range(col, n):
                rows[r][cc] = rows[r][cc] - factor * rows[col][cc]
    return det


def _component_at(chi: IrrChar, x: GroupRingElem) -> CycNum:
    """Determinant of the image of x under the monomial representation of chi."""
    if chi.degree == 1:
        acc = CycNum.zero(1)
        for g, c in x.coeffs.items():
            acc = acc + c * chi.value(g)
        return acc
    w = chi.degree
    mat = [[CycNum.zero(1) for _ in range(w)] for _ in range(w)]
    for g, c in x.coeffs.items():
        perm, vals = chi.monomial_matrix(g)
        for i in range(w):
            mat[i][perm[i]] = mat[i][perm[i]] + c * vals[i]
    return _det(mat)


def nrd(x: GroupRingElem) -> tuple[CycNum, ...]:
    """Reduced norm of x: the per-irreducible determinant vector.

    The component at chi is the determinant of the image of x under the
    monomial representation inducing chi; for linear chi this collapses to
    the value chi(x).  Components follow the irr_table order of x.group.
    """
    for c in x.coeffs.values():
        if not isinstance(c, CycNum):
            raise TypeError("reduced norms need cyclotomic coefficients")
    return tuple(_component_at(chi, x) for chi in irr_table(x.group))


# ---------------------------------------------------------------------------
# the determinant identity for group elements


def _coset_entries(chi: IrrChar, g: Elem) -> tuple[tuple[int, ...], tuple[Elem, ...]]:
    """Row permutation and inducing-subgroup entries of chi's monomial matrix at g."""
    G = chi.group
    reps = chi.st.coset_reps()
    uset = chi.st._elem_set()
    perm = []
    entries = []
    for xi in reps:
        for jj, xj in enumerate(reps):
            u = G.mul(G.mul(G.inv(xi), g), xj)
            if u in uset:
                perm.append(jj)
                entries.append(u)
                break
    if len(perm) != len(reps):
        raise AssertionError("monomial row without entry")
    return tuple(perm), tuple(entries)


def det_identity_check(g: Elem, chi: IrrChar, k: int | None = None) -> bool:
    """Certify the determinant identity for the group element g at chi.

    The identity pairs the scalar det_chi(g) with the exponent k * chi(1),
    where k is the Frobenius position of g (its image in the quotient by the
    inertia generator t).  Two independent certificates must both hold:

    * the scalar from the monomial entries (sign times entry product) equals
      the chi-component of nrd(g) computed by dense elimination, and
    * for every character rho of the Frobenius quotient, the rho-twisted
      determinant sign * prod(lam(u) rho(u)) must equal
      det_chi(g) * rho(s)^(k*chi(1)).  Each rho(u) is rho(s) to the entry's
      position, so after the scalar is pinned the twist reduces to the exact
      root-of-unity comparison rho(s)^total == rho(s)^(k*chi(1)) with total
      the sum of the entry positions from the coset scan; quantifying over
      all rho pins the exponent modulo the quotient order.

    k defaults to the position read off g itself; a declared k that
    contradicts the element is rejected.
    """
    G = chi.group
    a, b = g
    g = ((a % G.e) if G.e > 1 else 0, b % G.n)
    if k is None:
        k = g[1]
    elif (k - g[1]) % G.n:
        raise ValueError("declared position does not match the element")
    perm, entries = _coset_entries(chi, g)
    scalar = CycNum.from_rational(Fraction(_perm_sign(perm)))
    for u in entries:
        scalar = scalar * chi.lam.value(u)
    dense = _component_at(chi, GroupRingElem.from_element(G, g))
    if scalar != dense:
        return False
    total = sum(u[1] for u in entries)
    m = k * chi.degree
    for j in range(G.n):
        if RootOfUnity(G.n, j * total) != RootOfUnity(G.n, j * m):
            return False
    return True


# ---------------------------------------------------------------------------
# star regularization


@dataclass(frozen=True, eq=False)
class StarValue:
    """Component vector over the irreducibles with zeros regularized to 1.

    components[i] is the value at irr_table(group)[i]; starred[i] records
    whether the raw value was zero and got replaced.  Every stored component
    is nonzero, hence invertible in the cyclotomic field.
    """

    group: MetacyclicGroup
    components: tuple
    starred: tuple

    def __post_init__(self):
        if len(self.components) != len(irr_table(self.group)):
            raise ValueError("component count must match the character table")
        if len(self.starred) != len(self.components):
            raise ValueError("flag count must match the component count")
        if any(c.is_zero() for c in self.components):
            raise ValueError("star components must be nonzero")

    def component(self, i: int) -> CycNum:
        return self.components[i]

    def divide(self, other: "StarValue") -> "StarValue":
        a, b = self.group, other.group
        if a is not b and (a.e, a.n, a.mult) != (b.e, b.n, b.mult):
            raise ValueError("star values over different groups")
        comps = tuple(x * y.inverse() for x, y in zip(self.components, other.components))
        flags = tuple(x or y for x, y in zip(self.starred, other.starred))
        return StarValue(self.group, comps, flags)


def star_value(group: MetacyclicGroup, raw) -> StarValue:
    """Apply the star rule to a raw component vector: zero components become 1."""
    comps = []
    flags = []
    for c in raw:
        if c.is_zero():
            comps.append(CycNum.one(1))
            flags.append(True)
        else:
            comps.append(c)
            flags.append(False)
    return StarValue(group, tuple(comps), tuple(flags))


# ---------------------------------------------------------------------------
# the tame correction element


def _prime_power_base(q: int) -> tuple[int, int]:
    """The pair (p, k) with q = p^k for a prime p, or ValueError."""
    if q < 2:
        raise ValueError("q must be a prime power")
    p = next((d for d in range(2, isqrt(q) + 1) if q % d == 0), q)
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError("q must be a prime power")
    return p, k


@dataclass(frozen=True, eq=False)
class IdempotentData:
    """Inertia idempotent of a tame layer with its Frobenius data.

    element is e_I = |I|^-1 times the sum over the inertia subgroup I = <t>,
    a central idempotent whose coefficients are p-integral exactly because
    the layer is tame; sigma is the pinned Frobenius lift s and q the residue
    cardinality of the base, so conjugation by sigma raises inertia elements
    to the q-th power.
    """

    group: MetacyclicGroup
    inertia: Subgroup
    element: GroupRingElem
    sigma: Elem
    q: int


def inertia_idempotent(layer: MetacyclicGroup, q: int) -> IdempotentData:
    """Build the inertia idempotent data of a tame layer over a q-element residue field."""
    p, _ = _prime_power_base(q)
    if gcd(layer.e, p) != 1:
        raise ValueError("inertia order must be prime to p for a tame layer")
    if layer.e > 1 and layer.mult != q % layer.e:
        raise ValueError("layer multiplier must match the base residue size")
    inertia = layer.subgroup_t_over(layer.n)
    share = CycNum.from_rational(Fraction(1, inertia.order))
    elem = GroupRingElem(layer, {g: share for g in inertia.elems})
    if elem * elem != elem:
        raise AssertionError("inertia average is not idempotent")
    if not elem.is_central():
        raise AssertionError("inertia average is not central")
    if any(gcd(c.den, p) != 1 for c in elem.coeffs.values()):
        raise AssertionError("tame idempotent must be p-integral")
    return IdempotentData(layer, inertia, elem, (0, 1 % layer.n), q)


def _central_components(x: GroupRingElem) -> tuple[CycNum, ...]:
    """Component vector of a central element: the scalar of each irreducible block."""
    comps = []
    for chi in irr_table(x.group):
        acc = CycNum.zero(1)
        for g, c in x.coeffs.items():
            acc = acc + c * chi.value(g)
        comps.append(acc * Fraction(1, chi.degree))
    return tuple(comps)


@dataclass(frozen=True, eq=False)
class CorrectionElement:
    """Star-regularized correction data of one tame layer.

    star is the componentwise quotient star_numerator / star_denominator of
    the regularized central values of (1 - sigma/q) e_I and (1 - sigma^-1) e_I;
    invertible reports the explicit-inverse verification of
    (1 - q sigma^-1) e_I + (1 - e_I) modulo p^precision, and inverse keeps the
    constructed inverse for inspection.
    """

    data: IdempotentData
    star_numerator: StarValue
    star_denominator: StarValue
    star: StarValue
    invertible: bool
    inverse: GroupRingElem
    precision: int


def correction_element(layer: MetacyclicGroup, q: int, N: int) -> CorrectionElement:
    """Correction element of a tame layer at working precision p^N.

    Computes the star values of (1 - sigma q^-1) e_I and (1 - sigma^-1) e_I
    (zero components become 1) and their componentwise quotient, then
    certifies that (1 - q sigma^-1) e_I + (1 - e_I) is a unit of Z/p^N[G]:
    that element equals 1 - q sigma^-1 e_I, whose inverse is the geometric
    series in q sigma^-1 e_I (finite mod p^N since p divides q), and the
    product with the constructed inverse is checked exactly.
    """
    if N < 1:
        raise ValueError("precision must be positive")
    data = inertia_idempotent(layer, q)
    p, _ = _prime_power_base(q)
    G = layer
    sig = GroupRingElem.from_element(G, data.sigma)
    sig_inv = GroupRingElem.from_element(G, G.inv(data.sigma))
    num = data.element - sig * data.element * Fraction(1, q)
    den = data.element - sig_inv * data.element
    for z in (num, den):
        if not z.is_central():
            raise AssertionError("correction ingredients must be central")
    star_num = star_value(G, _central_components(num))
    star_den = star_value(G, _central_components(den))
    ratio = star_num.divide(star_den)

    one = GroupRingElem(G, {G.identity: PadicInt.one(p, N)})
    e_share = PadicInt(p, N, layer.e).inverse() * q
    y = GroupRingElem(
        G, {G.mul(G.inv(data.sigma), (a, 0)): e_share for a in range(G.e)}
    )
    x = one - y
    inv = one
    power = y
    zero = GroupRingElem.zero(G)
    while power != zero:
        inv = inv + power
        power = power * y
    invertible = x * inv == one and inv * x == one
    return CorrectionElement(data, star_num, star_den, ratio, invertible, inv, N)


def layer_quotient(E: TameExtDesc, depth: int) -> MetacyclicGroup:
    """Galois group of the depth-n tower layer over a tame extension.

    The s-order stretches by p^depth along the unramified tower while the
    conjugation action on inertia keeps the multiplier of the tame layer.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    G = E.group
    n = G.n * E.base.p**depth
    return MetacyclicGroup.with_multiplier(G.e, G.mult if G.e > 1 else 0, n)
