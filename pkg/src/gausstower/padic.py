"""Truncated p-adic integers of unramified extensions, and their residue fields.

The degree-f unramified extension of Z_p is modeled as Z_p[y]/(h), where h is
the deterministic monic lift (coefficients in {0, .., p-1}) of the degree-f
irreducible polynomial over F_p whose non-leading coefficient vector has the
smallest integer encoding sum(a_i * p**i).  The same minimal-encoding rule pins
every other deterministic choice made here: the "least" element of a residue
field, subfield embeddings (least root of the subfield polynomial), and the
members of the norm-compatible generator system.  Values are therefore
reproducible across runs and machines.

Precision discipline: every p-adic value carries its own precision N and means
"known modulo p**N".  Binary operations truncate to the smaller operand
precision.  Equality is strict (same modulus and representative); use
``agrees`` to compare at the common precision.  p = 2 is rejected throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .cyclotomic import factorize

__all__ = [
    "PadicInt",
    "UnramInt",
    "ResidueElem",
    "min_poly",
    "teichmuller",
    "trace_norm",
    "padic_log",
    "residue_dlog",
    "norm_generator",
    "log_precision",
    "subfield_embed_res",
    "subfield_embed",
    "relative_trace",
    "relative_norm",
    "ilog",
]


# ---------------------------------------------------------------------------
# small integer helpers


def ilog(p: int, n: int) -> int:
    """Floor of log base p of n, for n >= 1."""
    if n < 1:
        raise ValueError("ilog needs n >= 1")
    k = 0
    q = n // p
    while q:
        k += 1
        q //= p
    return k


@lru_cache(maxsize=None)
def _check_p(p: int) -> int:
    if p < 3 or p % 2 == 0 or factorize(p) != {p: 1}:
        raise ValueError(f"p must be an odd prime, got {p}")
    return p


@lru_cache(maxsize=None)
def _pN(p: int, N: int) -> int:
    if N < 1:
        raise ValueError("precision must be >= 1")
    return p ** N


def crt_pair(a: int, m: int, b: int, n: int) -> tuple[int, int]:
    """Solve x = a mod m, x = b mod n; return (x, lcm(m, n)).

    Raises ValueError when the congruences are inconsistent.
    """
    g = gcd(m, n)
    if (b - a) % g:
        raise ValueError("inconsistent congruences")
    lcm = m // g * n
    t = ((b - a) // g * pow(m // g, -1, n // g)) % (n // g)
    return (a + m * t) % lcm, lcm


# ---------------------------------------------------------------------------
# polynomial utilities over F_p (dense lists, index = degree)


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _pdivmod(prod, mod, p)


def _pdivmod(a: list[int], mod: list[int], p: int) -> list[int]:
    # remainder of a modulo the monic polynomial mod
    a = a[:]
    d = len(mod) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            for i in range(d):
                a[k - d + i] = (a[k - d + i] - c * mod[i]) % p
            a[k] = 0
    del a[d:]
    return _ptrim(a)


def _ppowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    cur = _pdivmod(base[:], mod, p)
    while e:
        if e & 1:
            result = _pmulmod(result, cur, mod, p)
        cur = _pmulmod(cur, cur, mod, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(a[:]), _ptrim(b[:])
    while b:
        inv = pow(b[-1], -1, p)
        bn = [(c * inv) % p for c in b]
        r = a[:]
        for k in range(len(r) - 1, len(bn) - 2, -1):
            c = r[k]
            if c:
                off = k - (len(bn) - 1)
                for i in range(len(bn) - 1):
                    r[off + i] = (r[off + i] - c * bn[i]) % p
                r[k] = 0
        a, b = b, _ptrim(r)
    return a


def _sub_x(poly: list[int], p: int) -> list[int]:
    # poly - x, trimmed
    out = poly[:]
    while len(out) < 2:
        out.append(0)
    out[1] = (out[1] - 1) % p
    return _ptrim(out)


def _ppowmod_np(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    """Same value as _ppowmod, with numpy convolutions; used at large degree.

    Coefficients stay below p, so int64 convolutions are exact.
    """
    d = len(mod) - 1
    # rows[j] = coefficients of y^(d+j) modulo mod
    rows = np.zeros((d - 1, d), dtype=np.int64)
    cur_row = np.array([(-c) % p for c in mod[:d]], dtype=np.int64)
    rows[0] = cur_row
    for j in range(1, d - 1):
        top = cur_row[d - 1]
        cur_row = np.concatenate(([0], cur_row[: d - 1]))
        if top:
            cur_row = (cur_row + top * rows[0]) % p
        rows[j] = cur_row

    def reduce_(v: np.ndarray) -> np.ndarray:
        if len(v) <= d:
            out = np.zeros(d, dtype=np.int64)
            out[: len(v)] = v
            return out
        return (v[:d] + v[d:] @ rows[: len(v) - d]) % p

    start = _pdivmod(base[:], mod, p) or [0]
    cur = reduce_(np.array(start, dtype=np.int64))
    result = np.zeros(d, dtype=np.int64)
    result[0] = 1
    while e:
        if e & 1:
            result = reduce_(np.convolve(result, cur) % p)
        cur = reduce_(np.convolve(cur, cur) % p)
        e >>= 1
    return _ptrim([int(v) for v in result])


def _is_irreducible(h: list[int], p: int) -> bool:
    f = len(h) - 1
    if f == 1:
        return True
    powmod = _ppowmod_np if f >= 32 else _ppowmod
    if f >= 32:
        # a root in F_p is a linear factor; scanning p points is far cheaper
        # than the p^f-power test that would reject such candidates anyway
        for c in range(p):
            acc = 0
            for coeff in reversed(h):
                acc = (acc * c + coeff) % p
            if acc == 0:
                return False
    if _sub_x(powmod([0, 1], p ** f, h, p), p):
        return False
    for ell in factorize(f):
        g = _pgcd(list(h), _sub_x(powmod([0, 1], p ** (f // ell), h, p), p), p)
        if len(g) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def min_poly(p: int, f: int) -> tuple[int, ...]:
    """Pinned monic irreducible of degree f over F_p, lifted to {0..p-1} coefficients.

    Minimal non-leading coefficient encoding sum(a_i * p**i); h = x for f = 1.
    Returned as a tuple of length f + 1 (constant term first, leading 1 last).
    """
    _check_p(p)
    if f < 1:
        raise ValueError("degree must be >= 1")
    for enc in range(p ** f):
        coeffs = []
        n = enc
        for _ in range(f):
            coeffs.append(n % p)
            n //= p
        h = coeffs + [1]
        if _is_irreducible(h, p):
            return tuple(h)
    raise RuntimeError(f"no irreducible polynomial found for p={p}, f={f}")


# ---------------------------------------------------------------------------
# shared multiplication plan: Z/p^N [y] / (h), with N = 1 giving the residue field


@lru_cache(maxsize=None)
def _mul_plan(p: int, f: int, N: int):
    pN = _pN(p, N)
    bound = f * (pN - 1) ** 2
    bits = bound.bit_length() + 1
    mask = (1 << bits) - 1
    h = min_poly(p, f)
    # rows[j] = coefficients of y^(f+j) modulo h, reduced mod p^N
    rows = []
    cur = [(-h[i]) % pN for i in range(f)]
    rows.append(tuple(cur))
    for _ in range(f - 2):
        top = cur[f - 1]
        cur = [0] + cur[: f - 1]
        if top:
            cur = [(cur[i] + top * rows[0][i]) % pN for i in range(f)]
        rows.append(tuple(cur))
    return bits, mask, pN, tuple(rows)


def _mul_vec(p: int, f: int, N: int, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    bits, mask, pN, rows = _mul_plan(p, f, N)
    if f == 1:
        return ((a[0] * b[0]) % pN,)
    # Kronecker substitution: one big-integer multiply, then unpack
    av = 0
    for c in reversed(a):
        av = (av << bits) | c
    bv = 0
    for c in reversed(b):
        bv = (bv << bits) | c
    cv = av * bv
    conv = []
    for _ in range(2 * f - 1):
        conv.append(cv & mask)
        cv >>= bits
    out = list(conv[:f])
    for k in range(2 * f - 2, f - 1, -1):
        c = conv[k]
        if c:
            row = rows[k - f]
            for i in range(f):
                out[i] += c * row[i]
    return tuple(v % pN for v in out)


def _pow_vec(p: int, f: int, N: int, a: tuple[int, ...], e: int) -> tuple[int, ...]:
    result = tuple([1] + [0] * (f - 1))
    cur = a
    while e:
        if e & 1:
            result = _mul_vec(p, f, N, result, cur)
        cur = _mul_vec(p, f, N, cur, cur)
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# residue fields F_{p^f} = F_p[y]/(h mod p)


@dataclass(frozen=True)
class ResidueElem:
    """Element of F_{p^f} as a coefficient vector over F_p in the power basis of y."""

    p: int
    f: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        _check_p(self.p)
        if self.f < 1:
            raise ValueError("degree must be >= 1")
        c = tuple(int(v) % self.p for v in self.coeffs)
        if len(c) != self.f:
            if len(c) > self.f:
                raise ValueError("coefficient vector too long")
            c = c + (0,) * (self.f - len(c))
        object.__setattr__(self, "coeffs", c)

    # -- constructors

    @classmethod
    def zero(cls, p: int, f: int) -> "ResidueElem":
        return cls(p, f, (0,) * f)

    @classmethod
    def one(cls, p: int, f: int) -> "ResidueElem":
        return cls(p, f, (1,) + (0,) * (f - 1))

    @classmethod
    def from_int(cls, p: int, f: int, n: int) -> "ResidueElem":
        return cls(p, f, (n % p,) + (0,) * (f - 1))

    @classmethod
    def gen(cls, p: int, f: int) -> "ResidueElem":
        """The class of y (equal to 0 when f = 1, since the pinned h is x)."""
        if f == 1:
            return cls.zero(p, 1)
        return cls(p, f, (0, 1) + (0,) * (f - 2))

    @classmethod
    def from_encoding(cls, p: int, f: int, n: int) -> "ResidueElem":
        digits = []
        for _ in range(f):
            digits.append(n % p)
            n //= p
        if n:
            raise ValueError("encoding out of range")
        return cls(p, f, tuple(digits))

    # -- basic predicates and views

    @property
    def encoding(self) -> int:
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.p + c
        return n

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    @property
    def field_order(self) -> int:
        return self.p ** self.f

    # -- arithmetic

    def _match(self, other: "ResidueElem") -> None:
        if self.p != other.p or self.f != other.f:
            raise ValueError("residue elements lie in different fields")

    def __add__(self, other):
        if isinstance(other, int):
            other = ResidueElem.from_int(self.p, self.f, other)
        if not isinstance(other, ResidueElem):
            return NotImplemented
        self._match(other)
        return ResidueElem(self.p, self.f, tuple((a + b) % self.p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return ResidueElem(self.p, self.f, tuple(-a % self.p for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = ResidueElem.from_int(self.p, self.f, other)
        if not isinstance(other, ResidueElem):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = ResidueElem.from_int(self.p, self.f, other)
        if not isinstance(other, ResidueElem):
            return NotImplemented
        self._match(other)
        return ResidueElem(self.p, self.f, _mul_vec(self.p, self.f, 1, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ResidueElem(self.p, self.f, _pow_vec(self.p, self.f, 1, self.coeffs, e))

    def inverse(self) -> "ResidueElem":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.field_order - 2)

    def frobenius(self, k: int = 1) -> "ResidueElem":
        return self ** (self.p ** (k % self.f))

    def trace(self) -> int:
        """Absolute trace to F_p, as an integer in {0..p-1}."""
        row = _res_trace_row(self.p, self.f)
        return sum(c * t for c, t in zip(self.coeffs, row)) % self.p

    def norm(self) -> int:
        """Absolute norm to F_p, as an integer in {0..p-1}."""
        return (self ** ((self.field_order - 1) // (self.p - 1))).coeffs[0]

    def trace_to(self, d: int) -> "ResidueElem":
        """Relative trace to the degree-d subfield, as an element of F_{p^f}."""
        if self.f % d:
            raise ValueError("not a subfield degree")
        acc = self
        cur = self
        for _ in range(self.f // d - 1):
            cur = cur.frobenius(d)
            acc = acc + cur
        return acc

    def norm_to(self, d: int) -> "ResidueElem":
        """Relative norm to the degree-d subfield, as an element of F_{p^f}."""
        if self.f % d:
            raise ValueError("not a subfield degree")
        return self ** ((self.field_order - 1) // (self.p ** d - 1)) if not self.is_zero() else self

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise ValueError("zero has no multiplicative order")
        n = self.field_order - 1
        for ell in factorize(n):
            while n % ell == 0 and (self ** (n // ell)).is_one():
                n //= ell
        return n

    def __repr__(self):
        return f"Res(p={self.p},f={self.f};{list(self.coeffs)})"


@lru_cache(maxsize=None)
def _res_trace_row(p: int, f: int) -> tuple[int, ...]:
    conj = [ResidueElem.gen(p, f) ** (p ** j) for j in range(f)]
    row = []
    for i in range(f):
        s = ResidueElem.zero(p, f)
        for c in conj:
            s = s + c ** i
        if any(v for v in s.coeffs[1:]):
            raise AssertionError("trace of a basis power fell outside the prime field")
        row.append(s.coeffs[0])
    return tuple(row)


def residue_dlog(base: ResidueElem, x: ResidueElem, order: int) -> int:
    """Discrete log of x in the cyclic group generated by base (given its order)."""
    if x.is_zero():
        raise ValueError("zero is not in the multiplicative group")
    m = isqrt(order) + 1
    table: dict[ResidueElem, int] = {}
    cur = ResidueElem.one(base.p, base.f)
    for j in range(m):
        table.setdefault(cur, j)
        cur = cur * base
    giant = base ** (order - (m % order))
    g = x
    for i in range(m + 1):
        j = table.get(g)
        if j is not None:
            return (i * m + j) % order
        g = g * giant
    raise ValueError("element not in the subgroup generated by base")


# -- subfield embeddings at residue level


@lru_cache(maxsize=None)
def _res_frob_matrix(p: int, f: int) -> tuple[tuple[int, ...], ...]:
    # column i = coefficients of (y^i)^p; returned row-major: rows indexed by output coeff
    w = ResidueElem.gen(p, f) ** p
    cols = []
    cur = ResidueElem.one(p, f)
    for _ in range(f):
        cols.append(cur.coeffs)
        cur = cur * w
    return tuple(tuple(cols[j][i] for j in range(f)) for i in range(f))


def _mat_mul_fp(A, B, p):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) % p for j in range(n)) for i in range(n))


def _kernel_basis_fp(A, p):
    # kernel of the square matrix A over F_p via column-style Gaussian elimination
    n = len(A)
    rows = [list(r) for r in A]
    pivot_row_of_col = [-1] * n
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                fac = rows[i][c]
                rows[i] = [(rows[i][j] - fac * rows[r][j]) % p for j in range(n)]
        pivot_row_of_col[c] = r
        r += 1
    basis = []
    for c in range(n):
        if pivot_row_of_col[c] != -1:
            continue
        vec = [0] * n
        vec[c] = 1
        for c2 in range(n):
            pr = pivot_row_of_col[c2]
            if pr != -1:
                vec[c2] = (-rows[pr][c]) % p
        basis.append(tuple(vec))
    return basis


@lru_cache(maxsize=None)
def _subfield_elements(p: int, d: int, f: int) -> tuple[ResidueElem, ...]:
    # the copy of F_{p^d} inside F_{p^f}: fixed points of Frobenius^d
    if f % d:
        raise ValueError("not a subfield degree")
    M = _res_frob_matrix(p, f)
    Md = M
    for _ in range(d - 1):
        Md = _mat_mul_fp(Md, M, p)
    A = tuple(tuple((Md[i][j] - (1 if i == j else 0)) % p for j in range(f)) for i in range(f))
    basis = _kernel_basis_fp(A, p)
    if len(basis) != d:
        raise AssertionError("subfield dimension mismatch")
    out = []
    for combo in itertools.product(range(p), repeat=d):
        vec = [0] * f
        for coef, bas in zip(combo, basis):
            if coef:
                for i in range(f):
                    vec[i] = (vec[i] + coef * bas[i]) % p
        out.append(ResidueElem(p, f, tuple(vec)))
    return tuple(out)


@lru_cache(maxsize=None)
def _embed_root_res(p: int, d: int, f: int) -> ResidueElem:
    """Least root in F_{p^f} of the degree-d pinned polynomial; the class of y_d itself when d = f."""
    if d == f:
        return ResidueElem.gen(p, f)
    hd = min_poly(p, d)
    roots = []
    for x in _subfield_elements(p, d, f):
        acc = ResidueElem.zero(p, f)
        for c in reversed(hd):
            acc = acc * x + c
        if acc.is_zero():
            roots.append(x)
    if len(roots) != d:
        raise AssertionError("wrong number of subfield roots")
    return min(roots, key=lambda r: r.encoding)


def subfield_embed_res(x: ResidueElem, f: int) -> ResidueElem:
    """Pinned embedding F_{p^d} -> F_{p^f} (d | f), sending y_d to the least root of h_d."""
    d = x.f
    if f % d:
        raise ValueError("not a subfield degree")
    r = _embed_root_res(x.p, d, f)
    acc = ResidueElem.zero(x.p, f)
    for c in reversed(x.coeffs):
        acc = acc * r + c
    return acc


# -- norm-compatible generator system


@lru_cache(maxsize=None)
def _min_primitive(p: int, w: int) -> ResidueElem:
    q = p ** w
    fac = list(factorize(q - 1))
    for enc in range(1, q):
        x = ResidueElem.from_encoding(p, w, enc)
        if all(not (x ** ((q - 1) // ell)).is_one() for ell in fac):
            return x
    raise RuntimeError("no primitive element found")


@lru_cache(maxsize=None)
def norm_generator(p: int, w: int) -> ResidueElem:
    """Member of the pinned norm-compatible system of primitive elements.

    g_w is the least-encoding primitive element of F_{p^w} whose relative norm
    to every proper subfield F_{p^d} (d | w) equals the embedded g_d.  Built
    recursively; the congruence system on discrete logs is consistent because
    relative norms compose along the divisor lattice.
    """
    _check_p(p)
    q = p ** w
    ghat = _min_primitive(p, w)
    if w == 1:
        return ghat
    s0, mod = 0, 1
    for d in sorted(n for n in range(1, w) if w % n == 0):
        target = subfield_embed_res(norm_generator(p, d), w)
        t = residue_dlog(ghat, target, q - 1)
        M = (q - 1) // (p ** d - 1)
        if t % M:
            raise AssertionError("norm target outside the subfield")
        s0, mod = crt_pair(s0, mod, t // M, p ** d - 1)
    best = None
    for s in range(s0 % mod, q - 1, mod):
        if gcd(s, q - 1) != 1:
            continue
        x = ghat ** s
        if best is None or x.encoding < best.encoding:
            best = x
    if best is None:
        raise AssertionError("empty primitive fiber")
    return best


# ---------------------------------------------------------------------------
# PadicInt: Z/p^N with valuation bookkeeping


@dataclass(frozen=True)
class PadicInt:
    """Integer of Z_p known modulo p**precision."""

    p: int
    precision: int
    value: int

    def __post_init__(self):
        _check_p(self.p)
        m = _pN(self.p, self.precision)
        object.__setattr__(self, "value", int(self.value) % m)

    @property
    def modulus(self) -> int:
        return _pN(self.p, self.precision)

    @classmethod
    def zero(cls, p: int, N: int) -> "PadicInt":
        return cls(p, N, 0)

    @classmethod
    def one(cls, p: int, N: int) -> "PadicInt":
        return cls(p, N, 1)

    def is_zero(self) -> bool:
        return self.value == 0

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def valuation(self) -> int:
        """v_p of the value; defined only when nonzero at this precision."""
        if self.value == 0:
            raise ValueError("valuation undefined: zero at this precision")
        v = 0
        x = self.value
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def at_precision(self, k: int) -> "PadicInt":
        if k > self.precision:
            raise ValueError("cannot raise precision")
        return PadicInt(self.p, k, self.value)

    def agrees(self, other: "PadicInt") -> bool:
        if self.p != other.p:
            return False
        k = min(self.precision, other.precision)
        m = _pN(self.p, k)
        return self.value % m == other.value % m

    def _coerce(self, other):
        if isinstance(other, int):
            return PadicInt(self.p, self.precision, other)
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        N = min(self.precision, o.precision)
        return PadicInt(self.p, N, self.value + o.value)

    __radd__ = __add__

    def __neg__(self):
        return PadicInt(self.p, self.precision, -self.value)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        N = min(self.precision, o.precision)
        return PadicInt(self.p, N, self.value * o.value)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PadicInt(self.p, self.precision, pow(self.value, e, self.modulus))

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise ZeroDivisionError("not a unit")
        return PadicInt(self.p, self.precision, pow(self.value, -1, self.modulus))

    def divexact_p(self, k: int) -> "PadicInt":
        """Divide by p**k exactly; precision drops by k."""
        if k == 0:
            return self
        pk = self.p ** k
        if self.value % pk:
            raise ValueError("not divisible by p^k")
        return PadicInt(self.p, self.precision - k, self.value // pk)

    def residue(self) -> int:
        return self.value % self.p

    def __repr__(self):
        return f"PadicInt({self.value} mod {self.p}^{self.precision})"


# ---------------------------------------------------------------------------
# UnramInt: Z_{p^f} = Z_p[y]/(h) truncated at p^N


@dataclass(frozen=True)
class UnramInt:
    """Element of the degree-f unramified extension of Z_p, modulo p**precision.

    Stored as the tuple of power-basis coefficient representatives in
    [0, p**precision); the ``coeffs`` property views them as PadicInt.
    """

    p: int
    f: int
    precision: int
    coeff_ints: tuple[int, ...]

    def __post_init__(self):
        _check_p(self.p)
        if self.f < 1:
            raise ValueError("degree must be >= 1")
        m = _pN(self.p, self.precision)
        c = tuple(int(v) % m for v in self.coeff_ints)
        if len(c) > self.f:
            raise ValueError("coefficient vector too long")
        if len(c) < self.f:
            c = c + (0,) * (self.f - len(c))
        object.__setattr__(self, "coeff_ints", c)

    # -- constructors and views

    @classmethod
    def zero(cls, p: int, f: int, N: int) -> "UnramInt":
        return cls(p, f, N, (0,) * f)

    @classmethod
    def one(cls, p: int, f: int, N: int) -> "UnramInt":
        return cls(p, f, N, (1,) + (0,) * (f - 1))

    @classmethod
    def from_int(cls, p: int, f: int, N: int, n: int) -> "UnramInt":
        return cls(p, f, N, (n,) + (0,) * (f - 1))

    @classmethod
    def gen(cls, p: int, f: int, N: int) -> "UnramInt":
        if f == 1:
            return cls.zero(p, 1, N)
        return cls(p, f, N, (0, 1) + (0,) * (f - 2))

    @classmethod
    def from_residue(cls, x: ResidueElem, N: int) -> "UnramInt":
        return cls(x.p, x.f, N, x.coeffs)

    @classmethod
    def from_padic(cls, x: PadicInt, f: int) -> "UnramInt":
        return cls(x.p, f, x.precision, (x.value,) + (0,) * (f - 1))

    @property
    def coeffs(self) -> tuple[PadicInt, ...]:
        return tuple(PadicInt(self.p, self.precision, c) for c in self.coeff_ints)

    @property
    def modulus(self) -> int:
        return _pN(self.p, self.precision)

    def reduce(self) -> ResidueElem:
        return ResidueElem(self.p, self.f, tuple(c % self.p for c in self.coeff_ints))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeff_ints)

    def is_one(self) -> bool:
        return self.coeff_ints[0] == 1 and all(c == 0 for c in self.coeff_ints[1:])

    def is_unit(self) -> bool:
        return not self.reduce().is_zero()

    def valuation(self) -> int:
        """min of the coefficient valuations (the unramified valuation of K)."""
        if self.is_zero():
            raise ValueError("valuation undefined: zero at this precision")
        v = self.precision
        for c in self.coeff_ints:
            if c:
                w = 0
                while c % self.p == 0:
                    c //= self.p
                    w += 1
                v = min(v, w)
        return v

    def at_precision(self, k: int) -> "UnramInt":
        if k > self.precision:
            raise ValueError("cannot raise precision")
        return UnramInt(self.p, self.f, k, self.coeff_ints)

    def agrees(self, other: "UnramInt") -> bool:
        if self.p != other.p or self.f != other.f:
            return False
        k = min(self.precision, other.precision)
        m = _pN(self.p, k)
        return all(a % m == b % m for a, b in zip(self.coeff_ints, other.coeff_ints))

    def divexact_p(self, k: int) -> "UnramInt":
        if k == 0:
            return self
        pk = self.p ** k
        if any(c % pk for c in self.coeff_ints):
            raise ValueError("not divisible by p^k")
        return UnramInt(self.p, self.f, self.precision - k, tuple(c // pk for c in self.coeff_ints))

    # -- arithmetic

    def _coerce(self, other):
        if isinstance(other, int):
            return UnramInt.from_int(self.p, self.f, self.precision, other)
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return UnramInt.from_padic(other, self.f)
        if isinstance(other, UnramInt):
            if other.p != self.p or other.f != self.f:
                raise ValueError("mixed unramified fields")
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        N = min(self.precision, o.precision)
        return UnramInt(self.p, self.f, N, tuple(a + b for a, b in zip(self.coeff_ints, o.coeff_ints)))

    __radd__ = __add__

    def __neg__(self):
        return UnramInt(self.p, self.f, self.precision, tuple(-c for c in self.coeff_ints))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        N = min(self.precision, o.precision)
        a = self.at_precision(N) if N < self.precision else self
        b = o.at_precision(N) if N < o.precision else o
        return UnramInt(self.p, self.f, N, _mul_vec(self.p, self.f, N, a.coeff_ints, b.coeff_ints))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return UnramInt(self.p, self.f, self.precision, _pow_vec(self.p, self.f, self.precision, self.coeff_ints, e))

    def inverse(self) -> "UnramInt":
        if not self.is_unit():
            raise ZeroDivisionError("not a unit")
        z = UnramInt.from_residue(self.reduce().inverse(), self.precision)
        for _ in range(self.precision.bit_length() + 2):
            prod = self * z
            if prod.is_one():
                return z
            z = z * (2 - prod)
        raise AssertionError("inverse iteration failed to converge")

    def frobenius(self, k: int = 1) -> "UnramInt":
        """The Frobenius lift sigma (sigma^k for general k), fixing Z_p pointwise."""
        k %= self.f
        if k == 0:
            return self
        M = _frob_matrix(self.p, self.f, self.precision, k)
        m = self.modulus
        out = [0] * self.f
        for i, row in enumerate(M):
            out[i] = sum(row[j] * self.coeff_ints[j] for j in range(self.f)) % m
        return UnramInt(self.p, self.f, self.precision, tuple(out))

    def trace(self) -> PadicInt:
        row = _trace_row(self.p, self.f, self.precision)
        t = sum(c * t0 for c, t0 in zip(self.coeff_ints, row))
        return PadicInt(self.p, self.precision, t)

    def norm(self) -> PadicInt:
        acc = self
        cur = self
        for _ in range(self.f - 1):
            cur = cur.frobenius()
            acc = acc * cur
        if any(c for c in acc.coeff_ints[1:]):
            raise AssertionError("norm fell outside Z_p")
        return PadicInt(self.p, self.precision, acc.coeff_ints[0])

    def __repr__(self):
        return f"Unram(p={self.p},f={self.f},N={self.precision};{list(self.coeff_ints)})"


def _poly_eval_unram(coeffs: tuple[int, ...], x: UnramInt) -> UnramInt:
    acc = UnramInt.zero(x.p, x.f, x.precision)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def _frob_gen_image(p: int, f: int, N: int) -> UnramInt:
    # sigma(y): the root of h congruent to y^p mod p, by Newton iteration
    h = min_poly(p, f)
    dh = tuple((i + 1) * h[i + 1] for i in range(f))
    r = UnramInt.from_residue(ResidueElem.gen(p, f) ** p, N)
    for _ in range(N.bit_length() + 3):
        val = _poly_eval_unram(h, r)
        if val.is_zero():
            return r
        r = r - val * _poly_eval_unram(dh, r).inverse()
    if _poly_eval_unram(h, r).is_zero():
        return r
    raise AssertionError("Frobenius root lift failed to converge")


@lru_cache(maxsize=None)
def _frob_matrix(p: int, f: int, N: int, k: int) -> tuple[tuple[int, ...], ...]:
    # row-major matrix of sigma^k in the power basis
    if k == 1:
        sy = _frob_gen_image(p, f, N)
        cols = []
        cur = UnramInt.one(p, f, N)
        for _ in range(f):
            cols.append(cur.coeff_ints)
            cur = cur * sy
        return tuple(tuple(cols[j][i] for j in range(f)) for i in range(f))
    A = _frob_matrix(p, f, N, 1)
    B = _frob_matrix(p, f, N, k - 1)
    m = _pN(p, N)
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(f)) % m for j in range(f)) for i in range(f)
    )


@lru_cache(maxsize=None)
def _trace_row(p: int, f: int, N: int) -> tuple[int, ...]:
    conj = [UnramInt.gen(p, f, N).frobenius(j) for j in range(f)]
    row = []
    for i in range(f):
        s = UnramInt.zero(p, f, N)
        for c in conj:
            s = s + c ** i
        if any(v for v in s.coeff_ints[1:]):
            raise AssertionError("trace of a basis power fell outside Z_p")
        row.append(s.coeff_ints[0])
    return tuple(row)


# ---------------------------------------------------------------------------
# spec-level operations


def teichmuller(xi: ResidueElem, N: int) -> UnramInt:
    """The Teichmuller lift: congruent to xi mod p, and q-1st root of unity (or 0)."""
    q = xi.p ** xi.f
    x = UnramInt.from_residue(xi, N)
    for _ in range(N + 2):
        nxt = x ** q
        if nxt == x:
            return x
        x = nxt
    raise AssertionError("Teichmuller iteration failed to stabilize")


def trace_norm(x: UnramInt) -> tuple[PadicInt, PadicInt]:
    """Absolute trace and norm down to Z_p, as (Tr, N)."""
    return x.trace(), x.norm()


def log_precision(p: int, N: int) -> int:
    """Effective precision of padic_log output for input precision N."""
    return N - ilog(p, N) - 1


def padic_log(u: UnramInt) -> UnramInt:
    """p-adic logarithm of a principal unit (u = 1 mod p).

    Partial sums of sum_k (-1)^(k+1) (u-1)^k / k, carried until every further
    term vanishes modulo p**N.  Division by k costs v_p(k) digits, so the
    output is returned truncated to the certified precision
    N - floor(log_p N) - 1; digits above that would be noise and are dropped.
    """
    p, f, N = u.p, u.f, u.precision
    eff = log_precision(p, N)
    if eff < 1:
        raise ValueError("input precision too small for a certified logarithm")
    if not (u - 1).reduce().is_zero():
        raise ValueError("padic_log needs u = 1 mod p")
    x = u - 1
    m = _pN(p, N)
    acc = [0] * f
    xk = UnramInt.one(p, f, N)
    k = 1
    while k - ilog(p, k) < N:
        xk = xk * x
        a = 0
        kk = k
        while kk % p == 0:
            kk //= p
            a += 1
        # (u-1)^k is divisible by p^k >= p^a, so the stored representatives are too
        term = xk.divexact_p(a)
        scale = pow(kk, -1, _pN(p, N - a))
        if k % 2 == 0:
            scale = -scale
        for i in range(f):
            acc[i] = (acc[i] + scale * term.coeff_ints[i]) % m
        k += 1
    return UnramInt(p, f, N, tuple(acc)).at_precision(eff)


# ---------------------------------------------------------------------------
# embeddings between unramified fields (d | f)


@lru_cache(maxsize=None)
def _embed_data(p: int, d: int, f: int, N: int):
    if f % d:
        raise ValueError("not a subfield degree")
    # Newton-lift the pinned residue root of h_d inside Z_{p^f}
    hd = min_poly(p, d)
    dhd = tuple((i + 1) * hd[i + 1] for i in range(d))
    r = UnramInt.from_residue(_embed_root_res(p, d, f), N)
    for _ in range(N.bit_length() + 3):
        val = _poly_eval_unram(hd, r)
        if val.is_zero():
            break
        r = r - val * _poly_eval_unram(dhd, r).inverse()
    if not _poly_eval_unram(hd, r).is_zero():
        raise AssertionError("embedding root lift failed to converge")
    pows = []
    cur = UnramInt.one(p, f, N)
    for _ in range(d):
        pows.append(cur)
        cur = cur * r
    # coordinate extraction: d rows of the f x d matrix of pows whose mod-p
    # reduction is independent, with the pivot block inverted mod p^N
    m = _pN(p, N)
    E = [[pows[j].coeff_ints[i] for j in range(d)] for i in range(f)]
    pivots: list[int] = []
    echelon: list[list[int]] = []
    for i in range(f):
        red = [v % p for v in E[i]]
        for brow in echelon:
            lead = next(j for j in range(d) if brow[j])
            c = red[lead]
            if c:
                red = [(red[j] - c * brow[j]) % p for j in range(d)]
        if any(red):
            lead = next(j for j in range(d) if red[j])
            s = pow(red[lead], -1, p)
            echelon.append([(v * s) % p for v in red])
            pivots.append(i)
        if len(pivots) == d:
            break
    if len(pivots) != d:
        raise AssertionError("embedding matrix lost rank")
    block = [[E[i][j] for j in range(d)] for i in pivots]
    inv = _invert_mod(block, m, p)
    return tuple(pows), tuple(pivots), tuple(tuple(r_) for r_ in inv)


def _invert_mod(mat: list[list[int]], m: int, p: int) -> list[list[int]]:
    # invert a matrix over Z/m (m a power of p) whose mod-p reduction is invertible
    n = len(mat)
    A = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] % p), None)
        if piv is None:
            raise ValueError("matrix not invertible mod p")
        A[c], A[piv] = A[piv], A[c]
        s = pow(A[c][c], -1, m)
        A[c] = [(v * s) % m for v in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                fac = A[r][c]
                A[r] = [(A[r][j] - fac * A[c][j]) % m for j in range(2 * n)]
    return [row[n:] for row in A]


def subfield_embed(x: UnramInt, f: int) -> UnramInt:
    """Pinned embedding of Z_{p^d} into Z_{p^f} (d | f), lifting the residue embedding."""
    d = x.f
    pows, _, _ = _embed_data(x.p, d, f, x.precision)
    acc = UnramInt.zero(x.p, f, x.precision)
    for c, w in zip(x.coeff_ints, pows):
        acc = acc + w * c
    return acc


def _project_to_subfield(x: UnramInt, d: int) -> UnramInt:
    pows, pivots, inv = _embed_data(x.p, d, x.f, x.precision)
    m = x.modulus
    rhs = [x.coeff_ints[i] for i in pivots]
    c = tuple(sum(inv[t][j] * rhs[j] for j in range(d)) % m for t in range(d))
    out = UnramInt(x.p, d, x.precision, c)
    if not subfield_embed(out, x.f).agrees(x):
        raise ValueError("element does not lie in the subfield")
    return out


def relative_trace(x: UnramInt, d: int) -> UnramInt:
    """Trace to the degree-d subfield, expressed in that subfield's own basis."""
    if x.f % d:
        raise ValueError("not a subfield degree")
    acc = x
    cur = x
    for _ in range(x.f // d - 1):
        cur = cur.frobenius(d)
        acc = acc + cur
    return _project_to_subfield(acc, d)


def relative_norm(x: UnramInt, d: int) -> UnramInt:
    """Norm to the degree-d subfield, expressed in that subfield's own basis."""
    if x.f % d:
        raise ValueError("not a subfield degree")
    acc = x
    cur = x
    for _ in range(x.f // d - 1):
        cur = cur.frobenius(d)
        acc = acc * cur
    return _project_to_subfield(acc, d)
