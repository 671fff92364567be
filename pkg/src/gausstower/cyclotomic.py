"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Elements are stored in the power basis 1, zeta_M, ..., zeta_M^(phi(M)-1) of
Q(zeta_M), with an integer numerator vector over a single positive denominator.
All arithmetic is exact; floating point appears only in the complex-embedding
diagnostic.

Conventions:
  * zeta_M denotes the distinguished primitive M-th root of unity (the one the
    complex embedding sends to exp(2*pi*i/M)).
  * Mixed-level operations lift both operands to the lcm of the levels.  Level
    growth past the configured cap raises LevelOverflowError rather than
    grinding on a basis that is too large to be useful.
  * galois(a) is the field automorphism zeta_M -> zeta_M^a, gcd(a, M) = 1.

Hot paths (Gauss-sum accumulation, Galois orbits of stored sums) go through
per-level cached reduction tables with a numpy int64 fast path.  The fast path
is guarded by explicit magnitude bounds and falls back to Python integers, so
results never depend on machine word size.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "CycNum",
    "RootOfUnity",
    "LevelOverflowError",
    "cyc_mul",
    "cyc_galois",
    "get_level_cap",
    "set_level_cap",
    "euler_phi",
    "factorize",
]

# int64 products stay exact as long as |a|*|b|*n_terms stays under 2^62.
_I64_SAFE = 1 << 62

_LEVEL_CAP = 4000


class LevelOverflowError(RuntimeError):
    """Raised when an operation would need a cyclotomic level above the cap."""


def get_level_cap() -> int:
    return _LEVEL_CAP


def set_level_cap(cap: int) -> None:
    """Set the maximal permitted cyclotomic level (resource guard)."""
    global _LEVEL_CAP
    if cap < 1:
        raise ValueError("level cap must be positive")
    _LEVEL_CAP = cap


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; n is desk-scale (< 2^40 or so)."""
    if n <= 0:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    phi = 1
    for q, k in factorize(n).items():
        phi *= (q - 1) * q ** (k - 1)
    return phi


def _divisors(n: int) -> list[int]:
    divs = [1]
    for q, k in factorize(n).items():
        divs = [d * q**j for d in divs for j in range(k + 1)]
    return sorted(divs)


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1 - dn, -1, -1):
        c = num[i + dn]
        if c % lead:
            raise ArithmeticError("non-exact polynomial division")
        q = c // lead
        out[i] = q
        if q:
            for j, dj in enumerate(den):
                num[i + j] -= q * dj
    if any(num[:dn]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the M-th cyclotomic polynomial."""
    if M == 1:
        return (-1, 1)
    num = [-1] + [0] * (M - 1) + [1]  # x^M - 1
    for d in _divisors(M)[:-1]:
        num = _poly_divexact(num, cyclotomic_poly(d))
    return tuple(num)


class _Context:
    """Per-level cache: cyclotomic polynomial, reduction tables, numpy mirrors."""

    def __init__(self, M: int):
        self.M = M
        self.phi = euler_phi(M)
        self.cyclo = cyclotomic_poly(M)
        self._rows: list[tuple[int, ...]] | None = None
        self._rows_np: np.ndarray | None = None
        self._row_max = 1

    def rows(self) -> list[tuple[int, ...]]:
        """x^j mod Phi_M for j up to max(M, 2*phi-1) - 1 (covers products)."""
        if self._rows is None:
            phi, M = self.phi, max(self.M, 2 * self.phi - 1)
            rows_full: list[list[int]] = [
                [1 if i == j else 0 for i in range(phi)] for j in range(phi)
            ]
            cur = list(rows_full[-1])
            for _ in range(phi, M):
                # multiply by x, fold the overflow coefficient back by Phi_M
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    for i in range(phi):
                        cur[i] -= top * self.cyclo[i]
                rows_full.append(list(cur))
            self._rows = [tuple(r) for r in rows_full]
            self._row_max = max(1, max(abs(c) for r in self._rows for c in r))
        return self._rows

    def rows_np(self) -> np.ndarray:
        if self._rows_np is None:
            self._rows_np = np.array(self.rows(), dtype=np.int64)
        return self._rows_np

    @property
    def row_max(self) -> int:
        self.rows()
        return self._row_max

    def reduce_counts(self, counts: Sequence[int]) -> tuple[int, ...]:
        """Reduce sum_j counts[j] * zeta^j (j mod M) to the power basis."""
        if len(counts) != self.M:
            raise ValueError("counts vector must have length M")
        cmax = max((abs(c) for c in counts), default=0)
        if cmax and cmax * self.row_max * self.M < _I64_SAFE:
            vec = np.asarray(counts, dtype=np.int64) @ self.rows_np()[: self.M]
            return tuple(int(v) for v in vec)
        out = [0] * self.phi
        rows = self.rows()
        for j, c in enumerate(counts):
            if c:
                row = rows[j]
                for i in range(self.phi):
                    out[i] += c * row[i]
        return tuple(out)

    def mul_ints(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        """Product of two power-basis integer vectors, reduced mod Phi_M."""
        amax = max((abs(x) for x in a), default=0)
        bmax = max((abs(x) for x in b), default=0)
        if amax == 0 or bmax == 0:
            return tuple([0] * self.phi)
        n = self.phi
        if amax * bmax * n < _I64_SAFE:
            conv = np.convolve(
                np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
            )
            top = max(int(np.max(np.abs(conv))), 1)
            if top * self.row_max * n < _I64_SAFE:
                out = np.zeros(n, dtype=np.int64)
                out += conv[:n] if len(conv) >= n else np.pad(conv, (0, n - len(conv)))
                if len(conv) > n:
                    out += conv[n:] @ self.rows_np()[n : len(conv)]
                return tuple(int(v) for v in out)
        conv_py = _poly_mul(list(a), list(b))
        out_py = conv_py[:n] + [0] * max(0, n - len(conv_py))
        rows = self.rows()
        for j in range(n, len(conv_py)):
            c = conv_py[j]
            if c:
                row = rows[j]
                for i in range(n):
                    out_py[i] += c * row[i]
        return tuple(out_py)

    def galois_ints(self, a: Sequence[int], k: int) -> tuple[int, ...]:
        """Apply zeta -> zeta^k (gcd(k, M) = 1) to an integer vector."""
        counts = [0] * self.M
        for i, c in enumerate(a):
            if c:
                counts[(i * k) % self.M] += c
        return self.reduce_counts(counts)


@lru_cache(maxsize=None)
def _context(M: int) -> _Context:
    if M > _LEVEL_CAP:
        raise LevelOverflowError(
            f"cyclotomic level {M} exceeds the configured cap {_LEVEL_CAP}"
        )
    return _Context(M)


def _normalize_fracs(nums: Iterable[int], den: int) -> tuple[tuple[int, ...], int]:
    nums = tuple(nums)
    if den < 0:
        nums, den = tuple(-v for v in nums), -den
    g = den
    for v in nums:
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        nums, den = tuple(v // g for v in nums), den // g
    if all(v == 0 for v in nums):
        den = 1
    return nums, den


Rat = Union[int, Fraction]


@dataclass(frozen=True, eq=False)
class CycNum:
    """An element of Q(zeta_level) in the power basis (exact rationals)."""

    level: int
    nums: tuple[int, ...]
    den: int = 1

    def __post_init__(self):
        ctx = _context(self.level)
        if len(self.nums) != ctx.phi:
            raise ValueError(
                f"need {ctx.phi} coefficients at level {self.level}, got {len(self.nums)}"
            )
        if self.den <= 0:
            raise ValueError("denominator must be positive and normalized")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(x: Rat, level: int = 1) -> CycNum:
        x = Fraction(x)
        ctx = _context(level)
        nums = [0] * ctx.phi
        nums[0] = x.numerator
        return CycNum(level, *_normalize_fracs(nums, x.denominator))

    @staticmethod
    def zero(level: int = 1) -> CycNum:
        return CycNum.from_rational(0, level)

    @staticmethod
    def one(level: int = 1) -> CycNum:
        return CycNum.from_rational(1, level)

    @staticmethod
    def root(M: int, k: int = 1) -> CycNum:
        """zeta_M^k as an element of Q(zeta_M)."""
        ctx = _context(M)
        counts = [0] * M
        counts[k % M] = 1
        return CycNum(M, ctx.reduce_counts(counts), 1)

    @staticmethod
    def from_coeffs(level: int, coeffs: Sequence[Rat]) -> CycNum:
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in fr]
        return CycNum(level, *_normalize_fracs(nums, den))

    @staticmethod
    def from_counts(level: int, counts: Sequence[int]) -> CycNum:
        """sum_j counts[j] * zeta_level^j with j indexed mod level."""
        ctx = _context(level)
        return CycNum(level, ctx.reduce_counts(counts), 1)

    # -- basic views -------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.nums)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.nums)

    def is_one(self) -> bool:
        return self.den == 1 and self.nums[0] == 1 and not any(self.nums[1:])

    def is_integral(self) -> bool:
        return self.den == 1

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.nums[0], self.den)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def to_json(self) -> list[str]:
        """Debug dump: power-basis coefficients as exact 'num/den' strings."""
        return [str(Fraction(v, self.den)) for v in self.nums]

    def to_complex(self) -> complex:
        """Float diagnostic only; never used for equality decisions."""
        z = 0j
        for i, v in enumerate(self.nums):
            z += (v / self.den) * cmath.exp(2j * cmath.pi * i / self.level)
        return z

    # -- level handling ----------------------------------------------------

    def lift_to(self, M: int) -> CycNum:
        """Embed into Q(zeta_M); requires level | M."""
        if M == self.level:
            return self
        if M % self.level:
            raise ValueError(f"cannot embed level {self.level} into level {M}")
        step = M // self.level
        counts = [0] * M
        for i, v in enumerate(self.nums):
            if v:
                counts[i * step] = v
        ctx = _context(M)
        return CycNum(M, *_normalize_fracs(ctx.reduce_counts(counts), self.den))

    def _common(self, other: CycNum) -> tuple[CycNum, CycNum]:
        if self.level == other.level:
            return self, other
        M = self.level * other.level // gcd(self.level, other.level)
        return self.lift_to(M), other.lift_to(M)

    def normalized(self) -> CycNum:
        """Rewrite at the minimal cyclotomic level containing the value."""
        cur = self
        changed = True
        while changed:
            changed = False
            for q in sorted(factorize(cur.level)):
                M2 = cur.level // q
                down = cur._try_descend(M2)
                if down is not None:
                    cur = down
                    changed = True
                    break
        return cur

    def _try_descend(self, M2: int) -> CycNum | None:
        M = self.level
        if M2 < 1 or M % M2:
            return None
        # invariance under Gal(Q(zeta_M)/Q(zeta_M2)) = {a = 1 mod M2}
        for a in range(1 + M2, M, M2):
            if gcd(a, M) == 1 and self.galois(a) != self:
                return None
        basis, pivots, inv = _descend_data(M, M2)
        vec = [Fraction(v, self.den) for v in self.nums]
        coords = [
            sum(inv[r][c] * vec[pivots[c]] for c in range(len(pivots)))
            for r in range(len(pivots))
        ]
        cand = CycNum.from_coeffs(M2, coords)
        return cand if cand.lift_to(M) == self else None

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> CycNum:
        other = _coerce(other, self.level)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        den = a.den * b.den // gcd(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        nums = [x * fa + y * fb for x, y in zip(a.nums, b.nums)]
        return CycNum(a.level, *_normalize_fracs(nums, den))

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum(self.level, tuple(-v for v in self.nums), self.den)

    def __sub__(self, other) -> CycNum:
        other = _coerce(other, self.level)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> CycNum:
        return (-self) + other

    def __mul__(self, other) -> CycNum:
        if isinstance(other, RootOfUnity):
            other = other.as_cyc()
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            nums = tuple(v * other.numerator for v in self.nums)
            return CycNum(
                self.level, *_normalize_fracs(nums, self.den * other.denominator)
            )
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._common(other)
        ctx = _context(a.level)
        nums = ctx.mul_ints(a.nums, b.nums)
        return CycNum(a.level, *_normalize_fracs(nums, a.den * b.den))

    __rmul__ = __mul__

    def __truediv__(self, other) -> CycNum:
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division of CycNum by zero rational")
            return self * Fraction(q.denominator, q.numerator)
        if isinstance(other, RootOfUnity):
            return self * other.inverse()
        if isinstance(other, CycNum):
            return self * other.inverse()
        return NotImplemented

    def inverse(self) -> CycNum:
        """Multiplicative inverse, as conjugate product over rational norm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        x = self.normalized()
        prod = CycNum.one(x.level)
        for a in range(2, x.level + 1):
            if gcd(a, x.level) == 1:
                prod = prod * x.galois(a)
        norm = (x * prod).as_rational()
        return prod * Fraction(norm.denominator, norm.numerator)

    def __pow__(self, n: int) -> CycNum:
        if n < 0:
            raise ValueError("negative powers are only defined for RootOfUnity")
        out = CycNum.one(self.level)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def galois(self, a: int) -> CycNum:
        """Field automorphism zeta -> zeta^a; a must be prime to the level."""
        if gcd(a, self.level) != 1:
            raise ValueError(f"galois exponent {a} not coprime to level {self.level}")
        ctx = _context(self.level)
        return CycNum(
            self.level, *_normalize_fracs(ctx.galois_ints(self.nums, a), self.den)
        )

    def conjugate(self) -> CycNum:
        return self.galois(-1 % self.level) if self.level > 2 else self

    def __eq__(self, other) -> bool:
        if isinstance(other, RootOfUnity):
            other = other.as_cyc()
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._common(other)
        return a.nums == b.nums and a.den == b.den

    # cross-level equality is value-based, so instances are deliberately unhashable

    def __repr__(self) -> str:
        return f"CycNum(level={self.level}, coeffs={self.to_json()})"


@lru_cache(maxsize=None)
def _descend_data(M: int, M2: int):
    """Row-reduction data expressing level-M vectors in the level-M2 basis.

    Returns (basis, pivot positions, inverse of the pivot square block), all
    exact Fractions; used by CycNum.normalized.
    """
    phi2 = euler_phi(M2)
    step = M // M2
    ctx = _context(M)
    basis = []
    for i in range(phi2):
        counts = [0] * M
        counts[(i * step) % M] = 1
        basis.append(ctx.reduce_counts(counts))
    # select pivot rows making the phi2 x phi2 block invertible
    cols = list(range(len(basis)))
    mat = [[Fraction(basis[c][r]) for c in cols] for r in range(ctx.phi)]
    pivots: list[int] = []
    work = [row[:] for row in mat]
    used = set()
    for c in range(phi2):
        pr = next(
            r for r in range(ctx.phi) if r not in used and work[r][c] != 0
        )
        pivots.append(pr)
        used.add(pr)
        inv = Fraction(1) / work[pr][c]
        work[pr] = [v * inv for v in work[pr]]
        for r in range(ctx.phi):
            if r != pr and work[r][c] != 0:
                f = work[r][c]
                work[r] = [v - f * w for v, w in zip(work[r], work[pr])]
    block = [[mat[pivots[r]][c] for c in range(phi2)] for r in range(phi2)]
    inv_block = _invert_fraction_matrix(block)
    return basis, pivots, inv_block


def _invert_fraction_matrix(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        pr = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[pr] = a[pr], a[c]
        inv = Fraction(1) / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [v - f * w for v, w in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _coerce(x, level: int):
    if isinstance(x, CycNum):
        return x
    if isinstance(x, RootOfUnity):
        return x.as_cyc()
    if isinstance(x, (int, Fraction)):
        return CycNum.from_rational(x, 1)
    return NotImplemented


@dataclass(frozen=True)
class RootOfUnity:
    """zeta_order^exp in normalized form (exp reduced, gcd factored out)."""

    order: int
    exp: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        e = self.exp % self.order
        g = gcd(e, self.order) if e else self.order
        new_order, new_exp = self.order // g, (e // g) % max(self.order // g, 1)
        if (new_order, new_exp) != (self.order, self.exp):
            object.__setattr__(self, "order", new_order)
            object.__setattr__(self, "exp", new_exp)

    @staticmethod
    def one() -> RootOfUnity:
        return RootOfUnity(1, 0)

    def __mul__(self, other):
        if isinstance(other, RootOfUnity):
            L = self.order * other.order // gcd(self.order, other.order)
            return RootOfUnity(
                L, (self.exp * (L // self.order) + other.exp * (L // other.order)) % L
            )
        if isinstance(other, (CycNum, int, Fraction)):
            return self.as_cyc() * other
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RootOfUnity:
        return RootOfUnity(self.order, (self.exp * n) % self.order)

    def inverse(self) -> RootOfUnity:
        return self ** (-1)

    def galois(self, a: int) -> RootOfUnity:
        if gcd(a, self.order) != 1:
            raise ValueError("galois exponent not coprime to the order")
        return self**a

    def as_cyc(self, level: int | None = None) -> CycNum:
        z = CycNum.root(self.order, self.exp)
        return z.lift_to(level) if level else z

    def is_one(self) -> bool:
        return self.order == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, RootOfUnity):
            return self.order == other.order and self.exp == other.exp
        if isinstance(other, (CycNum, int, Fraction)):
            return self.as_cyc() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.exp))

    def to_complex(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.exp / self.order)

    def __repr__(self) -> str:
        return f"zeta_{self.order}^{self.exp}"


def cyc_mul(a: CycNum, b: CycNum) -> CycNum:
    """Exact product in Q(zeta_lcm); overflow of the level cap raises."""
    return a * b


def cyc_galois(a: CycNum, k: int) -> CycNum:
    """Apply the automorphism zeta -> zeta^k (k prime to the level)."""
    return a.galois(k)
