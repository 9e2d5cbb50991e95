"""Exact arithmetic in the real cyclotomic field K = Q(gamma), gamma = 2cos(pi/L).

Elements are stored as an integer numerator vector over the power basis
1, gamma, ..., gamma^(n-1) together with one positive integer denominator.
Signs are decided exactly: a zero test on the coefficients, then dyadic
refinement of gamma until a derivative bound separates the value from zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union


class FieldError(ArithmeticError):
    """Reported arithmetic failure (division by zero, field mismatch)."""


# --------------------------------------------------------------------------
# integer polynomials (coefficient lists, lowest degree first)


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a: list, b: list) -> list:
    """Quotient of a by monic b, asserting zero remainder."""
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1]
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    if any(a):
        raise FieldError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic(d)))
    return tuple(num)


def _half_substitute(phi: tuple[int, ...]) -> list[int]:
    """Return Q with z^n Q(z + 1/z) = phi(z) for a palindromic phi of degree 2n."""
    deg = len(phi) - 1
    if deg % 2:
        raise FieldError("odd-degree polynomial cannot be palindromic")
    n = deg // 2
    rest = {k - n: c for k, c in enumerate(phi)}
    q = [0] * (n + 1)
    for j in range(n, -1, -1):
        c = rest.get(j, 0)
        q[j] = c
        if c:
            for i in range(j + 1):
                e = j - 2 * i
                rest[e] = rest.get(e, 0) - c * math.comb(j, i)
    if any(rest.values()):
        raise FieldError("polynomial is not palindromic")
    return q


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _eval_frac(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sturm_count(p: list[int], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in (lo, hi]."""

    def deriv(f):
        return [i * f[i] for i in range(1, len(f))] or [Fraction(0)]

    def rem(f, g):
        f = [Fraction(c) for c in f]
        g = [Fraction(c) for c in g]
        while len(f) >= len(g) and any(f):
            c = f[-1] / g[-1]
            s = len(f) - len(g)
            for j, y in enumerate(g):
                f[s + j] -= c * y
            f.pop()
        return _trim(f or [Fraction(0)])

    seq = [[Fraction(c) for c in p], [Fraction(c) for c in deriv(p)]]
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        r = rem(seq[-2], seq[-1])
        if len(r) == 1 and r[0] == 0:
            break
        seq.append([-c for c in r])

    def changes(x):
        signs = [s for s in (_eval_frac(f, x) for f in seq) if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))

    return changes(lo) - changes(hi)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    L: int
    minpoly: tuple[int, ...]
    isolating_interval: tuple[Fraction, Fraction]
    _reduce: tuple = field(repr=False, compare=False, default=())
    _cache: dict = field(repr=False, compare=False, default_factory=dict)

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    # element constructors -------------------------------------------------

    def element(self, value: Union[int, Fraction, "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldError("element from a different field")
            return value
        value = Fraction(value)
        num = [0] * self.degree
        num[0] = value.numerator
        return FieldElement(self, tuple(num), value.denominator)

    def from_coeffs(self, coeffs) -> "FieldElement":
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > self.degree:
            raise FieldError("too many coefficients; reduce first")
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        den = math.lcm(*(c.denominator for c in coeffs))
        return FieldElement._make(self, [int(c * den) for c in coeffs], den)

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    @property
    def gen(self) -> "FieldElement":
        if self.degree == 1:
            return self.element(-self.minpoly[0])
        return self.from_coeffs([0, 1])

    def two_cos(self, k: int) -> "FieldElement":
        """2cos(k*pi/L) as a Chebyshev polynomial in gamma."""
        c0, c1 = self.element(2), self.gen
        if k == 0:
            return c0
        for _ in range(k - 1):
            c0, c1 = c1, self.gen * c1 - c0
        return c1

    def cos_pi_over(self, m: int) -> "FieldElement":
        if self.L % m:
            raise FieldError(f"cos(pi/{m}) is not in Q(2cos(pi/{self.L}))")
        return self.two_cos(self.L // m) / 2

    # dyadic approximation of gamma ------------------------------------------

    def _minpoly_scaled_sign(self, num: int, k: int) -> int:
        """Sign of minpoly(num / 2^k)."""
        n = self.degree
        s = sum(c * num**i * (1 << (k * (n - i))) for i, c in enumerate(self.minpoly))
        return (s > 0) - (s < 0)

    def dyadic(self, k: int) -> int:
        """Integer G with gamma in [G/2^k, (G+1)/2^k]."""
        hit = self._cache.get(k)
        if hit is not None:
            return hit
        lo, hi = self.isolating_interval
        if self.degree == 1:
            g = Fraction(-self.minpoly[0])
            val = math.floor(g * (1 << k))
            self._cache[k] = val
            return val
        # bisection on integers scaled by 2^k
        a = math.floor(lo * (1 << k))
        b = math.ceil(hi * (1 << k))
        sa = self._minpoly_scaled_sign(a, k)
        sb = self._minpoly_scaled_sign(b, k)
        if sa == 0 or sb == 0 or sa == sb:
            raise FieldError("isolating interval lost the root")
        while b - a > 1:
            mid = (a + b) // 2
            sm = self._minpoly_scaled_sign(mid, k)
            if sm == 0:
                raise FieldError("gamma is rational in a field of degree > 1")
            if sm == sa:
                a = mid
            else:
                b = mid
        self._cache[k] = a
        return a


@lru_cache(maxsize=None)
def make_field(L: int) -> FieldSpec:
    """Build Q(2cos(pi/L)) with its minimal polynomial and an isolating interval."""
    if not isinstance(L, int) or L < 2:
        raise FieldError(f"L must be an integer >= 2, got {L!r}")
    q = _half_substitute(cyclotomic(2 * L))
    n = len(q) - 1
    if n != euler_phi(2 * L) // 2 or q[-1] != 1:
        raise FieldError("unexpected degree for the real cyclotomic polynomial")
    gamma = 2 * math.cos(math.pi / L)
    if n == 1:
        root = Fraction(-q[0])
        interval = (root - Fraction(1, 2), root + Fraction(1, 2))
    else:
        # next-largest root is 2cos(k pi/L) for the next k coprime to 2L
        k2 = next(k for k in range(2, L) if math.gcd(k, 2 * L) == 1)
        below = 2 * math.cos(k2 * math.pi / L)
        interval = (Fraction((gamma + below) / 2).limit_denominator(1 << 40), Fraction(2))
    if _sturm_count(q, *interval) != 1:
        raise FieldError("isolating interval does not isolate a single root")
    if not interval[0] < Fraction(gamma) <= interval[1]:
        raise FieldError("isolating interval misses 2cos(pi/L)")
    red = []
    for k in range(n, 2 * n - 1):
        vec = [0] * (2 * n - 1)
        vec[k] = 1
        for j in range(k, n - 1, -1):
            c = vec[j]
            if c:
                for i in range(n + 1):
                    vec[j - n + i] -= c * q[i]
        red.append(tuple(vec[:n]))
    spec = FieldSpec(L, tuple(q), interval, tuple(red))
    if n > 1 and abs(float(spec.gen) - gamma) > 1e-12:
        raise FieldError("numeric root check failed")
    return spec


Number = Union[int, Fraction, "FieldElement"]


class FieldElement:
    """Immutable exact element of a FieldSpec."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: FieldSpec, num: tuple[int, ...], den: int = 1):
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _make(field: FieldSpec, num: list[int], den: int) -> "FieldElement":
        if den < 0:
            num = [-c for c in num]
            den = -den
        if den != 1:
            g = math.gcd(den, *num)
            if g != 1:
                num = [c // g for c in num]
                den //= g
        return FieldElement(field, tuple(num), den)

    # ----------------------------------------------------------------- access

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError("field mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return NotImplemented

    # ------------------------------------------------------------- arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return FieldElement._make(self.field, [a + b for a, b in zip(self.num, o.num)], self.den)
        return FieldElement._make(
            self.field, [a * o.den + b * self.den for a, b in zip(self.num, o.num)], self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement._make(self.field, [a * other for a in self.num], self.den)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = self.field.degree
        if n == 1:
            return FieldElement._make(self.field, [self.num[0] * o.num[0]], self.den * o.den)
        if not any(o.num[1:]):
            c = o.num[0]
            return FieldElement._make(self.field, [a * c for a in self.num], self.den * o.den)
        if not any(self.num[1:]):
            c = self.num[0]
            return FieldElement._make(self.field, [c * b for b in o.num], self.den * o.den)
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(o.num):
                    if b:
                        prod[i + j] += a * b
        out = prod[:n]
        for k, red in enumerate(self.field._reduce):
            c = prod[n + k]
            if c:
                for i, r in enumerate(red):
                    if r:
                        out[i] += c * r
        return FieldElement._make(self.field, out, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise FieldError("division by zero in the field")
        n = self.field.degree
        if self.is_rational():
            return self.field.element(Fraction(self.den, self.num[0]))
        # extended Euclid on a(x) and minpoly(x) over Q
        a = _trim([Fraction(c) for c in self.num])
        m = [Fraction(c) for c in self.field.minpoly]
        r0, r1 = m, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while not (len(r1) == 1):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        c = r1[0]
        coeffs = [x / c for x in s1]
        coeffs += [Fraction(0)] * (n - len(coeffs))
        # s1 * a = r1 mod minpoly; scale by den
        return self.field.from_coeffs(coeffs[:n]) * self.den

    def __truediv__(self, other):
        if isinstance(other, int):
            if other == 0:
                raise FieldError("division by zero in the field")
            return FieldElement._make(self.field, list(self.num), self.den * other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # ------------------------------------------------------------- comparison

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def sign(self) -> int:
        """Exact sign (-1, 0, 1) under the real embedding gamma = 2cos(pi/L)."""
        num = self.num
        if not any(num[1:]):
            return (num[0] > 0) - (num[0] < 0)
        n = len(num) - 1
        # derivative bound on [-2, 2]
        dbound = sum(i * abs(c) << (i - 1) for i, c in enumerate(num) if i)
        k = 64
        while True:
            g = self.field.dyadic(k)
            s = sum(c * g**i * (1 << (k * (n - i))) for i, c in enumerate(num))
            # value at lo is s / 2^(k n); |value - P(gamma)| <= dbound / 2^k
            if abs(s) << k > dbound << (k * n):
                return 1 if s > 0 else -1
            k *= 2

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return not self.is_zero()

    def to_fraction_interval(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational interval of width <= 2^-bits containing the real value."""
        num = self.num
        n = len(num) - 1
        if not any(num[1:]):
            v = Fraction(num[0], self.den)
            return v, v
        dbound = sum(i * abs(c) << (i - 1) for i, c in enumerate(num) if i)
        k = max(64, bits + dbound.bit_length() + 2)
        g = self.field.dyadic(k)
        s = sum(c * g**i * (1 << (k * (n - i))) for i, c in enumerate(num))
        centre = Fraction(s, (1 << (k * n)) * self.den)
        err = Fraction(dbound, (1 << k) * self.den)
        return centre - err, centre + err

    def __float__(self):
        if self.is_zero():
            return 0.0
        bits = 64
        while True:
            lo, hi = self.to_fraction_interval(bits)
            if lo.numerator * hi.numerator > 0 and (hi - lo) <= abs(lo) / (1 << 60):
                return float((lo + hi) / 2)
            bits *= 2

    def __repr__(self):
        if self.is_rational():
            return f"{Fraction(self.num[0], self.den)}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else (f"{c}*g" if i == 1 else f"{c}*g^{i}"))
        return " + ".join(terms)


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and not (len(a) == 1 and a[0] == 0):
        c = a[-1] / b[-1]
        s = len(a) - len(b)
        q[s] = c
        for j, y in enumerate(b):
            a[s + j] -= c * y
        a.pop()
        if not a:
            a = [Fraction(0)]
    return _trim(q), _trim(a)
