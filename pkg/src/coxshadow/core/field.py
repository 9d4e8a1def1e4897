"""Exact arithmetic in the real cyclotomic field Q(2cos(pi/N)).

Elements are stored as integer coefficient vectors in powers of the
generator ``c = 2cos(pi/N)`` together with a positive common denominator,
reduced modulo the (monic, integral) minimal polynomial of ``c``.  The
canonical form is unique, so equality and hashing are syntactic.  Signs
are decided by a float fast path backed by certified interval refinement.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import gcd

from mpmath import iv

__all__ = ["RealCyclotomicField", "FieldElem", "minimal_polynomial", "field_for_bonds"]


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, low degree first; den is monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        coef = num[i + len(den) - 1]
        q[i] = coef
        if coef:
            for j, d in enumerate(den):
                num[i + j] -= coef * d
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _chebyshev_v(k: int) -> list[int]:
    """Integer polynomial V_k with V_k(z + 1/z) = z^k + z^-k."""
    prev, cur = [2], [0, 1]
    if k == 0:
        return prev
    for _ in range(k - 1):
        nxt = [0] + cur
        for i, a in enumerate(prev):
            nxt[i] -= a
        prev, cur = cur, nxt
    return cur


@lru_cache(maxsize=None)
def minimal_polynomial(N: int) -> tuple[int, ...]:
    """Minimal polynomial of 2cos(pi/N) over Q (monic, low degree first).

    Obtained from the cyclotomic polynomial of order 2N, which is palindromic,
    by rewriting ``z^-k Phi(z)`` in the variable ``y = z + 1/z``.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    phi = cyclotomic(2 * N)
    k = (len(phi) - 1) // 2
    out = [0] * (k + 1)
    out[0] = phi[k]
    for j in range(1, k + 1):
        for i, a in enumerate(_chebyshev_v(j)):
            out[i] += phi[k + j] * a
    return tuple(out)


class RealCyclotomicField:
    """The field Q(c), c = 2cos(pi/N)."""

    def __init__(self, N: int):
        self.N = N
        self.minpoly = minimal_polynomial(N)
        self.degree = len(self.minpoly) - 1
        self.gen_float = 2.0 * math.cos(math.pi / N)
        self._powers = [self.gen_float**i for i in range(self.degree)]
        self._iv_cache: dict[int, object] = {}
        # reduction table: c^(d+i) as a vector of length d
        d = self.degree
        red = []
        vec = [-a for a in self.minpoly[:d]]
        for _ in range(d - 1):
            red.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(d):
                    vec[i] -= top * self.minpoly[i]
        red.append(tuple(vec))
        self._reduce = red
        self.zero = FieldElem(self, (0,) * d, 1)
        self.one = self(1)

    def __repr__(self) -> str:
        return f"RealCyclotomicField(N={self.N}, degree={self.degree})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RealCyclotomicField) and other.N == self.N

    def __hash__(self) -> int:
        return hash(("RealCyclotomicField", self.N))

    def __call__(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            return value
        q = Fraction(value)
        return self.make((q.numerator,) + (0,) * (self.degree - 1), q.denominator)

    def make(self, num, den: int = 1) -> FieldElem:
        """Canonicalize a coefficient vector (any length) with denominator."""
        num = self._reduce_poly(list(num))
        if den < 0:
            num = [-a for a in num]
            den = -den
        g = den
        for a in num:
            g = gcd(g, a)
            if g == 1:
                break
        if g > 1:
            num = [a // g for a in num]
            den //= g
        return FieldElem(self, tuple(num), den)

    def _reduce_poly(self, num: list[int]) -> list[int]:
        d = self.degree
        if len(num) <= d:
            return num + [0] * (d - len(num))
        out = num[:d]
        for i, a in enumerate(num[d:]):
            if a:
                for j, r in enumerate(self._reduce[i]):
                    out[j] += a * r
        return out

    @property
    def gen(self) -> FieldElem:
        return self.make([0, 1])

    def two_cos_pi_over(self, m: int) -> FieldElem:
        """2cos(pi/m) for m dividing N, as a polynomial in c."""
        if self.N % m:
            raise ValueError(f"{m} does not divide {self.N}")
        return self.make(_chebyshev_v(self.N // m))

    def interval_gen(self, prec: int):
        c = self._iv_cache.get(prec)
        if c is None:
            old = iv.prec
            try:
                iv.prec = prec
                c = 2 * iv.cos(iv.pi / self.N)
            finally:
                iv.prec = old
            self._iv_cache[prec] = c
        return c


class FieldElem:
    """An exact element of a RealCyclotomicField in canonical form."""

    __slots__ = ("field", "num", "den", "_hash", "_float")

    def __init__(self, field: RealCyclotomicField, num: tuple[int, ...], den: int):
        self.field = field
        self.num = num
        self.den = den
        self._hash = None
        self._float = None

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return any(self.num)

    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return self.field.make([a + b for a, b in zip(self.num, o.num)], self.den)
        return self.field.make(
            [a * o.den + b * self.den for a, b in zip(self.num, o.num)], self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.field.make([a * other for a in self.num], self.den)
        o = self._coerce(other)
        prod = [0] * (len(self.num) + len(o.num) - 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(o.num):
                    if b:
                        prod[i + j] += a * b
        return self.field.make(prod, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero in field")
            return self.field.make([a * q.denominator for a in self.num], self.den * q.numerator)
        return self * self._coerce(other).inverse()

    def inverse(self) -> FieldElem:
        """Multiplicative inverse via the extended Euclidean algorithm over Q."""
        if not self:
            raise ZeroDivisionError("inverse of zero")
        f = [Fraction(a) for a in self.field.minpoly]
        g = [Fraction(a, self.den) for a in self.num]
        while len(g) > 1 and g[-1] == 0:
            g.pop()
        # maintain r_i = s_i * g (mod f)
        r0, r1 = f, g
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] == 0:
            q, r = _frac_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_sub(s0, _frac_mul(q, s1))
        inv = [a / r1[0] for a in s1]
        den = 1
        for a in inv:
            den = den * a.denominator // gcd(den, a.denominator)
        return self.field.make([int(a * den) for a in inv], den)

    def __float__(self) -> float:
        if self._float is None:
            p = self.field._powers
            self._float = sum(a * p[i] for i, a in enumerate(self.num) if a) / self.den
        return self._float

    def sign(self) -> int:
        """Exact sign: -1, 0 or 1."""
        if not any(self.num):
            return 0
        v = float(self)
        p = self.field._powers
        scale = sum(abs(a) * p[i] for i, a in enumerate(self.num)) / self.den
        if abs(v) > 1e-9 * scale + 1e-300:
            return 1 if v > 0 else -1
        return self._interval_sign()

    def _interval_sign(self) -> int:
        prec = 128
        while True:
            old = iv.prec
            try:
                iv.prec = prec
                c = self.field.interval_gen(prec)
                acc = iv.mpf(0)
                for a in reversed(self.num):
                    acc = acc * c + a
            finally:
                iv.prec = old
            if acc.a > 0:
                return 1
            if acc.b < 0:
                return -1
            prec *= 2
            if prec > 1 << 16:
                raise ArithmeticError("sign refinement did not converge")

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __repr__(self) -> str:
        return f"FieldElem({self})"

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.num):
            if not a:
                continue
            q = Fraction(a, self.den)
            mag = abs(q)
            if i == 0:
                body = str(mag)
            else:
                mono = "c" if i == 1 else f"c^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append(("-" if q < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sgn, body in terms[1:]:
            out += f" {sgn} {body}"
        return out

    def key(self) -> tuple:
        return self.num + (self.den,)


def _frac_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _frac_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    b = _frac_trim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], _frac_trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1] / b[-1]
        q[i] = coef
        for j, d in enumerate(b):
            a[i + j] -= coef * d
    return q, _frac_trim(a[: len(b) - 1] or [Fraction(0)])


def _frac_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _frac_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _frac_trim([x - y for x, y in zip(a, b)])


def field_for_bonds(bonds) -> RealCyclotomicField:
    """Smallest field of the form Q(2cos(pi/N)) holding every finite bond's cosine."""
    N = 1
    for row in bonds:
        for m in row:
            if m != math.inf and m >= 2:
                N = N * m // gcd(N, m)
    return RealCyclotomicField(max(N, 2))
