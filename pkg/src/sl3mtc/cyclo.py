"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value is stored as an integer coefficient vector in the power basis
1, z, ..., z^(phi(N)-1) together with a positive common denominator, where
z = exp(2 pi i / N).  Every result is reduced modulo the N-th cyclotomic
polynomial, so equal values at the same conductor have equal vectors.
Values at different conductors are compared after embedding both into the
lcm of the conductors.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Cyclo",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
    "root_of_unity_exponent",
    "to_complex",
]


def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # num / den for integer polynomials (low degree first), den monic.
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for t in range(dd + 1):
                num[i - dd + t] -= c * den[t]
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    Obtained by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class _Field:
    """Per-conductor tables: Phi_N and the reductions of z^e for 0 <= e < N."""

    __slots__ = ("n", "phi", "poly", "mono")

    def __init__(self, n: int):
        self.n = n
        self.poly = cyclotomic_polynomial(n)
        self.phi = len(self.poly) - 1
        mono = []
        cur = [1] + [0] * (self.phi - 1)
        for _ in range(n):
            mono.append(tuple(cur))
            # multiply by z, then reduce the overflow term
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for t in range(self.phi):
                    cur[t] -= top * self.poly[t]
        self.mono = mono

    def reduce(self, vec: list[int]) -> list[int]:
        phi, poly = self.phi, self.poly
        for i in range(len(vec) - 1, phi - 1, -1):
            c = vec[i]
            if c:
                base = i - phi
                for t in range(phi):
                    vec[base + t] -= c * poly[t]
        if len(vec) < phi:
            vec = vec + [0] * (phi - len(vec))
        return vec[:phi]


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = math.gcd(den, *num)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    if not any(num):
        den = 1
    return tuple(num), den


class Cyclo:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, num, den: int = 1, *, _canonical: bool = False):
        if n < 1:
            raise ValueError("conductor must be positive")
        if _canonical:
            self.n, self.num, self.den = n, num, den
            return
        f = _field(n)
        vec = f.reduce([int(c) for c in num])
        if den == 0:
            raise ZeroDivisionError("division by zero")
        self.num, self.den = _normalize(vec, int(den))
        self.n = n

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_rational(cls, value, n: int = 1) -> "Cyclo":
        value = Fraction(value)
        phi = _field(n).phi
        num = [value.numerator] + [0] * (phi - 1)
        return cls(n, tuple(num), value.denominator, _canonical=True)

    @classmethod
    def zero(cls, n: int = 1) -> "Cyclo":
        return cls.from_rational(0, n)

    @classmethod
    def one(cls, n: int = 1) -> "Cyclo":
        return cls.from_rational(1, n)

    @classmethod
    def from_coeffs(cls, n: int, coeffs) -> "Cyclo":
        """Build from rational power-basis coefficients (length at most N)."""
        fr = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in fr)) if fr else 1
        return cls(n, [int(c * den) for c in fr], den)

    # -- accessors --------------------------------------------------------
    @property
    def conductor(self) -> int:
        return self.n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- conductor changes ------------------------------------------------
    def embed(self, m: int) -> "Cyclo":
        """The same value viewed in Q(zeta_m); requires N | m."""
        if m % self.n:
            raise ValueError("incompatible conductor")
        if m == self.n:
            return self
        step = m // self.n
        f = _field(m)
        vec = [0] * f.phi
        for i, c in enumerate(self.num):
            if c:
                mono = f.mono[(i * step) % m]
                for t, v in enumerate(mono):
                    if v:
                        vec[t] += c * v
        num, den = _normalize(vec, self.den)
        return Cyclo(m, num, den, _canonical=True)

    def _unify(self, other) -> tuple["Cyclo", "Cyclo"]:
        if not isinstance(other, Cyclo):
            other = Cyclo.from_rational(other, self.n)
        if other.n == self.n:
            return self, other
        m = math.lcm(self.n, other.n)
        return self.embed(m), other.embed(m)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "Cyclo":
        try:
            a, b = self._unify(other)
        except TypeError:
            return NotImplemented
        if a.den == b.den:
            num = [x + y for x, y in zip(a.num, b.num)]
            den = a.den
        else:
            num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
            den = a.den * b.den
        num, den = _normalize(num, den)
        return Cyclo(a.n, num, den, _canonical=True)

    __radd__ = __add__

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.n, tuple(-c for c in self.num), self.den, _canonical=True)

    def __sub__(self, other) -> "Cyclo":
        if not isinstance(other, Cyclo):
            other = Cyclo.from_rational(other, self.n)
        return self + (-other)

    def __rsub__(self, other) -> "Cyclo":
        return (-self) + other

    def __mul__(self, other) -> "Cyclo":
        if not isinstance(other, Cyclo):
            try:
                r = Fraction(other)
            except TypeError:
                return NotImplemented
            num, den = _normalize([c * r.numerator for c in self.num], self.den * r.denominator)
            return Cyclo(self.n, num, den, _canonical=True)
        a, b = self._unify(other)
        f = _field(a.n)
        phi = f.phi
        vec = [0] * (2 * phi - 1)
        bnz = [(j, y) for j, y in enumerate(b.num) if y]
        for i, x in enumerate(a.num):
            if x:
                for j, y in bnz:
                    vec[i + j] += x * y
        num, den = _normalize(f.reduce(vec), a.den * b.den)
        return Cyclo(a.n, num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        f = _field(self.n)
        a = _trim([Fraction(c, self.den) for c in self.num])
        inv = _poly_inverse_mod(a, [Fraction(c) for c in f.poly])
        return Cyclo.from_coeffs(self.n, inv)

    def __truediv__(self, other) -> "Cyclo":
        if not isinstance(other, Cyclo):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Cyclo":
        return self.inverse() * other

    def __pow__(self, e: int) -> "Cyclo":
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclo.one(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "Cyclo":
        """Complex conjugate, i.e. the automorphism z -> z^(N-1)."""
        f = _field(self.n)
        vec = [0] * f.phi
        for i, c in enumerate(self.num):
            if c:
                mono = f.mono[(-i) % self.n]
                for t, v in enumerate(mono):
                    if v:
                        vec[t] += c * v
        num, den = _normalize(vec, self.den)
        return Cyclo(self.n, num, den, _canonical=True)

    def is_real(self) -> bool:
        return self == self.conjugate()

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclo):
            try:
                other = Cyclo.from_rational(other, self.n)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._unify(other)
        return a.den == b.den and a.num == b.num

    __hash__ = None  # equality crosses conductors, so no stable hash

    # -- rendering --------------------------------------------------------
    def __complex__(self) -> complex:
        return to_complex(self)

    def __float__(self) -> float:
        return to_complex(self).real

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*z{self.n}^{i}")
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {"conductor": self.n, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "Cyclo":
        return cls.from_coeffs(int(obj["conductor"]), [Fraction(c) for c in obj["coeffs"]])


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [Fraction(0)], _trim(a)
    q = [Fraction(0)] * (len(a) - db)
    lead = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        if c:
            q[i - db] = c
            for t in range(db + 1):
                a[i - db + t] -= c * b[t]
    return _trim(q), _trim(a[:db] or [Fraction(0)])


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a: list[Fraction], modulus: list[Fraction]) -> list[Fraction]:
    # Invariant: s_i * a == r_i (mod modulus).
    r0, r1 = modulus, a
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1 or r1[0] != 0:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("division by zero")
    c = r0[0]
    return [x / c for x in s0]


def root_of_unity(n: int, j: int = 1) -> Cyclo:
    """zeta_n^j = exp(2 pi i j / n), stored at conductor n."""
    if n < 1:
        raise ValueError("conductor must be positive")
    f = _field(n)
    return Cyclo(n, f.mono[j % n], 1, _canonical=True)


def root_of_unity_exponent(a: Cyclo) -> Fraction | None:
    """Return r in [0, 1) with a == exp(2 pi i r), or None if a is not a root of unity."""
    m = a.n if a.n % 2 == 0 else 2 * a.n
    b = a.embed(m)
    if b.den != 1:
        return None
    f = _field(m)
    for j in range(m):
        if f.mono[j] == b.num:
            return Fraction(j, m)
    return None


def to_complex(a: Cyclo, precision: int = 15) -> complex:
    """Float embedding under zeta_N -> exp(2 pi i / N).

    Terms are accumulated with math.fsum, so the result carries the full
    double precision; ``precision`` above 15 digits is not representable.
    """
    if not 1 <= precision <= 15:
        raise ValueError("precision must be between 1 and 15 digits")
    re = []
    im = []
    for i, c in enumerate(a.num):
        if c:
            w = cmath.exp(2j * math.pi * i / a.n)
            re.append(c * w.real)
            im.append(c * w.imag)
    return complex(math.fsum(re) / a.den, math.fsum(im) / a.den)
