"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Numbers are stored at a fixed level N as rational coordinate vectors in
the power basis 1, z, ..., z^(phi(N)-1), z = e^(2*pi*i/N), reduced
eagerly modulo the N-th cyclotomic polynomial.  Mixed-level arithmetic
raises both operands to the lcm level first.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import NotRationalError


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients (ascending, integer) of the n-th cyclotomic polynomial.

    Computed by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("level must be a positive integer")
    # x^n - 1
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_div_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _poly_div_exact(num, den):
    """Exact division of integer polynomials (ascending coefficients)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[-1]
        out[k] = q
        if q:
            for j, dj in enumerate(den):
                num[k + j] -= q * dj
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    count = 0
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            count += 1
    return count


def _reduce_mod_phi(coeffs, n):
    """Reduce a rational polynomial modulo Phi_n; returns phi(n) coords."""
    phi = list(cyclotomic_polynomial(n))
    deg = len(phi) - 1
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[k]
        if c:
            for j in range(deg + 1):
                coeffs[k - deg + j] -= c * phi[j]
        coeffs.pop()
    coeffs += [Fraction(0)] * (deg - len(coeffs))
    return tuple(Fraction(c) for c in coeffs[:deg])


class CycNumber:
    """An element of Q(zeta_N) in reduced power-basis coordinates."""

    __slots__ = ("level", "coords")

    def __init__(self, level: int, coords):
        coords = tuple(Fraction(c) for c in coords)
        deg = euler_phi(level)
        if len(coords) != deg:
            coords = _reduce_mod_phi(coords, level)
        self.level = level
        self.coords = coords

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(value, level: int = 1) -> "CycNumber":
        v = Fraction(value)
        deg = euler_phi(level)
        return CycNumber(level, (v,) + (Fraction(0),) * (deg - 1))

    @staticmethod
    def from_exponents(level: int, weights: dict) -> "CycNumber":
        """Build sum_j weights[j] * zeta_level^j from an exponent dict."""
        coeffs = [Fraction(0)] * level
        for j, w in weights.items():
            coeffs[j % level] += Fraction(w)
        return CycNumber(level, _reduce_mod_phi(coeffs, level))

    # -- level handling ----------------------------------------------------

    def raise_level(self, m: int) -> "CycNumber":
        if m == self.level:
            return self
        if m % self.level != 0:
            raise ValueError("new level must be a multiple of the old one")
        step = m // self.level
        coeffs = [Fraction(0)] * (len(self.coords) * step)
        for j, c in enumerate(self.coords):
            coeffs[j * step] = c
        return CycNumber(m, _reduce_mod_phi(coeffs, m))

    def _common(self, other):
        if not isinstance(other, CycNumber):
            other = CycNumber.from_rational(other)
        lev = self.level * other.level // gcd(self.level, other.level)
        return self.raise_level(lev), other.raise_level(lev)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        a, b = self._common(other)
        return CycNumber(a.level, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.level, tuple(-c for c in self.coords))

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycNumber) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycNumber(self.level, tuple(c * f for c in self.coords))
        a, b = self._common(other)
        out = [Fraction(0)] * (2 * len(a.coords))
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        out[i + j] += x * y
        return CycNumber(a.level, _reduce_mod_phi(out, a.level))

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.level)]
        r0, r1 = phi, list(self.coords)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                inv = 1 / r1[0]
                return CycNumber(self.level, [c * inv for c in s1])
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.inverse()

    def conj(self) -> "CycNumber":
        """Complex conjugation, zeta -> zeta^(-1)."""
        n = self.level
        coeffs = [Fraction(0)] * n
        for j, c in enumerate(self.coords):
            coeffs[(-j) % n] += c
        return CycNumber(n, _reduce_mod_phi(coeffs, n))

    # -- predicates and coercions ------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRationalError("value is not rational: %s" % self)
        return self.coords[0]

    def to_complex(self) -> complex:
        from cmath import exp, pi

        z = exp(2j * pi / self.level)
        total = 0j
        for j, c in enumerate(self.coords):
            if c:
                total += float(c) * z**j
        return total

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.coords == b.coords

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.level, self.coords))

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coords):
            if c:
                terms.append("%s*z^%d" % (c, j) if j else str(c))
        body = " + ".join(terms) if terms else "0"
        return "%s @ level %d" % (body, self.level)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "coords": [[c.numerator, c.denominator] for c in self.coords],
        }


def zeta(n: int, k: int = 1) -> CycNumber:
    """The root of unity e^(2*pi*i*k/n) as an exact cyclotomic number."""
    coeffs = [Fraction(0)] * n
    coeffs[k % n] = Fraction(1)
    return CycNumber(n, _reduce_mod_phi(coeffs, n))


def root_of_unity(theta: Fraction) -> CycNumber:
    """e^(2*pi*i*theta) for rational theta, at level = denominator."""
    theta = Fraction(theta)
    return zeta(theta.denominator, theta.numerator)


# -- small polynomial helpers over Fraction (ascending coefficients) --------


def _poly_divmod(num, den):
    num = list(num)
    while den and not den[-1]:
        den = den[:-1]
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        q[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    while len(num) > 1 and not num[-1]:
        num.pop()
    return q, num


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]
