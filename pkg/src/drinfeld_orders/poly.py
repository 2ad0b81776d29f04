"""Dense univariate polynomials over a finite field, and rational functions.

Coefficients are stored ascending with trailing zeros stripped, so the
empty tuple is the zero polynomial and its degree is the sentinel -1.
Polynomials are immutable and hashable; all arithmetic is exact.

The canonical order used everywhere for deterministic output sorts by
degree first, then lexicographically on coefficients from the leading one
down to the constant, comparing coefficients by their canonical index in
the field.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import DomainError
from .gf import FiniteField


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable):
        coeffs = list(coeffs)
        zero = field.zero
        while coeffs and coeffs[-1] == zero:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: FiniteField) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: FiniteField) -> "Poly":
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field: FiniteField) -> "Poly":
        return cls(field, (field.zero, field.one))

    @classmethod
    def const(cls, field: FiniteField, c) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def from_ints(cls, field: FiniteField, ints: Sequence[int]) -> "Poly":
        """Ascending integer coefficients, reduced into the prime field."""
        return cls(field, (field.from_int(n) for n in ints))

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        """Leading coefficient; zero for the zero polynomial."""
        return self.coeffs[-1] if self.coeffs else self.field.zero

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return self.coeffs == (self.field.one,)

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            F, (F.sub(self.coeff(i), other.coeff(i)) for i in range(n))
        )

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, (F.neg(c) for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F, ())
        zero = F.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == zero:
                continue
            for j, bj in enumerate(b):
                if bj == zero:
                    continue
                out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, out)

    def scale(self, c) -> "Poly":
        """Multiply by a field scalar."""
        F = self.field
        if c == F.zero:
            return Poly(F, ())
        return Poly(F, (F.mul(c, a) for a in self.coeffs))

    def scale_int(self, n: int) -> "Poly":
        return self.scale(self.field.from_int(n))

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise DomainError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        zero = F.zero
        dlc_inv = F.inv(other.lc)
        n = len(other.coeffs)
        rem = list(self.coeffs)
        if len(rem) < n:
            return Poly(F, ()), self
        q = [zero] * (len(rem) - n + 1)
        for i in range(len(rem) - n, -1, -1):
            c = rem[i + n - 1]
            if c == zero:
                continue
            qi = F.mul(c, dlc_inv)
            q[i] = qi
            for j, dj in enumerate(other.coeffs):
                rem[i + j] = F.sub(rem[i + j], F.mul(qi, dj))
        return Poly(F, q), Poly(F, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise DomainError("inexact polynomial division")
        return q

    def divides(self, other: "Poly") -> bool:
        """True when self divides other (self nonzero, or other zero)."""
        if self.is_zero:
            return other.is_zero
        return (other % self).is_zero

    def pow_mod(self, n: int, modulus: "Poly") -> "Poly":
        if n < 0:
            raise DomainError("negative exponent in pow_mod")
        result = Poly.one(self.field) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def monic(self) -> "Poly":
        if self.is_zero:
            raise DomainError("monic of zero polynomial")
        if self.is_monic:
            return self
        return self.scale(self.field.inv(self.lc))

    def evaluate(self, x):
        """Value at a field element x (Horner)."""
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def derivative(self) -> "Poly":
        F = self.field
        return Poly(
            F,
            (F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs) if i),
        )

    def map_coeffs(self, new_field: FiniteField, fn) -> "Poly":
        return Poly(new_field, (fn(c) for c in self.coeffs))

    # -- ordering, formatting ----------------------------------------------

    def sort_key(self):
        """Canonical key: degree, then coefficients leading to constant."""
        idx = self.field.index
        return (self.degree, tuple(idx(c) for c in reversed(self.coeffs)))

    def to_str(self, var: str = "T") -> str:
        if self.is_zero:
            return "0"
        F = self.field
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == F.zero:
                continue
            cs = str(c) if isinstance(c, int) else "(" + ",".join(map(str, c)) + ")"
            if i == 0:
                parts.append(cs)
            else:
                head = "" if c == F.one else cs + "*"
                parts.append(f"{head}{var}" if i == 1 else f"{head}{var}^{i}")
        return "+".join(parts)

    def __repr__(self):
        return f"Poly({self.to_str()})"

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor.  gcd(f, 0) is monic(f)."""
    if f.is_zero and g.is_zero:
        raise DomainError("gcd of two zero polynomials")
    while g:
        f, g = g, f % g
    return f.monic()


def poly_gcdext(f: Poly, g: Poly):
    """(d, s, t) with d = s*f + t*g, d the monic gcd."""
    if f.is_zero and g.is_zero:
        raise DomainError("gcd of two zero polynomials")
    F = f.field
    r0, r1 = f, g
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    u = F.inv(r0.lc)
    return r0.scale(u), s0.scale(u), t0.scale(u)


def poly_crt(pairs):
    """Combine residues [(r_i, m_i)] with pairwise coprime moduli.

    Returns (r, m) with m the product modulus and r reduced mod m.
    """
    it = iter(pairs)
    r, m = next(it)
    for r2, m2 in it:
        d, s, t = poly_gcdext(m, m2)
        if not d.is_one:
            raise DomainError("CRT moduli are not coprime")
        # r + m*s*(r2 - r) is congruent to r mod m and to r2 mod m2
        r = r + m * s * (r2 - r)
        m = m * m2
        r = r % m
    return r, m


def polys_below_degree(field: FiniteField, d: int) -> Iterator[Poly]:
    """All q^d polynomials of degree < d, in canonical index order."""
    q = field.q
    for n in range(q**d):
        coeffs = []
        k = n
        for _ in range(d):
            k, rem = divmod(k, q)
            coeffs.append(field.element(rem))
        yield Poly(field, coeffs)


def valuation(f: Poly, p: Poly) -> int:
    """Exact power of p dividing f (f nonzero, deg p >= 1)."""
    if f.is_zero:
        raise DomainError("valuation of zero polynomial")
    if p.degree < 1:
        raise DomainError("valuation at a constant")
    v = 0
    while True:
        q, r = divmod(f, p)
        if r:
            return v
        f = q
        v += 1


class RatFunc:
    """A rational function num/den in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            den = Poly.one(num.field)
        else:
            g = poly_gcd(num, den)
            if not g.is_one:
                num = num.exact_div(g)
                den = den.exact_div(g)
            u = num.field.inv(den.lc)
            num = num.scale(u)
            den = den.scale(u)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, f: Poly) -> "RatFunc":
        return cls(f, Poly.one(f.field))

    @property
    def is_poly(self) -> bool:
        return self.den.is_one

    def as_poly(self) -> Poly:
        if not self.is_poly:
            raise DomainError("rational function is not a polynomial")
        return self.num

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and other.num == self.num
            and other.den == self.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_poly:
            return f"RatFunc({self.num.to_str()})"
        return f"RatFunc(({self.num.to_str()})/({self.den.to_str()}))"
