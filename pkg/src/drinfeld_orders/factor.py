"""Factorisation machinery over finite fields.

Square-free decomposition is characteristic-p aware: when the derivative
vanishes the polynomial is a p-th power and the algorithm recurses on the
exact p-th root, taken coefficient-wise through the inverse Frobenius.
Full factorisation is distinct-degree splitting followed by equal-degree
splitting; the equal-degree stage draws its random elements from a PRNG
seeded with a fixed constant, so output is reproducible run to run.

Also here: exact square roots, divisor enumeration, irreducibility tests,
and reduction of F_q[T]-coefficients into a residue field F_q[T]/(p).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .errors import DomainError
from .gf import ExtensionField, FiniteField
from .poly import Poly, poly_gcd

_SPLIT_SEED = 0x5EED


@dataclass(frozen=True)
class SquarefreeDecomp:
    """f = unit * prod(part^mult); parts monic, square-free, pairwise coprime."""

    field: FiniteField
    unit: object
    parts: tuple  # ((Poly, int), ...), multiplicities strictly increasing

    def expand(self) -> Poly:
        out = Poly.const(self.field, self.unit)
        for part, mult in self.parts:
            out = out * part**mult
        return out

    def part(self, mult: int) -> Poly:
        for p, m in self.parts:
            if m == mult:
                return p
        return Poly.one(self.field)


@dataclass(frozen=True)
class Factorization:
    """f = unit * prod(factor^mult); factors monic irreducible, canonical order."""

    field: FiniteField
    unit: object
    factors: tuple  # ((Poly, int), ...)

    def expand(self) -> Poly:
        out = Poly.const(self.field, self.unit)
        for p, m in self.factors:
            out = out * p**m
        return out


@dataclass(frozen=True)
class SqrtResult:
    """Monic square root of the monic part; unit_root is a square root of
    the leading coefficient when one exists in the field, else None."""

    root: Poly
    unit_root: Optional[object]


def _pth_root(f: Poly) -> Poly:
    """Exact p-th root of a polynomial with vanishing derivative."""
    F = f.field
    p = F.p
    coeffs = []
    for i in range(0, f.degree + 1, p):
        coeffs.append(F.pth_root(f.coeff(i)))
    return Poly(F, coeffs)


def _squarefree_monic(f: Poly) -> dict:
    """Multiplicity -> monic square-free part, for monic f of degree >= 1."""
    F = f.field
    p = F.p
    out: dict[int, Poly] = {}
    deriv = f.derivative()
    if deriv.is_zero:
        for mult, part in _squarefree_monic(_pth_root(f)).items():
            out[mult * p] = part
        return out
    c = poly_gcd(f, deriv)
    w = f.exact_div(c)
    i = 1
    while not w.is_one:
        y = poly_gcd(w, c)
        part = w.exact_div(y)
        if not part.is_one:
            out[i] = part
        w = y
        c = c.exact_div(y)
        i += 1
    if not c.is_one:
        # leftover multiplicities divisible by p
        for mult, part in _squarefree_monic(_pth_root(c)).items():
            out[mult * p] = out[mult * p] * part if mult * p in out else part
    return out


def squarefree_decompose(f: Poly) -> SquarefreeDecomp:
    if f.is_zero:
        raise DomainError("square-free decomposition of zero")
    unit = f.lc
    if f.degree == 0:
        return SquarefreeDecomp(f.field, unit, ())
    parts = _squarefree_monic(f.monic())
    ordered = tuple((parts[m], m) for m in sorted(parts))
    return SquarefreeDecomp(f.field, unit, ordered)


def _distinct_degree(f: Poly):
    """Split monic square-free f into (product-of-degree-d-factors, d) pieces."""
    F = f.field
    q = F.q
    x = Poly.x(F)
    out = []
    g = f
    h = x % g
    d = 0
    while g.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(q, g)
        c = poly_gcd(h - x, g)
        if c.degree > 0:
            out.append((c, d))
            g = g.exact_div(c)
            h = h % g
    if g.degree > 0:
        out.append((g, g.degree))
    return out


def _random_poly(field: FiniteField, max_deg: int, rng: random.Random) -> Poly:
    return Poly(field, (field.element(rng.randrange(field.q)) for _ in range(max_deg + 1)))


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list:
    """Split monic f, a product of distinct irreducibles of degree d."""
    if f.degree == d:
        return [f]
    F = f.field
    q = F.q
    while True:
        a = _random_poly(F, f.degree - 1, rng)
        if a.degree < 1:
            continue
        c = poly_gcd(a, f)
        if 0 < c.degree < f.degree:
            break
        if F.p == 2:
            # trace map onto GF(2): a + a^2 + a^4 + ... has gcd splits
            s = F.degree * d
            t = a
            b = a
            for _ in range(s - 1):
                t = t.pow_mod(2, f)
                b = b + t
            if b.is_zero:
                continue
            c = poly_gcd(b, f)
        else:
            b = a.pow_mod((q**d - 1) // 2, f) - Poly.one(F)
            if b.is_zero:
                continue
            c = poly_gcd(b, f)
        if 0 < c.degree < f.degree:
            break
    return _equal_degree(c, d, rng) + _equal_degree(f.exact_div(c), d, rng)


def factor(f: Poly) -> Factorization:
    """Complete factorisation into monic irreducibles over the field."""
    if f.is_zero:
        raise DomainError("factorisation of zero")
    unit = f.lc
    if f.degree == 0:
        return Factorization(f.field, unit, ())
    rng = random.Random(_SPLIT_SEED)
    counts: dict[Poly, int] = {}
    decomp = squarefree_decompose(f)
    for part, mult in decomp.parts:
        for piece, d in _distinct_degree(part):
            for prime in _equal_degree(piece, d, rng):
                counts[prime] = counts.get(prime, 0) + mult
    ordered = tuple(
        (p, counts[p]) for p in sorted(counts, key=lambda t: t.sort_key())
    )
    return Factorization(f.field, unit, ordered)


def _prime_divisors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly) -> bool:
    """Rabin's test; independent of the splitting machinery above."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    F = f.field
    q = F.q
    x = Poly.x(F)
    h = x.pow_mod(q**n, f)
    if h != x % f:
        return False
    for ell in _prime_divisors(n):
        h = x.pow_mod(q ** (n // ell), f)
        g = h - x
        if g.is_zero or poly_gcd(g, f).degree > 0:
            return False
    return True


def exact_sqrt(f: Poly) -> Optional[SqrtResult]:
    """Square root data for f, or None when monic(f) is not a square."""
    if f.is_zero:
        raise DomainError("square root of zero")
    F = f.field
    unit = f.lc
    unit_root = F.sqrt(unit)
    if f.degree == 0:
        return SqrtResult(Poly.one(F), unit_root)
    if f.degree % 2:
        return None
    decomp = squarefree_decompose(f)
    root = Poly.one(F)
    for part, mult in decomp.parts:
        if mult % 2:
            return None
        root = root * part ** (mult // 2)
    return SqrtResult(root, unit_root)


def divisors(f: Poly) -> list:
    """All monic divisors of f, sorted canonically."""
    if f.is_zero:
        raise DomainError("divisors of zero")
    fac = factor(f)
    out = []
    choices = [range(m + 1) for _, m in fac.factors]
    for exponents in product(*choices):
        d = Poly.one(f.field)
        for (p, _), e in zip(fac.factors, exponents):
            d = d * p**e
        out.append(d)
    out.sort(key=lambda t: t.sort_key())
    return out


def make_extension_field(base: FiniteField, modulus: Poly) -> ExtensionField:
    """Extension of base by a checked monic irreducible modulus."""
    if not modulus.is_monic or modulus.degree < 1:
        raise DomainError("extension modulus must be monic of degree >= 1")
    if not is_irreducible(modulus):
        raise DomainError("extension modulus is reducible")
    return ExtensionField(base, modulus.coeffs)


def residue_field(base: FiniteField, p: Poly) -> ExtensionField:
    """The field F_q[T]/(p) for monic irreducible p."""
    return make_extension_field(base, p)


def reduce_mod(c: Poly, R: ExtensionField):
    """Image of c in the residue field R = F_q[T]/(p)."""
    p = Poly(R.base, R.modulus)
    r = c % p
    pad = (R.base.zero,) * (R.e - len(r.coeffs))
    return r.coeffs + pad


def residue_factor(coeffs: Sequence[Poly], p: Poly):
    """Factor a polynomial in x with F_q[T] coefficients modulo the prime p.

    coeffs are ascending in x.  Returns (residue field, Factorization of the
    reduced polynomial over it).
    """
    R = residue_field(coeffs[0].field, p)
    reduced = Poly(R, (reduce_mod(c, R) for c in coeffs))
    if reduced.is_zero:
        raise DomainError("polynomial vanishes modulo p")
    return R, factor(reduced)
