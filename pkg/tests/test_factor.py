from __future__ import annotations

import random

import pytest

from drinfeld_orders import (
    DomainError,
    Poly,
    PrimeField,
    divisors,
    exact_sqrt,
    factor,
    is_irreducible,
    residue_factor,
    squarefree_decompose,
)
from drinfeld_orders.poly import polys_below_degree

from test_gf import FIELDS
from test_poly import rand_poly


def test_squarefree_worked_example():
    # over F5: T^2 (T+4)^2 (T^2+4T+2) -> D1 = T^2+4T+2, D2 = T(T+4)
    F = PrimeField(5)
    T = Poly.x(F)
    t4 = Poly.from_ints(F, [4, 1])
    quad = Poly.from_ints(F, [2, 4, 1])
    f = T * T * t4 * t4 * quad
    decomp = squarefree_decompose(f)
    assert decomp.unit == F.one
    assert dict((m, p) for p, m in decomp.parts) == {1: quad, 2: T * t4}
    assert decomp.expand() == f


def test_squarefree_already_squarefree():
    F = PrimeField(5)
    f = Poly.from_ints(F, [2, 4, 1])
    decomp = squarefree_decompose(f)
    assert decomp.unit == F.one
    assert decomp.parts == ((f, 1),)


def test_squarefree_pth_power_branch():
    # T^5 over F5 has zero derivative; the p-th-root path must fire
    F = PrimeField(5)
    f = Poly.x(F) ** 5
    decomp = squarefree_decompose(f)
    assert decomp.parts == ((Poly.x(F), 5),)
    assert decomp.expand() == f


def test_squarefree_pth_power_over_extension_fields():
    # the coefficient-wise inverse Frobenius must handle tuple elements
    F4 = next(f for f in FIELDS if f.q == 4)
    w4 = F4.element(2)
    base = Poly(F4, (w4, F4.one))  # T + w
    f = base**4  # derivative vanishes twice (p = 2)
    decomp = squarefree_decompose(f)
    assert decomp.parts == ((base, 4),)
    assert decomp.expand() == f

    F9 = next(f for f in FIELDS if f.q == 9)
    w9 = F9.element(2)
    g = (Poly(F9, (w9, F9.one)) * Poly(F9, (F9.one, F9.one))) ** 3
    decomp = squarefree_decompose(g)
    assert len(decomp.parts) == 1 and decomp.parts[0][1] == 3
    assert decomp.expand() == g


def test_squarefree_mixed_tame_and_wild_multiplicities():
    # multiplicities 1, 2 and p together, p = 5
    F = PrimeField(5)
    T = Poly.x(F)
    one = Poly.one(F)
    f = (T * T + one) * (T + one) ** 2 * T**5
    decomp = squarefree_decompose(f)
    assert dict((m, p) for p, m in decomp.parts) == {
        1: T * T + one,
        2: T + one,
        5: T,
    }
    assert decomp.expand() == f


def test_squarefree_zero_rejected():
    F = PrimeField(5)
    with pytest.raises(DomainError):
        squarefree_decompose(Poly.zero(F))


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_squarefree_roundtrip_random(F):
    rng = random.Random(F.q * 101)
    for _ in range(40):
        f = rand_poly(F, 12, rng)
        if f.is_zero:
            continue
        decomp = squarefree_decompose(f)
        assert decomp.expand() == f
        seen = set()
        for part, mult in decomp.parts:
            assert part.is_monic and mult >= 1
            assert mult not in seen
            seen.add(mult)
            # parts are square-free: gcd with derivative is 1 unless deriv = 0
            deriv = part.derivative()
            if not deriv.is_zero:
                from drinfeld_orders import poly_gcd

                assert poly_gcd(part, deriv).is_one


def test_factor_worked_examples():
    F = PrimeField(5)
    x = Poly.x(F)
    x3 = Poly.from_ints(F, [3, 1])
    f = x * x3 * x3
    fac = factor(f)
    assert fac.unit == F.one
    assert fac.factors == ((x, 1), (x3, 2))
    # T^2+4T+2 is irreducible over F5 (no roots, degree 2)
    quad = Poly.from_ints(F, [2, 4, 1])
    assert all(quad.evaluate(c) != F.zero for c in F.elements())
    assert factor(quad).factors == ((quad, 1),)
    assert is_irreducible(quad)


def test_factor_irreducible_input():
    F = PrimeField(5)
    f = Poly.from_ints(F, [2, 4, 1])
    assert factor(f).factors == ((f, 1),)


def _independent_irreducible(f) -> bool:
    """Test-side check: root scan for cubics and below, Frobenius fixed-point
    counting for higher degrees."""
    from drinfeld_orders import poly_gcd

    F = f.field
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    if any(f.evaluate(c) == F.zero for c in F.elements()):
        return False
    if n <= 3:
        return True  # rootless quadratics and cubics are irreducible
    x = Poly.x(F)
    for d in range(2, n):
        h = x.pow_mod(F.q**d, f) - x
        if h.is_zero or not poly_gcd(h, f).is_one:
            return False
    return (x.pow_mod(F.q**n, f) - x).is_zero


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_factor_roundtrip_and_irreducibility_random(F):
    rng = random.Random(F.q * 103)
    for _ in range(40):
        f = rand_poly(F, 12, rng)
        if f.is_zero:
            continue
        fac = factor(f)
        assert fac.expand() == f
        for prime, mult in fac.factors:
            assert prime.is_monic and mult >= 1
            assert _independent_irreducible(prime)


def test_factor_deterministic():
    F = PrimeField(7)
    rng = random.Random(99)
    for _ in range(20):
        f = rand_poly(F, 10, rng)
        if f.is_zero:
            continue
        assert factor(f) == factor(f)


def test_exact_sqrt_worked_examples():
    F = PrimeField(5)
    T = Poly.x(F)
    res = exact_sqrt(T * T)
    assert res is not None and res.root == T and res.unit_root == F.one
    res = exact_sqrt(Poly.one(F))
    assert res is not None and res.root.is_one
    assert exact_sqrt(T) is None


def test_exact_sqrt_unit_part():
    F = PrimeField(5)
    T = Poly.x(F)
    # 2 is not a square mod 5; 4 is
    res = exact_sqrt((T * T).scale(F.element(4)))
    assert res is not None and res.root == T and F.mul(res.unit_root, res.unit_root) == F.element(4)
    res = exact_sqrt((T * T).scale(F.element(2)))
    assert res is not None and res.root == T and res.unit_root is None


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_exact_sqrt_left_inverse_of_squaring(F):
    rng = random.Random(F.q * 107)
    for _ in range(40):
        s = rand_poly(F, 6, rng, monic=True)
        res = exact_sqrt(s * s)
        assert res is not None and res.root == s
    # s^2 * T has odd multiplicity at T, never a square
    for _ in range(20):
        s = rand_poly(F, 3, rng, monic=True)
        assert exact_sqrt(s * s * Poly.x(F)) is None


def test_divisors_worked_examples():
    F = PrimeField(5)
    T = Poly.x(F)
    one = Poly.one(F)
    assert divisors(T) == [one, T]
    t4 = Poly.from_ints(F, [4, 1])
    assert divisors(T * t4) == [one, T, t4, T * t4]
    assert divisors(one) == [one]


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_divisors_count_and_divisibility(F):
    rng = random.Random(F.q * 109)
    for _ in range(40):
        f = rand_poly(F, 12, rng)
        if f.is_zero:
            continue
        fac = factor(f)
        ds = divisors(f)
        want = 1
        for _, m in fac.factors:
            want *= m + 1
        assert len(ds) == want
        assert len(set(ds)) == want
        assert all(d.divides(f) for d in ds)
        assert ds == sorted(ds, key=lambda t: t.sort_key())


def test_residue_factor_worked_example(example_weil):
    # M mod T over F5 factors as x (x+3)^2
    W = example_weil
    R, fac = residue_factor(list(W.coefficients()), W.pv)
    assert R.q == 5
    pattern = sorted((p.degree, m) for p, m in fac.factors)
    assert pattern == [(1, 1), (1, 2)]
    roots = sorted(R.index(p.coeff(0)) for p, _ in fac.factors)
    assert roots == [0, 3]  # factors x and x+3


def test_residue_factor_supersingular_shape():
    F = PrimeField(5)
    T = Poly.x(F)
    coeffs = [(T**2).scale(F.element(2)), T, T, Poly.one(F)]  # x^3+Tx^2+Tx+2T^2
    R, fac = residue_factor(coeffs, T)
    assert [(p.degree, m) for p, m in fac.factors] == [(1, 3)]


def test_residue_factor_quadratic_prime(example_weil):
    # substitute T = 1 by reducing mod T+4 over F5 and factor by root search:
    # x^3 + 2x^2 + 3x + 4 has the root 1, quotient x^2+3x+1 = (x+4)^2, so
    # the whole reduction is (x+4)^3
    F = PrimeField(5)
    W = example_weil
    p = Poly.from_ints(F, [4, 1])
    R, fac = residue_factor(list(W.coefficients()), p)
    assert R.q == 5
    want = Poly(R, [(F.element(c),) for c in (4, 3, 2, 1)])
    assert fac.expand() == want
    x_plus_4 = Poly(R, [(F.element(4),), (F.element(1),)])
    assert fac.factors == ((x_plus_4, 3),)


def test_polys_below_degree_enumeration():
    F = PrimeField(3)
    got = list(polys_below_degree(F, 2))
    assert len(got) == 9
    assert len(set(got)) == 9
    assert all(f.degree < 2 for f in got)
