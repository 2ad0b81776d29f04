"""Independent oracles and instance generators shared by the test suite.

Everything here deliberately avoids the code paths it is used to check:
ring closure is decided by multiplying companion-matrix representations of
the generators and testing lattice membership coordinate-wise, the field
discriminant is recomputed from the trace form, and the endomorphism-ring
enumeration is cross-checked against a brute-force sweep over every HNF
lattice between A[pi] and the maximal order.
"""

from __future__ import annotations

import random

from drinfeld_orders import (
    BadConstantTermError,
    CandidateBoundExceededError,
    ClassAnalysis,
    NotWeilAtVError,
    OrderHNF,
    Poly,
    PrimeField,
    RatFunc,
    ReducibleError,
    WeilCubic,
    analyze_weil_class,
    divisors,
    poly_gcd,
)
from drinfeld_orders.poly import polys_below_degree

# instance generation may hit these; anything else (in particular
# InternalInconsistencyError) is a bug and must propagate
EXPECTED_REJECTIONS = (
    ReducibleError,
    BadConstantTermError,
    NotWeilAtVError,
    CandidateBoundExceededError,
)

# -- 3x3 polynomial matrices -------------------------------------------------


def mat_mul(a, b):
    zero = Poly.zero(a[0][0].field)
    return tuple(
        tuple(
            sum((a[i][k] * b[k][j] for k in range(3)), start=zero)
            for j in range(3)
        )
        for i in range(3)
    )


def mat_add(a, b):
    return tuple(tuple(a[i][j] + b[i][j] for j in range(3)) for i in range(3))


def mat_scale(a, f: Poly):
    return tuple(tuple(f * a[i][j] for j in range(3)) for i in range(3))


def identity_matrix(field):
    one, zero = Poly.one(field), Poly.zero(field)
    return ((one, zero, zero), (zero, one, zero), (zero, zero, one))


def companion_matrix(sf):
    """Multiplication by pi~ on the basis (1, pi~, pi~^2) of k(pi)."""
    F = sf.c1.field
    zero = Poly.zero(F)
    one = Poly.one(F)
    return (
        (zero, zero, -sf.c2),
        (one, zero, -sf.c1),
        (zero, one, zero),
    )


def omega2_numerator(sf, mo):
    """I * (matrix of omega2): alpha2*Id + beta2*C + C^2."""
    c = companion_matrix(sf)
    c2 = mat_mul(c, c)
    F = sf.c1.field
    return mat_add(
        mat_add(mat_scale(identity_matrix(F), mo.alpha2), mat_scale(c, mo.beta2)),
        c2,
    )


def element_in_lattice(order: OrderHNF, coords, den: Poly, mo) -> bool:
    """Membership of (x + y*pi~ + z*pi~^2)/den in the lattice of `order`.

    Rewrites over (1, omega1, omega2) and runs the triangular division
    chain with exact polynomial divisibility only.
    """
    x, y, z = coords
    u0 = x - z * mo.alpha2
    u1 = y - z * mo.beta2
    u2 = z * mo.index
    dc = den * order.c
    lam, r = divmod(u1, dc)
    if r:
        return False
    q, r = divmod(u2 - den * lam * order.b, den * order.a)
    if r:
        return False
    return (u0 % den).is_zero


def closure_oracle(order: OrderHNF, sf, mo) -> bool:
    """Ring closure via generator products in companion-matrix form."""
    c_mat = companion_matrix(sf)
    w2n = omega2_numerator(sf, mo)
    I = mo.index
    g1n = mat_add(mat_scale(c_mat, order.c * I), mat_scale(w2n, order.b))
    g2n = mat_scale(w2n, order.a)
    den = I * I
    for left, right in ((g1n, g1n), (g1n, g2n), (g2n, g2n)):
        p = mat_mul(left, right)
        coords = (p[0][0], p[1][0], p[2][0])
        if not element_in_lattice(order, coords, den, mo):
            return False
    return True


def frobenius_coords(W: WeilCubic, sf):
    """pi and pi^2 over (1, pi~, pi~^2) with denominator 1."""
    F = W.field
    t = W.a1.scale(F.inv(F.from_int(3)))
    g = sf.g
    zero = Poly.zero(F)
    pi = (-t, g, zero)
    pi2 = (t * t, -(t * g).scale_int(2), g * g)
    return pi, pi2


def sandwich_endo_oracle(analysis: ClassAnalysis):
    """Every HNF lattice between A[pi] and O_max that is a ring containing
    the Frobenius and is maximal above v, by exhaustive sweep."""
    W, sf, mo, local = analysis.weil, analysis.sf, analysis.mo, analysis.local
    F = W.field
    g = sf.g
    one = Poly.one(F)
    pi, pi2 = frobenius_coords(W, sf)
    accepted = []
    for c in divisors(g):
        for a in divisors(g * g * mo.index):
            for b in polys_below_degree(F, a.degree):
                order = OrderHNF(a=a, b=b, c=c)
                if not element_in_lattice(order, pi, one, mo):
                    continue
                if not element_in_lattice(order, pi2, one, mo):
                    continue
                if local.pv_divides_a2 and poly_gcd(W.pv, a * c).degree > 0:
                    continue
                if not closure_oracle(order, sf, mo):
                    continue
                accepted.append(order)
    return accepted


def trace_form_discriminant(sf, mo) -> Poly:
    """disc(1, omega1, omega2) recomputed from the trace pairing."""
    F = sf.c1.field
    c_mat = companion_matrix(sf)
    w2n = omega2_numerator(sf, mo)
    I = RatFunc.from_poly(mo.index)
    basis = [
        [[RatFunc.from_poly(e) for e in row] for row in identity_matrix(F)],
        [[RatFunc.from_poly(e) for e in row] for row in c_mat],
        [[RatFunc.from_poly(e) / I for e in row] for row in w2n],
    ]

    def rmul(a, b):
        out = []
        for i in range(3):
            row = []
            for j in range(3):
                acc = RatFunc.from_poly(Poly.zero(F))
                for k in range(3):
                    acc = acc + a[i][k] * b[k][j]
                row.append(acc)
            out.append(row)
        return out

    def rtrace(m):
        return m[0][0] + m[1][1] + m[2][2]

    gram = [[rtrace(rmul(basis[i], basis[j])) for j in range(3)] for i in range(3)]
    det = (
        gram[0][0] * (gram[1][1] * gram[2][2] - gram[1][2] * gram[2][1])
        - gram[0][1] * (gram[1][0] * gram[2][2] - gram[1][2] * gram[2][0])
        + gram[0][2] * (gram[1][0] * gram[2][1] - gram[1][1] * gram[2][0])
    )
    return det.as_poly()


def kelem_matches_element(elem, coeff_omega1, coeff_omega2, analysis) -> bool:
    """Check that a KElem over pi equals c*omega1 + b*omega2 in k(pi).

    Works in the companion-matrix representation of the original cubic M
    (basis 1, pi, pi^2) with rational-function entries, fully independent
    of the skew machinery that consumes the KElem.
    """
    W, sf, mo = analysis.weil, analysis.sf, analysis.mo
    F = W.field
    zero = RatFunc.from_poly(Poly.zero(F))
    one = RatFunc.from_poly(Poly.one(F))

    def rmat(rows):
        return [[RatFunc.from_poly(p) for p in row] for row in rows]

    def rmul(a, b):
        return [
            [
                sum((a[i][k] * b[k][j] for k in range(3)), start=zero)
                for j in range(3)
            ]
            for i in range(3)
        ]

    def radd(a, b):
        return [[a[i][j] + b[i][j] for j in range(3)] for i in range(3)]

    def rscale(a, s):
        return [[s * a[i][j] for j in range(3)] for i in range(3)]

    c_m = rmat(
        (
            (Poly.zero(F), Poly.zero(F), -W.a0),
            (Poly.one(F), Poly.zero(F), -W.a2),
            (Poly.zero(F), Poly.one(F), -W.a1),
        )
    )
    eye = [[one if i == j else zero for j in range(3)] for i in range(3)]
    t = RatFunc.from_poly(W.a1.scale(F.inv(F.from_int(3))))
    g = RatFunc.from_poly(sf.g)
    pt = rscale(radd(c_m, rscale(eye, t)), one / g)  # matrix of pi~
    alpha2 = RatFunc.from_poly(mo.alpha2)
    beta2 = RatFunc.from_poly(mo.beta2)
    idx = RatFunc.from_poly(mo.index)
    w2 = rscale(
        radd(radd(rscale(eye, alpha2), rscale(pt, beta2)), rmul(pt, pt)),
        one / idx,
    )
    want = radd(
        rscale(pt, RatFunc.from_poly(coeff_omega1)),
        rscale(w2, RatFunc.from_poly(coeff_omega2)),
    )
    d = RatFunc.from_poly(elem.d)
    got = rscale(
        radd(
            radd(
                rscale(eye, RatFunc.from_poly(elem.n0)),
                rscale(c_m, RatFunc.from_poly(elem.n1)),
            ),
            rscale(rmul(c_m, c_m), RatFunc.from_poly(elem.n2)),
        ),
        one / d,
    )
    return all(got[i][j] == want[i][j] for i in range(3) for j in range(3))


# -- instance generation -----------------------------------------------------


def paper_weil(F=None) -> WeilCubic:
    F = F or PrimeField(5)
    return WeilCubic(
        field=F,
        a1=Poly.from_ints(F, [1, 1]),
        a2=Poly.from_ints(F, [4, 3, 1]),
        mu=F.element(4),
        pv=Poly.x(F),
        m=3,
    )


def _random_poly(F, max_deg, rng):
    return Poly(F, (F.element(rng.randrange(F.q)) for _ in range(max_deg + 1)))


_IRREDUCIBLE_QUADRATIC = {5: [2, 0, 1], 7: [1, 0, 1]}  # T^2+2 over F5, T^2+1 over F7


def random_instance_pool(count=25, seed=20240, max_index_degree=2):
    """Deterministic pool of validated desk-scale instances over F5 and F7,
    every one with deg I <= max_index_degree, biased to include higher
    heights, quadratic pv, nontrivial index and nontrivial content g.

    Quotas guarantee at least eight instances with deg I = 1 and three with
    deg I = 2, so the enumeration and closure cross-checks see candidate
    spaces that are actually populated."""
    rng = random.Random(seed)
    fields = {5: PrimeField(5), 7: PrimeField(7)}
    pool = []
    seen = set()

    def index_degree_count(d):
        return sum(1 for a in pool if a.mo.index.degree == d)

    def try_instance(W, cap_trivial=None):
        try:
            analysis = analyze_weil_class(W, candidate_bound=200_000)
        except EXPECTED_REJECTIONS:
            return False
        if analysis.mo.index.degree > max_index_degree:
            return False
        if cap_trivial is not None and analysis.mo.index.degree == 0:
            if index_degree_count(0) >= cap_trivial:
                return False
        key = (W.field.q, W.a1, W.a2, W.mu, W.pv, W.m)
        if key in seen:
            return False
        seen.add(key)
        pool.append(analysis)
        return True

    # engineered coverage: the worked F5 instance, nontrivial g, h = 2, h = 3
    F5 = fields[5]
    T5 = Poly.x(F5)
    try_instance(paper_weil(F5))
    try_instance(
        WeilCubic(
            field=F5,
            a1=T5,
            a2=Poly.from_ints(F5, [3, 2, 2, 1]),
            mu=F5.element(2),
            pv=Poly.from_ints(F5, [2, 1]),
            m=2,
        )
    )
    try_instance(
        WeilCubic(
            field=F5,
            a1=T5,
            a2=Poly.from_ints(F5, [4, 0, 0, 2]),
            mu=F5.element(2),
            pv=Poly.from_ints(F5, [2, 1]),
            m=2,
        )
    )
    try_instance(
        WeilCubic(field=F5, a1=Poly.one(F5), a2=T5, mu=F5.element(2), pv=T5, m=1)
    )
    try_instance(
        WeilCubic(field=F5, a1=T5, a2=T5, mu=F5.element(2), pv=T5, m=1)
    )

    attempts = 0
    while (
        len(pool) < count
        or index_degree_count(1) < 8
        or index_degree_count(2) < 3
    ) and attempts < 60000:
        attempts += 1
        q = rng.choice((5, 7))
        F = fields[q]
        if rng.random() < 0.25:
            pv = Poly.from_ints(F, _IRREDUCIBLE_QUADRATIC[q])
        else:
            pv = Poly.from_ints(F, [rng.randrange(q), 1])
        m = rng.choice((1, 1, 2, 3))
        mu = F.element(rng.randrange(1, q))
        if rng.random() < 0.5:
            # depressed shape: richer odds of a nontrivial index
            a1 = Poly.zero(F)
            a2 = _random_poly(F, 3, rng)
        else:
            a1 = _random_poly(F, rng.randrange(0, 3), rng)
            a2 = _random_poly(F, rng.randrange(0, 3), rng)
            shape = rng.random()
            if shape < 0.2:
                a2 = a2 * pv  # height >= 2
                if shape < 0.1:
                    a1 = a1 * pv  # supersingular shape
        W = WeilCubic(field=F, a1=a1, a2=a2, mu=mu, pv=pv, m=m)
        try_instance(W, cap_trivial=max(12, count // 2))
    if len(pool) < count or index_degree_count(1) < 8 or index_degree_count(2) < 3:
        raise RuntimeError("instance pool generation fell short")
    return pool
