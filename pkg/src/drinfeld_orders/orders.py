"""Suborders of the maximal order in Hermite normal form, and the
enumeration of those occurring as endomorphism rings.

A suborder is encoded by a triple (a, b, c) of polynomials with a, c monic
and deg b < deg a, standing for the lattice

    O = A + A*(c*omega1 + b*omega2) + A*(a*omega2)

over the integral basis (1, omega1, omega2) of the maximal order.  The
lattice is a ring exactly when M1*M2*H^-1 has entries in A, where M2 is
the multiplication table of the basis and M1, H are the structure matrices
of the triple.  An order is an endomorphism ring exactly when it is a ring,
contains the Frobenius, and (when pv divides a2) stays maximal above v,
which amounts to gcd(pv, a*c) = 1.

Candidates are drawn from the full sandwich between A[pi] and the maximal
order: c runs over divisors of g, a over divisors of g^2*I (the a-entry of
A[pi] itself), and b over the multiples of a/gcd(a, g/c) below deg a.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .cubic import (
    LocalData,
    MaximalOrderData,
    StandardForm,
    WeilCubic,
    maximal_order_data,
    standard_form,
    validate_weil_necessary,
)
from .errors import (
    CandidateBoundExceededError,
    DomainError,
    InternalInconsistencyError,
)
from .factor import divisors
from .poly import Poly, poly_gcd, polys_below_degree

DEFAULT_CANDIDATE_BOUND = 10**6


@dataclass(frozen=True)
class OrderHNF:
    """O = A + A*(c*omega1 + b*omega2) + A*(a*omega2)."""

    a: Poly
    b: Poly
    c: Poly

    def sort_key(self):
        conductor_degree = self.a.degree + self.c.degree
        return (conductor_degree, self.a.sort_key(), self.c.sort_key(), self.b.sort_key())

    def __repr__(self):
        return f"OrderHNF(a={self.a.to_str()}, b={self.b.to_str()}, c={self.c.to_str()})"


@dataclass(frozen=True)
class MultTable:
    """Rows express (omega1^2, omega2^2, omega1*omega2) over (1, omega1, omega2)."""

    rows: tuple  # 3x3 tuple of tuples of Poly


@dataclass(frozen=True)
class OrderReport:
    order: OrderHNF
    is_closed: bool
    contains_pi: bool
    v_maximal: bool
    disc: Poly
    conductor_norm: Poly
    is_endo_ring: bool


def mult_table(sf: StandardForm, mo: MaximalOrderData) -> MultTable:
    """The nine structure constants of the integral basis.

    Exact divisibility by I and I^2 is asserted entry-wise; failure means
    (alpha2, beta2) do not satisfy their congruences.
    """
    c1, c2 = sf.c1, sf.c2
    I, a2, b2 = mo.index, mo.alpha2, mo.beta2
    I2 = I * I
    try:
        x11 = -a2
        x12 = -b2
        x13 = I
        x21 = (a2 * c1 - a2 * a2 - a2 * (b2 * b2) - (b2 * c2).scale_int(2)).exact_div(I2)
        x22 = (-(b2**3) - c1 * b2 - c2).exact_div(I2)
        x23 = (b2 * b2 - c1 + a2.scale_int(2)).exact_div(I)
        x31 = (-(a2 * b2) - c2).exact_div(I)
        x32 = (-(b2 * b2) - c1 + a2).exact_div(I)
        x33 = b2
    except DomainError as exc:
        raise InternalInconsistencyError(
            "multiplication table entries are not integral; integral-basis "
            "parameters are invalid"
        ) from exc
    return MultTable(rows=((x11, x12, x13), (x21, x22, x23), (x31, x32, x33)))


def _mat_mul(a, b):
    return tuple(
        tuple(
            sum((a[i][k] * b[k][j] for k in range(3)), start=Poly.zero(a[i][0].field))
            for j in range(3)
        )
        for i in range(3)
    )


def closure_check(order: OrderHNF, m2: MultTable) -> bool:
    """True iff M1*M2*H^-1 is integral; H^-1 is realised as adj(H)/det(H)
    with an exact divisibility test, never fractions."""
    a, b, c = order.a, order.b, order.c
    F = a.field
    zero = Poly.zero(F)
    two_bc = (b * c).scale_int(2)
    m1 = (
        (c * c, b * b, two_bc),
        (zero, a * a, zero),
        (zero, a * b, a * c),
    )
    adj_h = (
        (c * a, zero, zero),
        (zero, a, -b),
        (zero, zero, c),
    )
    det = a * c
    prod = _mat_mul(_mat_mul(m1, m2.rows), adj_h)
    return all(det.divides(entry) for row in prod for entry in row)


def contains_frobenius(order: OrderHNF, g: Poly) -> bool:
    """True iff the Frobenius lies in the lattice: c | g and a | b*(g/c)."""
    q, r = divmod(g, order.c)
    if r:
        return False
    if order.a.degree == 0:
        return True
    return ((order.b * q) % order.a).is_zero


def v_maximality(order: OrderHNF, W: WeilCubic, local: LocalData) -> bool:
    """Maximality above v.  Free when pv does not divide a2; otherwise the
    conductor norm (a*c)^2 must be prime to pv."""
    if not local.pv_divides_a2:
        return True
    return poly_gcd(W.pv, order.a * order.c).degree == 0


def order_disc(order: OrderHNF, delta: Poly) -> Tuple[Poly, Poly]:
    """(disc, conductor norm) = ((a*c)^2 * delta, (a*c)^2), monic."""
    n = order.a * order.c
    conductor_norm = n * n
    return (conductor_norm * delta, conductor_norm)


def frobenius_order_hnf(sf: StandardForm, mo: MaximalOrderData) -> OrderHNF:
    """The HNF triple of A[pi]: (g^2*I, 0, g)."""
    g = sf.g
    return OrderHNF(a=g * g * mo.index, b=Poly.zero(g.field), c=g)


@dataclass(frozen=True)
class ClassAnalysis:
    """Everything the pipeline derives from one isogeny-class descriptor."""

    weil: WeilCubic
    local: LocalData
    sf: StandardForm
    mo: MaximalOrderData
    m2: MultTable
    candidates: tuple  # every OrderReport, canonical order
    orders: tuple  # the accepted sublist

    @property
    def maximal_order(self) -> OrderHNF:
        return self.orders[0].order

    def frobenius_order(self) -> OrderHNF:
        return frobenius_order_hnf(self.sf, self.mo)


def _candidate_count(field, cs, as_, g) -> int:
    total = 0
    for c in cs:
        t = g.exact_div(c)
        for a in as_:
            shared = poly_gcd(a, t) if a.degree > 0 else Poly.one(field)
            total += field.q**shared.degree
    return total


def enumerate_candidates(
    sf: StandardForm,
    mo: MaximalOrderData,
    candidate_bound: int = DEFAULT_CANDIDATE_BOUND,
):
    """Yield every admissible (a, b, c) triple, canonically ordered.

    c | g and a | g^2*I cover the whole sandwich A[pi] <= O <= O_max; b is
    constrained by deg b < deg a together with a | b*(g/c), which is the
    Frobenius-containment shape.
    """
    F = sf.c1.field
    g = sf.g
    a_modulus = g * g * mo.index
    cs = divisors(g)
    as_ = divisors(a_modulus)
    total = _candidate_count(F, cs, as_, g)
    if total > candidate_bound:
        raise CandidateBoundExceededError(
            f"candidate space has {total} triples, above the bound {candidate_bound}"
        )
    triples = []
    for c in cs:
        t = g.exact_div(c)
        for a in as_:
            if a.degree == 0:
                triples.append(OrderHNF(a=a, b=Poly.zero(F), c=c))
                continue
            base = a.exact_div(poly_gcd(a, t))
            free = a.degree - base.degree
            for u in polys_below_degree(F, free):
                triples.append(OrderHNF(a=a, b=u * base, c=c))
    triples.sort(key=lambda o: o.sort_key())
    return triples


def assess_order(
    order: OrderHNF,
    W: WeilCubic,
    local: LocalData,
    sf: StandardForm,
    mo: MaximalOrderData,
    m2: MultTable,
) -> OrderReport:
    closed = closure_check(order, m2)
    contains = contains_frobenius(order, sf.g)
    vmax = v_maximality(order, W, local)
    disc, conductor_norm = order_disc(order, mo.delta)
    return OrderReport(
        order=order,
        is_closed=closed,
        contains_pi=contains,
        v_maximal=vmax,
        disc=disc,
        conductor_norm=conductor_norm,
        is_endo_ring=closed and contains and vmax,
    )


def analyze_weil_class(
    W: WeilCubic,
    candidate_bound: int = DEFAULT_CANDIDATE_BOUND,
) -> ClassAnalysis:
    """Validate, build the maximal-order data, and enumerate endomorphism
    rings for one isogeny class."""
    local = validate_weil_necessary(W)
    sf = standard_form(W)
    mo = maximal_order_data(sf)
    m2 = mult_table(sf, mo)
    reports = tuple(
        assess_order(o, W, local, sf, mo, m2)
        for o in enumerate_candidates(sf, mo, candidate_bound)
    )
    accepted = tuple(r for r in reports if r.is_endo_ring)
    if not accepted or accepted[0].order != OrderHNF(
        a=Poly.one(W.field), b=Poly.zero(W.field), c=Poly.one(W.field)
    ):
        raise InternalInconsistencyError("the maximal order was not accepted")
    return ClassAnalysis(
        weil=W,
        local=local,
        sf=sf,
        mo=mo,
        m2=m2,
        candidates=reports,
        orders=accepted,
    )


def enumerate_endo_rings(
    W: WeilCubic, candidate_bound: int = DEFAULT_CANDIDATE_BOUND
) -> List[OrderReport]:
    """The orders occurring as endomorphism rings in the class of W."""
    return list(analyze_weil_class(W, candidate_bound).orders)
