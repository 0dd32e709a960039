"""Simplicity verdicts for the commutator Lie algebra of a path algebra.

Two independent decision routes are provided and must always agree where both
apply:

* the span route: the Lie algebra of a nontrivial simple path algebra is
  simple iff the all-ones vector is *not* a combination of the B-vectors over
  the prime subfield of the coefficient field;
* the K-theory route (purely infinite simple case only): simple iff the class
  of the identity has infinite order in the cokernel of I - A^t (char 0), or
  is not p-divisible there (char p).

Verdicts outside the hypotheses of these criteria are reported as
inapplicable rather than extrapolated.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from . import analysis
from .graph import Graph, b_vectors, m_matrix
from .linalg import (
    FieldSpec,
    K0Presentation,
    class_order,
    cokernel,
    is_p_divisible,
    prime_factorization,
    span_membership,
)

__all__ = [
    "SIMPLE",
    "NOT_SIMPLE",
    "INAPPLICABLE",
    "LieVerdict",
    "lie_simplicity",
    "matrix_lie_simplicity",
    "leavitt_closed_form",
    "lie_simplicity_via_k0",
    "vertex_combination_in_commutator",
    "pointed_iso_decision",
    "KpReport",
    "kp_consistency",
]

SIMPLE = "simple"
NOT_SIMPLE = "not-simple"
INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class LieVerdict:
    """Outcome of one simplicity decision.

    ``certificate`` carries the supporting data: span coefficients for a
    not-simple span verdict, the failed graph condition for an inapplicable
    one, or the finite order / divisibility fact on the K-theory route.
    """

    status: str
    route: str
    characteristic: int | None
    reason: str
    certificate: object = None


def _inapplicable(route: str, witness) -> LieVerdict:
    return LieVerdict(
        INAPPLICABLE,
        route,
        None,
        f"the path algebra is not {'purely infinite ' if route == 'k0' else ''}simple: "
        + witness.describe(),
        certificate=witness,
    )


def lie_simplicity(g: Graph, field: FieldSpec) -> LieVerdict:
    """Span-route verdict for the Lie algebra of the path algebra of ``g``."""
    report = analysis.is_simple_lpa(g)
    if not report.verdict:
        return _inapplicable("span", report.first_witness())
    if analysis.is_trivial_lpa(g):
        return LieVerdict(
            NOT_SIMPLE,
            "span",
            field.characteristic,
            "the algebra is the coefficient field itself, so all brackets vanish",
        )
    coeffs = span_membership(b_vectors(g), [1] * g.num_vertices, field)
    if coeffs is None:
        return LieVerdict(
            SIMPLE,
            "span",
            field.characteristic,
            "(1, ..., 1) is not a combination of the B-vectors over " + field.name,
        )
    return LieVerdict(
        NOT_SIMPLE,
        "span",
        field.characteristic,
        "(1, ..., 1) is a combination of the B-vectors over " + field.name,
        certificate=tuple(coeffs),
    )


def matrix_lie_simplicity(g: Graph, d: int, field: FieldSpec) -> LieVerdict:
    """Verdict for d x d matrices over the path algebra of ``g``."""
    if d < 1:
        raise ValueError(f"matrix size d must be >= 1, got {d}")
    if d == 1:
        return lie_simplicity(g, field)
    report = analysis.is_simple_lpa(g)
    if not report.verdict:
        return _inapplicable("span", report.first_witness())
    if analysis.is_trivial_lpa(g):
        return LieVerdict(
            INAPPLICABLE,
            "span",
            None,
            "the matrix criterion requires a nontrivial simple path algebra",
        )
    p = field.characteristic
    coeffs = span_membership(b_vectors(g), [1] * g.num_vertices, field)
    if coeffs is not None:
        return LieVerdict(
            NOT_SIMPLE,
            "span",
            p,
            "(1, ..., 1) is a combination of the B-vectors over " + field.name,
            certificate=tuple(coeffs),
        )
    if p != 0 and d % p == 0:
        return LieVerdict(
            NOT_SIMPLE,
            "span",
            p,
            f"the characteristic {p} divides the matrix size {d}",
        )
    return LieVerdict(
        SIMPLE,
        "span",
        p,
        "(1, ..., 1) is not a combination of the B-vectors and "
        f"the characteristic does not divide {d}",
    )


def leavitt_closed_form(n: int, d: int, field: FieldSpec) -> LieVerdict:
    """Closed form for d x d matrices over the classical degree-n algebra.

    Simple exactly when the characteristic divides n - 1 but not d.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    p = field.characteristic
    if p != 0 and (n - 1) % p == 0 and d % p != 0:
        return LieVerdict(
            SIMPLE, "closed-form", p, f"{p} divides n - 1 = {n - 1} and does not divide d = {d}"
        )
    if p == 0:
        reason = "characteristic 0 never divides n - 1"
    elif (n - 1) % p != 0:
        reason = f"{p} does not divide n - 1 = {n - 1}"
    else:
        reason = f"{p} divides d = {d}"
    return LieVerdict(NOT_SIMPLE, "closed-form", p, reason)


def lie_simplicity_via_k0(g: Graph, field: FieldSpec) -> LieVerdict:
    """K-theory-route verdict; applicable only to purely infinite simple graphs."""
    report = analysis.is_purely_infinite_simple(g)
    if not report.verdict:
        return _inapplicable("k0", report.first_witness())
    pres = cokernel(m_matrix(g))
    p = field.characteristic
    if p == 0:
        order = class_order(pres)
        if order is None:
            return LieVerdict(
                SIMPLE, "k0", 0, "the unit class has infinite order in the cokernel"
            )
        return LieVerdict(
            NOT_SIMPLE,
            "k0",
            0,
            f"the unit class has finite order {order} in the cokernel",
            certificate=order,
        )
    if is_p_divisible(pres, p):
        return LieVerdict(
            NOT_SIMPLE, "k0", p, f"the unit class is {p}-divisible in the cokernel"
        )
    return LieVerdict(
        SIMPLE, "k0", p, f"the unit class is not {p}-divisible in the cokernel"
    )


def vertex_combination_in_commutator(g: Graph, coeffs, field: FieldSpec):
    """Coefficients t with ``k = sum t_i B_i`` and t zero off regular vertices.

    Returns the length-m vector t over the prime subfield when the vertex
    combination with coefficients ``coeffs`` is a sum of brackets, and None
    otherwise.  The returned t feeds the symbolic witness construction.
    """
    m = g.num_vertices
    k = [field.coerce(c) for c in coeffs]
    if len(k) != m:
        raise ValueError(f"expected {m} coefficients, got {len(k)}")
    bvecs = b_vectors(g)
    regular = [i for i, v in enumerate(g.vertices) if g.is_regular(v)]
    solution = span_membership([bvecs[i] for i in regular], k, field)
    if solution is None:
        return None
    t = [field.zero()] * m
    for idx, i in enumerate(regular):
        t[i] = solution[idx]
    return t


# ---------------------------------------------------------------------------
# Pointed isomorphism of cokernel presentations
# ---------------------------------------------------------------------------


def _p_height(residues: list[int], exponents: list[int], p: int) -> int | None:
    """Largest k with the element in p^k times the group; None for zero."""
    h: int | None = None
    for x, e in zip(residues, exponents):
        if x == 0:
            continue
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        if h is None or v < h:
            h = v
    return h


def _p_indicator(residues: list[int], exponents: list[int], p: int) -> tuple[int, ...]:
    """Height sequence of the element under repeated multiplication by p."""
    cur = list(residues)
    seq: list[int] = []
    while True:
        h = _p_height(cur, exponents, p)
        if h is None:
            return tuple(seq)
        seq.append(h)
        cur = [(x * p) % (p**e) for x, e in zip(cur, exponents)]


def _torsion_orbit_equal(
    alphas: list[int], x: list[int], y: list[int], primes=None
) -> bool:
    """Whether some automorphism of the torsion group carries x to y.

    Per prime, elements of a finite abelian p-group lie in the same orbit of
    the automorphism group exactly when their height sequences coincide; the
    torsion group splits into its p-parts, so the primes are independent.
    """
    if primes is None:
        order = 1
        for a in alphas:
            order *= a
        primes = prime_factorization(order)
    for p in primes:
        exps = []
        res_x = []
        res_y = []
        for a, xi, yi in zip(alphas, x, y):
            e = 0
            while a % p == 0:
                a //= p
                e += 1
            if e:
                exps.append(e)
                res_x.append(xi % p**e)
                res_y.append(yi % p**e)
        if _p_indicator(res_x, exps, p) != _p_indicator(res_y, exps, p):
            return False
    return True


def pointed_iso_decision(
    pa: K0Presentation, pb: K0Presentation, max_group_order: int = 10**6
) -> str:
    """Decide whether a group isomorphism matches the two unit classes.

    Returns ``"exists"``, ``"none"``, or ``"undecided"``.  The groups are
    compared by invariant factors.  An automorphism can move the free
    coordinates of an element to any vector of the same content g, shifting
    the torsion part by anything in g times the torsion subgroup, so the
    decision reduces to content equality plus an orbit test on torsion parts
    shifted through that subgroup; the shift enumeration is capped at
    ``max_group_order`` elements, beyond which the answer is undecided.
    """
    ta = [(a, y) for a, y in zip(pa.invariant_factors, pa.unit_class) if a != 1]
    tb = [(a, y) for a, y in zip(pb.invariant_factors, pb.unit_class) if a != 1]
    alphas_a = [a for a, _ in ta if a > 0]
    alphas_b = [a for a, _ in tb if a > 0]
    free_a = [y for a, y in ta if a == 0]
    free_b = [y for a, y in tb if a == 0]
    if alphas_a != alphas_b or len(free_a) != len(free_b):
        return "none"
    alphas = alphas_a
    sa = [y for a, y in ta if a > 0]
    sb = [y for a, y in tb if a > 0]

    g = 0
    if free_a:
        ga = 0
        for y in free_a:
            ga = gcd(ga, y)
        gb = 0
        for y in free_b:
            gb = gcd(gb, y)
        if ga != gb:
            return "none"
        g = ga

    if sa == sb:
        return "exists"
    if g == 1:
        return "exists"
    order = 1
    for a in alphas:
        order *= a
    primes = list(prime_factorization(order)) if order > 1 else []
    if g == 0:
        return "exists" if _torsion_orbit_equal(alphas, sa, sb, primes) else "none"

    steps = [gcd(g, a) for a in alphas]
    count = 1
    for a, d in zip(alphas, steps):
        count *= a // d
    if count > max_group_order:
        return "undecided"
    for shift in product(*(range(0, a, d) for a, d in zip(alphas, steps))):
        shifted = [(y - w) % a for y, w, a in zip(sb, shift, alphas)]
        if _torsion_orbit_equal(alphas, sa, shifted, primes):
            return "exists"
    return "none"


@dataclass(frozen=True)
class KpReport:
    """Pointed-K0 comparison of two graphs plus per-characteristic verdicts.

    ``contradiction`` is set when a pointed isomorphism exists but some
    characteristic receives different statuses; it must never happen.
    """

    applicable: bool
    reason: str | None
    presentation_a: K0Presentation | None
    presentation_b: K0Presentation | None
    pointed_iso: str | None
    verdicts: tuple[tuple[int, LieVerdict, LieVerdict], ...]
    contradiction: bool


def kp_consistency(
    gA: Graph,
    gB: Graph,
    chars,
    max_group_order: int = 10**6,
) -> KpReport:
    """Compare pointed K0 data of two purely infinite simple graphs.

    When a pointed isomorphism exists, the two Lie algebras must receive the
    same status at every characteristic.
    """
    repA = analysis.is_purely_infinite_simple(gA)
    repB = analysis.is_purely_infinite_simple(gB)
    if not repA.verdict or not repB.verdict:
        bad = "first" if not repA.verdict else "second"
        witness = (repA if not repA.verdict else repB).first_witness()
        return KpReport(
            False,
            f"the {bad} graph is not purely infinite simple: {witness.describe()}",
            None,
            None,
            None,
            (),
            False,
        )
    pa = cokernel(m_matrix(gA))
    pb = cokernel(m_matrix(gB))
    iso = pointed_iso_decision(pa, pb, max_group_order)
    rows = []
    contradiction = False
    for c in chars:
        field = FieldSpec(c)
        va = lie_simplicity(gA, field)
        vb = lie_simplicity(gB, field)
        rows.append((c, va, vb))
        if iso == "exists" and va.status != vb.status:
            contradiction = True
    return KpReport(True, None, pa, pb, iso, tuple(rows), contradiction)
