import random
from fractions import Fraction
from itertools import product

import pytest

from _gen import random_graph, random_pis_graphs

from lpa_lie import (
    INAPPLICABLE,
    NOT_SIMPLE,
    SIMPLE,
    FieldSpec,
    K0Presentation,
    family,
    graph_from_adjacency,
    is_purely_infinite_simple,
    kp_consistency,
    leavitt_closed_form,
    lie_simplicity,
    lie_simplicity_via_k0,
    matrix_lie_simplicity,
    pointed_iso_decision,
    vertex_combination_in_commutator,
)

CHARS = (0, 2, 3, 5, 7)


# -- the span route -----------------------------------------------------------


def test_lie_simplicity_example4_all_chars():
    g = family("example4")
    for c in (0, 2, 3, 5, 7, 11, 13):
        v = lie_simplicity(g, FieldSpec(c))
        assert v.status == SIMPLE
        assert v.characteristic == c
        assert v.route == "span"


def test_lie_simplicity_rose3_char0_not_simple():
    v = lie_simplicity(family("rose", [3]), FieldSpec(0))
    assert v.status == NOT_SIMPLE
    # the certificate expresses (1) as a combination of (2)
    assert v.certificate == (Fraction(1, 2),)


def test_lie_simplicity_rose1_inapplicable():
    for c in (0, 2, 5):
        v = lie_simplicity(family("rose", [1]), FieldSpec(c))
        assert v.status == INAPPLICABLE
        assert v.characteristic is None


def test_lie_simplicity_prime_set():
    g = family("prime_set", [6])
    expected = {0: SIMPLE, 2: NOT_SIMPLE, 3: NOT_SIMPLE, 5: SIMPLE, 7: SIMPLE}
    for c, status in expected.items():
        assert lie_simplicity(g, FieldSpec(c)).status == status


def test_lie_simplicity_trivial_graph():
    g = graph_from_adjacency(["v"], [[0]])
    v = lie_simplicity(g, FieldSpec(0))
    assert v.status == NOT_SIMPLE
    assert "brackets vanish" in v.reason


def test_lie_simplicity_disconnected_sinks():
    g = graph_from_adjacency(["a", "b"], [[0, 0], [0, 0]])
    assert lie_simplicity(g, FieldSpec(3)).status == INAPPLICABLE


# -- matrices and the closed form ------------------------------------------------


def test_matrix_lie_simplicity_examples():
    rose3 = family("rose", [3])
    assert matrix_lie_simplicity(rose3, 2, FieldSpec(2)).status == NOT_SIMPLE
    assert matrix_lie_simplicity(rose3, 3, FieldSpec(2)).status == SIMPLE
    ex4 = family("example4")
    assert matrix_lie_simplicity(ex4, 1, FieldSpec(7)).status == SIMPLE
    assert matrix_lie_simplicity(ex4, 1, FieldSpec(7)) == lie_simplicity(ex4, FieldSpec(7))
    with pytest.raises(ValueError):
        matrix_lie_simplicity(rose3, 0, FieldSpec(2))


def test_matrix_lie_simplicity_gates():
    assert matrix_lie_simplicity(family("rose", [1]), 3, FieldSpec(2)).status == INAPPLICABLE
    trivial = graph_from_adjacency(["v"], [[0]])
    assert matrix_lie_simplicity(trivial, 1, FieldSpec(2)).status == NOT_SIMPLE
    assert matrix_lie_simplicity(trivial, 2, FieldSpec(2)).status == INAPPLICABLE


def test_leavitt_closed_form_examples():
    for c in (0, 2, 3, 5, 7):
        assert leavitt_closed_form(2, 1, FieldSpec(c)).status == NOT_SIMPLE
    assert leavitt_closed_form(7, 1, FieldSpec(2)).status == SIMPLE
    assert leavitt_closed_form(7, 1, FieldSpec(3)).status == SIMPLE
    assert leavitt_closed_form(7, 1, FieldSpec(5)).status == NOT_SIMPLE
    assert leavitt_closed_form(3, 4, FieldSpec(2)).status == NOT_SIMPLE
    with pytest.raises(ValueError):
        leavitt_closed_form(1, 1, FieldSpec(0))
    with pytest.raises(ValueError):
        leavitt_closed_form(2, 0, FieldSpec(0))


def test_reduction_coherence():
    for n in range(2, 7):
        for d in range(2, 6):
            for c in CHARS:
                field = FieldSpec(c)
                closed = leavitt_closed_form(n, d, field).status
                assert matrix_lie_simplicity(family("rose", [n]), d, field).status == closed
                assert lie_simplicity(family("matrix_rose", [n, d]), field).status == closed


# -- the K-theory route -----------------------------------------------------------


def test_k0_route_examples():
    assert lie_simplicity_via_k0(family("example4"), FieldSpec(0)).status == SIMPLE
    assert lie_simplicity_via_k0(family("two_vertex", [2, 2, 2]), FieldSpec(2)).status == SIMPLE
    for c in (0, 2, 5):
        assert lie_simplicity_via_k0(family("line", [3]), FieldSpec(c)).status == INAPPLICABLE


def test_k0_route_not_simple_certificate():
    v = lie_simplicity_via_k0(family("rose", [3]), FieldSpec(0))
    assert v.status == NOT_SIMPLE
    assert v.certificate == 2  # the unit class has order 2 in Z_2


def test_two_vertex_simple_exactly_at_p():
    for u in (2, 3):
        for vv in (2, 3):
            for p in (2, 3):
                g = family("two_vertex", [u, vv, p])
                verdict = lie_simplicity(g, FieldSpec(p))
                assert verdict.status == SIMPLE
                assert lie_simplicity_via_k0(g, FieldSpec(p)).status == SIMPLE


def test_dual_route_agreement_random_and_families():
    rng = random.Random(201)
    graphs = random_pis_graphs(rng, 60)
    graphs += [
        family("rose", [n]) for n in range(2, 7)
    ] + [
        family("matrix_rose", [n, d]) for n in (2, 3, 4) for d in (2, 3)
    ] + [
        family("prime_set", [q]) for q in (1, 2, 6)
    ] + [
        family("two_vertex", [u, v, p]) for u in (2, 3) for v in (2, 3) for p in (2, 3)
    ] + [family("example4")]
    for g in graphs:
        assert is_purely_infinite_simple(g).verdict
        for c in (0, 2, 3, 5, 7):
            field = FieldSpec(c)
            assert lie_simplicity(g, field).status == lie_simplicity_via_k0(g, field).status


def test_verdict_invariant_under_relabeling():
    rng = random.Random(202)
    import lpa_lie

    for _ in range(60):
        g = random_graph(rng, max_vertices=5)
        m = g.num_vertices
        perm = list(range(m))
        rng.shuffle(perm)
        adj = lpa_lie.adjacency_matrix(g)
        padj = [[adj[perm[i]][perm[j]] for j in range(m)] for i in range(m)]
        pg = graph_from_adjacency([f"w{i + 1}" for i in range(m)], padj)
        for c in (0, 2, 3):
            assert (
                lie_simplicity(g, FieldSpec(c)).status
                == lie_simplicity(pg, FieldSpec(c)).status
            )


def test_span_verdict_depends_only_on_characteristic():
    # identical FieldSpec values are interchangeable; no other field data exists
    g = family("prime_set", [6])
    assert lie_simplicity(g, FieldSpec(3)) == lie_simplicity(g, FieldSpec(3))


# -- vertex combinations ------------------------------------------------------------


def test_vertex_combination_rose3():
    g = family("rose", [3])
    assert vertex_combination_in_commutator(g, [1], FieldSpec(0)) == [Fraction(1, 2)]
    assert vertex_combination_in_commutator(g, [1], FieldSpec(2)) is None


def test_vertex_combination_zero():
    for name, params in [("example4", []), ("line", [3])]:
        g = family(name, params)
        field = FieldSpec(2)
        t = vertex_combination_in_commutator(g, [0] * g.num_vertices, field)
        assert t == [field.zero()] * g.num_vertices


def test_vertex_combination_vanishes_at_sinks():
    g = family("line", [3])
    field = FieldSpec(0)
    # k = B_1 is realizable with t supported on regular vertices
    t = vertex_combination_in_commutator(g, [-1, 1, 0], field)
    assert t is not None
    assert t[2] == field.zero()


def test_vertex_combination_dimension_check():
    with pytest.raises(ValueError):
        vertex_combination_in_commutator(family("rose", [2]), [1, 2], FieldSpec(0))


# -- pointed isomorphism ---------------------------------------------------------------


def hom_matrices(alphas):
    """All endomorphism matrices of the group with the given cyclic factors."""
    from math import gcd

    k = len(alphas)
    choices = []
    for i in range(k):
        for j in range(k):
            step = alphas[i] // gcd(alphas[i], alphas[j])
            choices.append(range(0, alphas[i], step))
    for flat in product(*choices):
        yield [[flat[i * k + j] for j in range(k)] for i in range(k)]


def brute_force_orbit_equal(alphas, x, y):
    """Oracle: search all automorphisms of the torsion group."""
    elements = list(product(*(range(a) for a in alphas)))
    for mat in hom_matrices(alphas):
        def apply(vec):
            return tuple(
                sum(mat[i][j] * vec[j] for j in range(len(alphas))) % alphas[i]
                for i in range(len(alphas))
            )
        if len({apply(e) for e in elements}) == len(elements) and apply(tuple(x)) == tuple(y):
            return True
    return False


def test_pointed_iso_small_groups_against_brute_force():
    from lpa_lie.verdict import _torsion_orbit_equal

    rng = random.Random(203)
    shapes = [(2,), (4,), (6,), (2, 2), (2, 4), (3, 3), (2, 6), (8,), (2, 2, 2), (12,)]
    for alphas in shapes:
        els = list(product(*(range(a) for a in alphas)))
        for _ in range(25):
            x = list(rng.choice(els))
            y = list(rng.choice(els))
            assert _torsion_orbit_equal(list(alphas), x, y) == brute_force_orbit_equal(
                alphas, x, y
            )


def test_pointed_iso_decision_basic():
    trivial_a = K0Presentation((1,), (0,))
    trivial_b = K0Presentation((1, 1), (0, 0))
    assert pointed_iso_decision(trivial_a, trivial_b) == "exists"
    z3 = K0Presentation((3,), (1,))
    assert pointed_iso_decision(z3, trivial_a) == "none"
    assert pointed_iso_decision(z3, K0Presentation((5,), (1,))) == "none"
    assert pointed_iso_decision(z3, K0Presentation((3,), (2,))) == "exists"
    assert pointed_iso_decision(z3, K0Presentation((3,), (0,))) == "none"
    # free parts: contents must match
    za = K0Presentation((0,), (2,))
    assert pointed_iso_decision(za, K0Presentation((0,), (-2,))) == "exists"
    assert pointed_iso_decision(za, K0Presentation((0,), (3,))) == "none"
    # content 1 makes every torsion part reachable
    pa = K0Presentation((4, 0), (1, 1))
    pb = K0Presentation((4, 0), (2, 1))
    assert pointed_iso_decision(pa, pb) == "exists"
    # content 2 can only shift the torsion part by even amounts
    pa2 = K0Presentation((4, 0), (1, 2))
    assert pointed_iso_decision(pa2, K0Presentation((4, 0), (3, 2))) == "exists"
    assert pointed_iso_decision(pa2, K0Presentation((4, 0), (0, 2))) == "none"
    assert pointed_iso_decision(pa2, K0Presentation((4, 0), (2, 2))) == "none"


def test_pointed_iso_undecided_above_bound():
    pa = K0Presentation((9, 0), (1, 3))
    pb = K0Presentation((9, 0), (2, 3))
    assert pointed_iso_decision(pa, pb, max_group_order=1) == "undecided"
    assert pointed_iso_decision(pa, pb, max_group_order=10**6) in ("exists", "none")


def test_pointed_iso_identical_presentations_shortcut():
    pa = K0Presentation((9, 0), (1, 3))
    assert pointed_iso_decision(pa, pa, max_group_order=1) == "exists"


# -- kp consistency ----------------------------------------------------------------


def test_kp_rose2_vs_matrix_rose():
    rep = kp_consistency(family("rose", [2]), family("matrix_rose", [2, 3]), CHARS)
    assert rep.applicable
    assert rep.pointed_iso == "exists"
    assert not rep.contradiction
    for _, va, vb in rep.verdicts:
        assert va.status == NOT_SIMPLE
        assert vb.status == NOT_SIMPLE


def test_kp_different_groups():
    rep = kp_consistency(family("rose", [4]), family("rose", [2]), CHARS)
    assert rep.applicable
    assert rep.pointed_iso == "none"
    assert not rep.contradiction
    rep = kp_consistency(family("rose", [4]), family("rose", [6]), CHARS)
    assert rep.pointed_iso == "none"


def test_kp_identity_pair():
    for name, params in [("example4", []), ("two_vertex", [2, 2, 2]), ("rose", [5])]:
        g = family(name, params)
        rep = kp_consistency(g, g, CHARS)
        assert rep.applicable
        assert rep.pointed_iso == "exists"
        assert not rep.contradiction
        for _, va, vb in rep.verdicts:
            assert va.status == vb.status


def test_kp_inapplicable():
    rep = kp_consistency(family("line", [2]), family("rose", [2]), CHARS)
    assert not rep.applicable
    assert "first" in rep.reason
    assert rep.verdicts == ()


def test_kp_no_contradiction_random():
    rng = random.Random(204)
    graphs = random_pis_graphs(rng, 24)
    for i in range(0, len(graphs) - 1, 2):
        rep = kp_consistency(graphs[i], graphs[i + 1], (0, 2, 3, 5))
        assert rep.applicable
        assert not rep.contradiction
