import random
from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _gen import random_int_matrix

from lpa_lie import (
    FieldSpec,
    GFElement,
    K0Presentation,
    b_vectors,
    class_order,
    cokernel,
    family,
    is_p_divisible,
    is_prime,
    m_matrix,
    rank_over_field,
    smith_normal_form,
    span_membership,
)
from lpa_lie.linalg import int_det, mat_mul

int_matrices = st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    )
)


# -- fields -------------------------------------------------------------------


def test_field_spec_validation():
    FieldSpec(0)
    FieldSpec(2)
    FieldSpec(13)
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(-3)
    with pytest.raises(ValueError):
        FieldSpec(1)


def test_is_prime():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(0) and not is_prime(1) and not is_prime(-7)


def test_gf_arithmetic():
    f = FieldSpec(5)
    a = f.coerce(7)
    b = f.coerce(4)
    assert a == GFElement(2, 5)
    assert a + b == GFElement(1, 5)
    assert a - b == GFElement(3, 5)
    assert a * b == GFElement(3, 5)
    assert a / b == GFElement(3, 5)  # 2 * 4^{-1} = 2 * 4 = 8 = 3
    assert -a == GFElement(3, 5)
    assert not GFElement(0, 5)
    with pytest.raises(ZeroDivisionError):
        a / GFElement(0, 5)
    with pytest.raises(ValueError):
        a + GFElement(1, 7)


def test_field_parse_and_coerce():
    f0 = FieldSpec(0)
    assert f0.parse("3/4") == Fraction(3, 4)
    f3 = FieldSpec(3)
    assert f3.parse("5") == GFElement(2, 3)
    assert f3.coerce(Fraction(1, 2)) == GFElement(2, 3)  # 1 * 2^{-1} = 2
    with pytest.raises(ValueError):
        f3.coerce(Fraction(1, 3))
    with pytest.raises(ValueError):
        f0.parse("x")


# -- span membership -----------------------------------------------------------


def test_span_one_dimensional():
    assert span_membership([[2]], [1], FieldSpec(0)) == [Fraction(1, 2)]
    assert span_membership([[2]], [1], FieldSpec(2)) is None


def test_span_example4_never_solvable():
    bv = b_vectors(family("example4"))
    ones = [1, 1, 1, 1]
    for c in (0, 2, 3, 5, 7, 11):
        assert span_membership(bv, ones, FieldSpec(c)) is None


def test_span_prime_set_solvable_iff_char_divides_q():
    bv = b_vectors(family("prime_set", [6]))
    ones = [1, 1, 1, 1]
    assert span_membership(bv, ones, FieldSpec(2)) is not None
    assert span_membership(bv, ones, FieldSpec(3)) is not None
    assert span_membership(bv, ones, FieldSpec(5)) is None
    assert span_membership(bv, ones, FieldSpec(0)) is None


def test_span_solution_is_exact():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        vectors = [[rng.randint(-5, 5) for _ in range(m)] for _ in range(n)]
        target = [rng.randint(-5, 5) for _ in range(m)]
        for c in (0, 2, 5):
            field = FieldSpec(c)
            sol = span_membership(vectors, target, field)
            if sol is None:
                continue
            for j in range(m):
                total = field.zero()
                for i in range(n):
                    total = total + sol[i] * field.coerce(vectors[i][j])
                assert total == field.coerce(target[j])


def test_span_gf_agrees_with_enumeration():
    rng = random.Random(8)
    for _ in range(120):
        p = rng.choice([2, 3, 5])
        field = FieldSpec(p)
        n = rng.randint(1, 3)
        m = rng.randint(1, 3)
        vectors = [[rng.randint(-4, 4) for _ in range(m)] for _ in range(n)]
        target = [rng.randint(-4, 4) for _ in range(m)]
        brute = any(
            all(
                sum(cs[i] * vectors[i][j] for i in range(n)) % p == target[j] % p
                for j in range(m)
            )
            for cs in product(range(p), repeat=n)
        )
        assert (span_membership(vectors, target, field) is not None) == brute


def test_span_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension"):
        span_membership([[1, 2]], [1], FieldSpec(0))


def test_span_no_vectors():
    assert span_membership([], [0, 0], FieldSpec(0)) == []
    assert span_membership([], [1, 0], FieldSpec(0)) is None


# -- Smith normal form ----------------------------------------------------------


def check_certificate(mat, dec):
    rows, cols = len(mat), len(mat[0])
    assert mat_mul(mat_mul([list(r) for r in dec.u], mat), [list(r) for r in dec.v]) == [
        list(r) for r in dec.d
    ]
    assert int_det(dec.u) in (1, -1)
    assert int_det(dec.v) in (1, -1)
    diag = list(dec.diagonal)
    assert all(a >= 0 for a in diag)
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert dec.d[i][j] == 0
    nonzero = [a for a in diag if a]
    assert diag[: len(nonzero)] == nonzero, "zeros must come last"
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0


def test_snf_identity():
    dec = smith_normal_form([[1, 0], [0, 1]])
    assert dec.diagonal == (1, 1)
    check_certificate([[1, 0], [0, 1]], dec)


def test_snf_two_vertex_family():
    m = m_matrix(family("two_vertex", [2, 2, 2]))
    assert m == [[-8, -4], [-2, -2]]
    dec = smith_normal_form(m)
    assert dec.diagonal == (2, 4)
    check_certificate(m, dec)


def test_snf_rose():
    for n in range(2, 8):
        m = m_matrix(family("rose", [n]))
        assert m == [[1 - n]]
        dec = smith_normal_form(m)
        assert dec.diagonal == (n - 1,)
        check_certificate(m, dec)


def test_snf_rectangular():
    m = [[2, 4, 4], [-6, 6, 12]]
    dec = smith_normal_form(m)
    check_certificate(m, dec)
    assert dec.diagonal == (2, 6)


def test_snf_rejects_bad_input():
    with pytest.raises(ValueError):
        smith_normal_form([])
    with pytest.raises(ValueError):
        smith_normal_form([[1, 2], [3]])
    with pytest.raises(ValueError):
        smith_normal_form([[1.5]])


@given(int_matrices)
@settings(max_examples=150, deadline=None)
def test_snf_certificates_hypothesis(mat):
    dec = smith_normal_form(mat)
    check_certificate(mat, dec)


def test_snf_deterministic():
    rng = random.Random(9)
    for _ in range(30):
        mat = random_int_matrix(rng)
        d1 = smith_normal_form(mat)
        d2 = smith_normal_form([list(r) for r in mat])
        assert d1 == d2


def test_rank_equals_nonzero_diagonal():
    rng = random.Random(10)
    for _ in range(150):
        mat = random_int_matrix(rng)
        dec = smith_normal_form(mat)
        expected = sum(1 for a in dec.diagonal if a)
        assert rank_over_field(mat, FieldSpec(0)) == expected


# -- cokernel presentations --------------------------------------------------


def test_cokernel_rose():
    for n in range(2, 8):
        pres = cokernel(m_matrix(family("rose", [n])))
        assert pres.invariant_factors == (n - 1,)
        assert pres.unit_class == (1 % (n - 1),)


def test_cokernel_matrix_rose_unit_class_is_d():
    for n in range(2, 6):
        for d in range(2, 6):
            pres = cokernel(m_matrix(family("matrix_rose", [n, d])))
            if n == 2:
                assert pres.nontrivial_factors == ()
            else:
                assert pres.nontrivial_factors == (n - 1,)
                torsion = [
                    (a, y)
                    for a, y in zip(pres.invariant_factors, pres.unit_class)
                    if a not in (0, 1)
                ]
                assert torsion == [(n - 1, d % (n - 1))]


def test_cokernel_two_vertex():
    pres = cokernel(m_matrix(family("two_vertex", [2, 2, 2])))
    assert pres.invariant_factors == (2, 4)
    assert pres.group_description() == "Z_2 x Z_4"


def test_cokernel_example4_has_free_summand():
    pres = cokernel(m_matrix(family("example4")))
    assert 0 in pres.invariant_factors
    free_coords = [
        y for a, y in zip(pres.invariant_factors, pres.unit_class) if a == 0
    ]
    assert any(y != 0 for y in free_coords)
    assert class_order(pres) is None


def test_cokernel_requires_square():
    with pytest.raises(ValueError):
        cokernel([[1, 2, 3], [4, 5, 6]])


# -- class order and divisibility ---------------------------------------------


def brute_force_order(pres):
    alphas = pres.invariant_factors
    if any(a == 0 and y != 0 for a, y in zip(alphas, pres.unit_class)):
        return None
    order_bound = 1
    for a in alphas:
        if a > 0:
            order_bound *= a
    for k in range(1, order_bound + 1):
        if all((k * y) % a == 0 for a, y in zip(alphas, pres.unit_class) if a > 0):
            return k
    raise AssertionError("order exceeds the group order")


def brute_force_p_divisible(pres, p):
    alphas = [a for a in pres.invariant_factors if a > 0]
    ys = [y for a, y in zip(pres.invariant_factors, pres.unit_class) if a > 0]
    free_ys = [y for a, y in zip(pres.invariant_factors, pres.unit_class) if a == 0]
    if any(y % p for y in free_ys):
        return False
    for xs in product(*(range(a) for a in alphas)):
        if all((p * x - y) % a == 0 for x, y, a in zip(xs, ys, alphas)):
            return True
    return not alphas


def test_class_order_examples():
    assert class_order(K0Presentation((2, 4), (1, 1))) == 4
    assert class_order(K0Presentation((1,), (0,))) == 1
    assert class_order(K0Presentation((0,), (3,))) is None
    assert class_order(K0Presentation((6, 0), (4, 0))) == 3


def test_is_p_divisible_examples():
    assert not is_p_divisible(K0Presentation((3,), (2,)), 3)
    assert is_p_divisible(K0Presentation((3, 5, 0), (0, 0, 0)), 2)
    assert is_p_divisible(K0Presentation((3, 5, 0), (0, 0, 0)), 7)
    assert not is_p_divisible(K0Presentation((2, 4), (1, 1)), 2)
    with pytest.raises(ValueError):
        is_p_divisible(K0Presentation((2,), (1,)), 4)


def test_order_and_divisibility_against_brute_force():
    rng = random.Random(12)
    for _ in range(200):
        k = rng.randint(1, 3)
        alphas = tuple(rng.choice([1, 2, 3, 4, 6, 8, 9, 0]) for _ in range(k))
        ys = tuple(
            rng.randrange(a) if a > 0 else rng.randint(-3, 3) for a in alphas
        )
        torsion = 1
        for a in alphas:
            if a > 0:
                torsion *= a
        if torsion > 10**4:
            continue
        pres = K0Presentation(alphas, ys)
        assert class_order(pres) == brute_force_order(pres)
        for p in (2, 3, 5):
            assert is_p_divisible(pres, p) == brute_force_p_divisible(pres, p)


# -- the dual-route identity ------------------------------------------------------


def test_dual_route_identity_random_matrices():
    rng = random.Random(13)
    for _ in range(200):
        mat = random_int_matrix(rng, max_size=5, lo=-6, hi=6)
        n = len(mat)
        cols = [[mat[i][j] for i in range(n)] for j in range(n)]
        ones = [1] * n
        pres = cokernel(mat)
        solvable_q = span_membership(cols, ones, FieldSpec(0)) is not None
        assert solvable_q == (class_order(pres) is not None)
        for p in (2, 3, 5):
            solvable_p = span_membership(cols, ones, FieldSpec(p)) is not None
            assert solvable_p == is_p_divisible(pres, p)
