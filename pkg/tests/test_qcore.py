import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nestcorr.errors import DivisionByZero, NonDivisible
from nestcorr.qcore import Q, QPoly, det, exact_div, q_binomial, q_binomial_det, q_int, q_int_factorial

coeff = st.integers(min_value=-10**6, max_value=10**6)
qpolys = st.builds(QPoly, st.lists(coeff, max_size=6), st.integers(min_value=-5, max_value=5))

# four ring-axiom properties at 2500 examples each: 10^4 cases in total
RING = settings(max_examples=2500, deadline=None)


@RING
@given(qpolys, qpolys, qpolys)
def test_addition_associative_commutative(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == QPoly()


@RING
@given(qpolys, qpolys, qpolys)
def test_multiplication_associative_commutative(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * 1 == a


@RING
@given(qpolys, qpolys, qpolys)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@RING
@given(qpolys, qpolys.filter(bool))
def test_exact_division_inverts_multiplication(a, b):
    assert exact_div(a * b, b) == a


@given(qpolys, st.integers(-3, 3))
def test_evaluation_is_a_homomorphism(a, x):
    if x == 0 and a.min_degree < 0:
        return
    b = a * a + 3
    assert b(x) == a(x) * a(x) + 3


def test_canonical_zero_and_trimming():
    z = QPoly([0, 0], 7)
    assert z.coeffs == () and z.min_degree == 0
    p = QPoly([0, 1, 2, 0], -2)
    assert p.min_degree == -1 and p.coeffs == (1, 2)
    assert hash(p) == hash(QPoly([1, 2], -1))


def test_json_round_trip():
    p = QPoly([3, -1, 10**30], -4)
    assert QPoly.from_json(p.to_json()) == p


def test_division_errors():
    with pytest.raises(DivisionByZero):
        exact_div(Q, QPoly())
    with pytest.raises(NonDivisible):
        exact_div(QPoly([1, 0, 1]), QPoly([1, 1]))


def test_q_numbers():
    n, f = q_int_factorial(3)
    assert n == QPoly([1, 1, 1])
    assert f == QPoly([1, 2, 2, 1])
    assert q_int_factorial(0)[1] == QPoly.const(1)
    assert q_int(0) == QPoly()


def test_q_binomial_small_values():
    assert q_binomial(4, 2) == QPoly([1, 1, 2, 1, 1])
    assert q_binomial(3, 5) == QPoly()
    assert q_binomial(5, -1) == QPoly()


@given(st.integers(0, 12), st.integers(0, 12))
def test_q_binomial_pascal_and_symmetry(n, r):
    assert q_binomial(n, r) == q_binomial(n, n - r)
    if n >= 1:
        assert q_binomial(n, r) == q_binomial(n - 1, r - 1) + q_binomial(n - 1, r).shift(r)


@given(st.integers(0, 12), st.integers(0, 12))
def test_q_binomial_at_one_is_binomial(n, r):
    from math import comb

    expected = comb(n, r) if 0 <= r <= n else 0
    assert q_binomial(n, r)(1) == expected


def _leibniz(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, p in enumerate(perm):
            term = term * m[i][p]
        total = total + term
    return total


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz_on_integers(m):
    assert det(m) == _leibniz(m)


@given(st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(qpolys, min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=200, deadline=None)
def test_bareiss_matches_leibniz_on_qpolys(m):
    assert det(m) == _leibniz(m)


def test_bareiss_on_fractions():
    m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 5)]]
    assert det(m) == Fraction(1, 10) - Fraction(1, 12)


def test_q_binomial_det_identity_matrix_case():
    # b = a gives an upper unitriangular matrix
    assert q_binomial_det((1, 2, 3), (1, 2, 3)) == QPoly.const(1)
    assert q_binomial_det((2, 3), (1, 2)) == q_binomial(2, 1) * q_binomial(3, 2) - q_binomial(3, 1) * q_binomial(2, 2)
