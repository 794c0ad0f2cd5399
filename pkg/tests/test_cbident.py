import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nestcorr.cbident import (
    CBSpec,
    cb_pair_det,
    cb_pair_sum,
    corollary_schur_det,
    gessel_viennot_count,
    normtrace_limit,
    q_restricted_det,
    q_restricted_sum,
    restricted_pair_det,
    theorem2_eval,
    theorem2_forms,
    watermelon_det,
    watermelon_det_forms,
)
from nestcorr.errors import ValidationError
from nestcorr.partitions import macmahon_count, zq_product
from nestcorr.paths import watermelon_schur_form
from nestcorr.qcore import QPoly
from nestcorr.schur import q_points, schur_eval

rational = st.fractions(min_value=-6, max_value=6, max_denominator=9).filter(bool)


def _points(n):
    return st.lists(rational, min_size=n, max_size=n, unique=True)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3), st.data())
def test_cauchy_binet_sum_equals_determinant(N, L, data):
    n = data.draw(st.integers(0, L))
    spec = CBSpec(N, L, tuple(data.draw(_points(N))), tuple(data.draw(_points(N))), n)
    assert cb_pair_sum(spec) == cb_pair_det(spec)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2), st.data())
def test_restricted_sum_equals_determinant(N, L, data):
    k = data.draw(st.integers(1, min(2, N)))
    idx = tuple(sorted(data.draw(st.lists(st.integers(1, N), min_size=k, max_size=k, unique=True))))
    spec = CBSpec(N, L, tuple(data.draw(_points(N))), tuple(data.draw(_points(N))), 0, idx)
    assert cb_pair_sum(spec) == cb_pair_det(spec)


def test_q_parametrized_restricted_identity():
    for N in range(1, 5):
        for k in (1, 2):
            for L in range(3):
                for idx in itertools.combinations(range(1, N + 1), k):
                    assert q_restricted_sum(N, L, idx) == q_restricted_det(N, L, idx)


def test_restricted_pair_det_ignores_fillers():
    xbar = (Fraction(1, 2), Fraction(3))
    y = (Fraction(2), Fraction(-1), Fraction(5, 3))
    direct = sum(
        schur_eval(lam, xbar) * schur_eval(lam + (0,), y)
        for lam in [(a, b) for a in range(3) for b in range(a + 1)]
    )
    assert restricted_pair_det(xbar, y, 2) == direct


def test_cbspec_validation():
    with pytest.raises(ValidationError):
        CBSpec(2, 1, (1, 2), (3, 4), 2)
    with pytest.raises(ValidationError):
        CBSpec(2, 1, (1, 2), (3, 4), 1, (1,))
    with pytest.raises(ValidationError):
        CBSpec(2, 1, (1, 2), (3, 4), 0, (2, 1))


def test_three_closed_forms_agree():
    for N in range(1, 5):
        for k in range(3):
            if k > N:
                continue
            for L in range(4):
                forms = theorem2_forms(N, k, L)
                assert forms["determinant"] == forms["q_binomial"] == forms["product"] == zq_product(N - k, N, L)
                theorem2_eval(N, k, L, check_sum=L <= 1)


def test_watermelon_determinant_forms():
    for N in range(1, 5):
        for L in range(N + 1):
            for Mcal in range(5):
                forms = watermelon_det_forms(N, L, Mcal)
                assert len(set(forms.values())) == 1
                assert forms["product"](1) == gessel_viennot_count(N, L, Mcal) == macmahon_count(N, L, Mcal)
    assert watermelon_det(3, 2, 3) == zq_product(3, 2, 3)


def _schur_target(N, L, Mcal, delta):
    pts = q_points(1, N + 1) + q_points(delta + N + 1, delta + N + L + 1)
    return QPoly.coerce(schur_eval((Mcal,) * N + (0,) * L, pts))


def test_corollary_with_derived_pairing():
    for N in range(1, 4):
        for L in range(N + 1):
            for Mcal in range(3):
                for delta in {0, N - L}:
                    assert corollary_schur_det(N, L, Mcal, delta, "derived") == _schur_target(N, L, Mcal, delta)


def test_corollary_printed_pairing_is_off_by_a_monomial():
    # finding: the printed Vandermonde pairing misses q^(k(N+L-1)/2) for k > 0
    for N in range(2, 4):
        for L in range(N):
            k = N - L
            for Mcal in range(3):
                for delta in {0, k}:
                    literal = corollary_schur_det(N, L, Mcal, delta, "literal")
                    target = _schur_target(N, L, Mcal, delta)
                    ratio = QPoly.coerce(literal) / target
                    assert ratio == QPoly.monomial(k * (N + L - 1) // 2)
                    assert literal != target


def test_large_M_limit_matches_watermelon_series():
    for N in (2, 3):
        for L in range(1, N):
            k = N - L
            w = watermelon_schur_form(N, L, 12, 0, k).truncate(6)
            assert normtrace_limit(N, L, k, 6) == w
            # the empty watermelon contributes 1
            assert w.coeff(0) == 1


def test_large_M_limit_printed_prefactor_discrepancy():
    # finding: the printed prefactor q^((N-L)(N+L-1)/2) is spurious
    N, L = 2, 1
    k = N - L
    w = watermelon_schur_form(N, L, 12, 0, k).truncate(6)
    printed = normtrace_limit(N, L, k, 6, literal_prefactor=True)
    assert printed != w
    assert printed == normtrace_limit(N, L, k, 6).shift(k * (N + L - 1) // 2).truncate(6)
