from fractions import Fraction
from math import comb, factorial

import pytest

from padic_ode_lab.bernoulli_volkenborn import (
    STATED_SUMS,
    alternating_bernoulli_sum,
    alternating_stated_form,
    bernoulli,
    bernoulli_factorial_sum,
    bernoulli_number,
    bernoulli_valuation_floor,
    generalized_bernoulli_sum,
    integrand_coefficients,
    volkenborn_numeric,
    volkenborn_polynomial,
)
from padic_ode_lab.exact_algebra import Polynomial, X
from padic_ode_lab.padic_core import PadicContext, from_rational, valuation


def test_table_values():
    B = bernoulli(12)
    assert B[:5] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]
    assert B[12] == Fraction(-691, 2730)
    assert bernoulli_number(1) == volkenborn_polynomial(X)


def test_table_satisfies_recurrence_from_zero():
    B = bernoulli(30)
    for n in range(2, 31):
        assert sum(comb(n, i) * B[i] for i in range(n)) == 0


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_von_staudt_bound(p):
    assert bernoulli_valuation_floor(60, p) >= -1
    assert all(valuation(b, p) >= -1 for b in bernoulli(60) if b)


def test_volkenborn_examples():
    for m in range(1, 5):
        assert volkenborn_numeric(Polynomial([1]), 3, m) == 1
    v = volkenborn_numeric(X, 3, 2)
    assert v == 4
    assert (v - Fraction(-1, 2)).valuation == 2


@pytest.mark.parametrize("n", range(7))
def test_volkenborn_converges_to_bernoulli(n):
    p = 3
    B = bernoulli(n)[n]
    errs = [(volkenborn_numeric(Polynomial.monomial(n), p, m) - B).valuation for m in range(1, 9)]
    # calibrated floor: error valuation >= m - 1, never decreasing
    assert all(e >= m - 1 for m, e in zip(range(1, 9), errs))
    assert errs == sorted(errs)


def test_volkenborn_of_x_squared_matches_closed_form():
    # sum_{x < N} x^2 = N (N-1) (2N-1) / 6
    p, m = 3, 4
    N = p**m
    exact = Fraction(N * (N - 1) * (2 * N - 1), 6) / N
    assert volkenborn_numeric(X * X, p, m) == from_rational(exact, PadicContext(p, 40))


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("k", range(1, 6))
def test_factorial_bernoulli_sums(p, k):
    r = bernoulli_factorial_sum(k, p, 15)
    assert r.expected == STATED_SUMS[k]
    assert r.derived == STATED_SUMS[k]
    assert r.match


def test_integrand_matches_stated_k4():
    coeffs, V = integrand_coefficients(4)
    n = Polynomial.x()
    assert coeffs[4] == n**4 - 1
    assert [coeffs[j] for j in (3, 2, 1, 0)] == [Polynomial([15]), Polynomial([-25]), Polynomial([10]), Polynomial([-1])]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_alternating_k1(p):
    r = alternating_bernoulli_sum(1, p, 15)
    assert r.match and r.derived == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_alternating_routes_agree(p):
    # x -> -x in the identity then integrating, against the stated series summed directly
    for k in (1, 2):
        r = alternating_bernoulli_sum(k, p, 15)
        assert r.derived_match
        assert alternating_stated_form(k, p, 15).congruent(r.value, 15)


def test_alternating_k2_sums_to_zero():
    # the series with the table's B_1 = -1/2 sums to 0, matching its integrated right side
    r = alternating_bernoulli_sum(2, 5, 15)
    assert r.derived == 0 and r.derived_match


def test_generalized_sums():
    for p in (2, 3, 5):
        assert generalized_bernoulli_sum(1, 0, p, 15).value.congruent(bernoulli_factorial_sum(1, p, 15).value, 15)
        r = generalized_bernoulli_sum(1, 1, p, 15)
        assert r.derived == Fraction(1, 2) and r.match
        assert generalized_bernoulli_sum(2, 1, p, 15).match


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("k", range(1, 6))
def test_truncation_is_sound(p, k):
    # 30 more terms never move the value mod p^M
    M = 15
    r = bernoulli_factorial_sum(k, p, M)
    coeffs, _ = integrand_coefficients(k)
    B = bernoulli(r.terms + 30 + max(coeffs))
    total = Fraction(0)
    for n in range(r.terms + 30):
        total += factorial(n) * sum((c(n) * B[n + j] for j, c in coeffs.items()), Fraction(0))
    assert r.value.congruent(from_rational(total, PadicContext(p, M + 2), M + 2), M)
