import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import PRIMES, rationals
from padic_ode_lab.padic_core import (
    ContextMismatch,
    DomainError,
    PadicContext,
    PrecisionError,
    from_rational,
    norm,
    padic_exp,
    rational_reconstruction,
    valuation,
)

C5 = PadicContext(5, 20)


def test_context_rejects_composite_and_bad_precision():
    with pytest.raises(ValueError):
        PadicContext(6)
    with pytest.raises(ValueError):
        PadicContext(5, 0)


def test_embedding_examples():
    z = from_rational(0, C5)
    assert z.is_exact_zero() and z.valuation == math.inf
    a = from_rational(50, C5)
    assert (a.valuation, a.unit) == (2, 2)
    b = from_rational(Fraction(1, 3), C5, 3)
    assert (b.valuation, b.unit) == (0, 42)
    # oracle: pow(3, -1, 125) is the extended-Euclid inverse
    assert b.unit == pow(3, -1, 125)


def test_arithmetic_examples():
    a = from_rational(Fraction(7, 4), C5)
    assert a + 0 == a
    assert from_rational(Fraction(1, 3), C5) * from_rational(3, C5) == 1
    s = from_rational(50, C5) + from_rational(75, C5)
    assert (s.valuation, s.unit) == (3, 1)


def test_norm_examples():
    assert norm(from_rational(0, C5)) == 0
    assert norm(from_rational(50, C5)) == Fraction(1, 25)
    assert norm(from_rational(Fraction(1, 3), C5)) == 1


def test_exp_examples():
    assert padic_exp(from_rational(0, C5)) == 1
    five = from_rational(5, C5)
    assert padic_exp(five) * padic_exp(-five) == 1
    assert (padic_exp(five) - 1).valuation == 1


def test_exp_domain():
    with pytest.raises(DomainError):
        padic_exp(from_rational(1, C5))
    with pytest.raises(DomainError):
        padic_exp(from_rational(2, PadicContext(2, 10)))
    assert padic_exp(from_rational(4, PadicContext(2, 10))).valuation == 0


def test_zero_to_precision_is_not_exact_zero():
    a = from_rational(Fraction(1, 3), C5, 10)
    d = a - a
    assert d.is_zero() and not d.is_exact_zero()
    assert d.valuation == 10
    assert str(d) == "O(5^10)"


def test_precision_tracking():
    a = from_rational(1, C5, 4)
    b = from_rational(1, C5, 9)
    assert (a + b).prec == 4
    assert (from_rational(25, C5, 10) * from_rational(1, C5, 4)).prec == 6
    with pytest.raises(PrecisionError):
        a.with_prec(6)


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        from_rational(1, C5) + from_rational(1, PadicContext(3))


def test_residue_and_digits():
    a = from_rational(-1, C5, 3)
    assert a.residue() == 124
    assert a.digits() == [4, 4, 4]
    with pytest.raises(DomainError):
        from_rational(Fraction(1, 5), C5).residue()


@pytest.mark.parametrize("q", [Fraction(1, 3), Fraction(-25, 7), Fraction(121), Fraction(2, 125), Fraction(0)])
def test_rational_reconstruction(q):
    assert rational_reconstruction(from_rational(q, C5)) == q


@settings(max_examples=200)
@given(st.sampled_from(PRIMES), rationals(nonzero=True), rationals(nonzero=True))
def test_ultrametric(p, x, y):
    ctx = PadicContext(p, 40)
    a, b = from_rational(x, ctx), from_rational(y, ctx)
    s = a + b
    va, vb = valuation(x, p), valuation(y, p)
    assert s.valuation >= min(va, vb)
    if va != vb:
        assert s.valuation == min(va, vb)


@settings(max_examples=200)
@given(st.sampled_from(PRIMES), rationals(nonzero=True), rationals(nonzero=True))
def test_multiplicativity(p, x, y):
    ctx = PadicContext(p, 40)
    assert (from_rational(x, ctx) * from_rational(y, ctx)).valuation == valuation(x, p) + valuation(y, p)


@settings(max_examples=200)
@given(st.sampled_from(PRIMES), rationals(), rationals())
def test_embedding_is_a_homomorphism(p, x, y):
    ctx = PadicContext(p, 30)
    N = 30
    a, b = from_rational(x, ctx), from_rational(y, ctx)
    for lhs, rhs in ((x + y, a + b), (x * y, a * b)):
        target = from_rational(lhs, ctx, N)
        diff = rhs - target
        assert diff.valuation >= min(N, rhs.prec if rhs.prec is not None else N)


@settings(max_examples=60)
@given(st.sampled_from((3, 5, 7)), st.integers(-50, 50), st.integers(-50, 50))
def test_exp_functional_equation(p, m, n):
    ctx = PadicContext(p, 25)
    a, b = from_rational(p * m, ctx, 25), from_rational(p * n, ctx, 25)
    lhs = padic_exp(a + b)
    rhs = padic_exp(a) * padic_exp(b)
    assert (lhs - rhs).valuation >= min(lhs.prec, rhs.prec)
