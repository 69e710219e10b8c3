"""Closed forms for sum n! n^k x^n and the rational sums they produce.

Every factorial series is a combination R(x) F0(x) + T(x) of
F0 = sum n! x^n with rational-function coefficients.  For the power sums
S_k = sum n! n^k x^n this follows from n * n! = (n+1)! - n!:

    S_k = (1/x) [ sum_{j<k} C(k-1, j) (-1)^(k-1-j) S_j - (-1)^(k-1) ] - S_{k-1}

and x^k S_k + U_k F0 = V_{k-1} with U_k = -x^k R_k, V_{k-1} = x^k T_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exact_algebra import Polynomial, RationalFunction, TruncatedSeries, X
from .factorial_series import FactorialPolynomial, FactorialSeries, evaluate_padic
from .padic_core import DomainError, PadicContext, PadicNumber, from_rational, valuation

ORACLE_ORDER = 30

# Values stated for x = -1: k -> (u_k(-1), v_k(-1))
ALTERNATING_TABLE = {1: (2, 1), 2: (-5, -3), 3: (15, 9), 4: (-52, -31), 5: (203, 121)}


class DerivationError(AssertionError):
    """A derived identity failed its brute-force series check."""


@lru_cache(maxsize=None)
def power_sum_decomposition(k: int) -> tuple[RationalFunction, RationalFunction]:
    """(R_k, T_k) with sum n! n^k x^n = R_k F0 + T_k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return RationalFunction(1), RationalFunction(0)
    R = RationalFunction(0)
    T = RationalFunction(Fraction(-((-1) ** (k - 1))))
    for j in range(k):
        c = comb(k - 1, j) * (-1) ** (k - 1 - j)
        Rj, Tj = power_sum_decomposition(j)
        R = R + Rj * c
        T = T + Tj * c
    inv_x = RationalFunction(1, X)
    Rp, Tp = power_sum_decomposition(k - 1)
    return R * inv_x - Rp, T * inv_x - Tp


def decompose(P, shift: int = 0) -> tuple[RationalFunction, RationalFunction]:
    """(R, T) with sum n! P(n) x^(n+shift) = R F0 + T."""
    poly = P.poly if isinstance(P, FactorialPolynomial) else P
    R = RationalFunction(0)
    T = RationalFunction(0)
    for i, c in enumerate(poly.coeffs):
        if c:
            Ri, Ti = power_sum_decomposition(i)
            R = R + Ri * c
            T = T + Ti * c
    xm = RationalFunction(X**shift) if shift >= 0 else RationalFunction(1, X ** (-shift))
    return R * xm, T * xm


@dataclass(frozen=True)
class SumIdentity:
    """x^k S_k + U_k F0 = V_{k-1}, where S_k = sum n! n^k x^n."""

    k: int
    U: Polynomial
    V: Polynomial

    def u(self) -> RationalFunction:
        return RationalFunction(self.U, X**self.k)

    def v(self) -> RationalFunction:
        return RationalFunction(self.V, X**self.k)

    def residual(self, order: int = ORACLE_ORDER) -> TruncatedSeries:
        """x^k S_k + U_k F0 - V_{k-1} as a truncated series (zero if the identity holds)."""
        Sk = FactorialSeries(Polynomial.monomial(self.k)).expand(order)
        F0 = FactorialSeries([1]).expand(order)
        return Sk.shift_by_power(self.k) + F0 * self.U - self.V

    def holds(self, order: int = ORACLE_ORDER) -> bool:
        return self.residual(order).is_zero()

    def __str__(self):
        return f"U_{self.k} = {self.U}, V_{self.k - 1} = {self.V}"


def derive_uv(k: int, oracle_order: int = ORACLE_ORDER) -> SumIdentity:
    """U_k and V_{k-1} from the recurrence, checked against brute-force series."""
    if k < 1:
        raise ValueError("k must be >= 1")
    R, T = power_sum_decomposition(k)
    xk = RationalFunction(X**k)
    U = (-(xk * R)).as_polynomial()
    V = (xk * T).as_polynomial()
    ident = SumIdentity(k, U, V)
    if not ident.holds(oracle_order):
        raise DerivationError(f"derived identity for k={k} fails the series check")
    return ident


# ---------------------------------------------------------------------------
# evaluation at points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SumCheck:
    """A p-adic sum compared against its closed-form value."""

    label: str
    p: int
    precision: int
    lhs: PadicNumber
    rhs: Fraction
    match: bool

    @property
    def residual_valuation(self):
        return (self.lhs - self.rhs).valuation


def check_sum(label: str, P, x, rhs, p: int, M: int) -> SumCheck:
    """Evaluate sum n! P(n) x^n p-adically and compare with ``rhs`` mod p^M."""
    F = P if isinstance(P, FactorialSeries) else FactorialSeries(P)
    lhs = evaluate_padic(F, Fraction(x), M, p)
    rhs = Fraction(rhs)
    if valuation(rhs, p) >= M:
        match = lhs.valuation >= M
    else:
        match = lhs.congruent(from_rational(rhs, PadicContext(p, M), M), M)
    return SumCheck(label, p, M, lhs, rhs, match)


def sum_at_point(k: int, t, p: int, M: int) -> SumCheck:
    """sum n! [n^k + u_k(t)] t^n against v_k(t)."""
    t = Fraction(t)
    if t == 0:
        raise DomainError("u_k has a pole at t = 0")
    if valuation(t, p) < 0:
        raise DomainError(f"t = {t} is outside Z_{p}")
    ident = derive_uv(k)
    P = Polynomial.monomial(k) + ident.u()(t)
    return check_sum(f"k={k}, t={t}", P, t, ident.v()(t), p, M)


PHI_VARIANTS = ("x=1/(1-alpha)", "x=1", "x=-1")


def phi_alpha_terms(alpha, variant: str) -> tuple[Polynomial, Fraction, Fraction]:
    """(P(n), x, closed form) for the three point evaluations of the Phi_alpha equation."""
    a = Fraction(alpha)
    n = Polynomial.x()
    if variant == "x=1/(1-alpha)":
        if a == 1:
            raise DomainError("alpha = 1 puts the point at infinity")
        return n + a, 1 / (1 - a), a - 1
    if variant == "x=1":
        return (n + a) * (a * n + 1), Fraction(1), -a * a + a - 1
    if variant == "x=-1":
        return (n + a) * ((a - 2) * n + 2 * a - 5), Fraction(-1), a * a - 3 * a + 1
    raise ValueError(f"unknown variant {variant!r}; expected one of {PHI_VARIANTS}")


def phi_alpha_sum(alpha, variant: str, p: int, M: int) -> SumCheck:
    P, x, rhs = phi_alpha_terms(alpha, variant)
    if variant == "x=1/(1-alpha)" and valuation(1 - Fraction(alpha), p) > 0:
        raise DomainError(f"need v_{p}(1 - alpha) <= 0 for the point 1/(1-alpha) to lie in Z_{p}")
    return check_sum(f"alpha={Fraction(alpha)}, {variant}", P, x, rhs, p, M)


def phi_alpha_from_equation(alpha, x0) -> tuple[Polynomial, Fraction]:
    """(P, c) with sum n! P(n) x0^n = c, read off the Phi_alpha equation at x0.

    A Phi' + B Phi = C at a nonzero point x0 is
    sum n! (n+alpha) [A(x0) n / x0 + B(x0)] x0^n = C(x0).
    """
    a = Fraction(alpha)
    x0 = Fraction(x0)
    A = x0 * x0 * ((a - 1) * x0 + 1)
    B = (a - 1) * x0 * x0 - (a - 3) * x0 - 1
    C = -((a - 1) ** 2) * x0 - a
    n = Polynomial.x()
    return (n + a) * (n * (A / x0) + B), C


def linear_combination(checks: list[tuple[Fraction, Polynomial, Fraction]], x, p: int, M: int) -> SumCheck:
    """Combine identities sum n! P_i(n) x^n = r_i with rational weights, re-verify."""
    P = Polynomial()
    rhs = Fraction(0)
    for w, Pi, ri in checks:
        P = P + Pi * Fraction(w)
        rhs += Fraction(w) * ri
    return check_sum("combination", P, x, rhs, p, M)
