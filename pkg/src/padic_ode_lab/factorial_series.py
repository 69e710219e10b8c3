"""Factorial series sum_n n! P(n) x^(n+m) and their p-adic evaluation.

All tail cuts come from Legendre's formula: a term n! P(n) x^n with x in Z_p
has valuation at least v_p(n!) - d, where d bounds the p-power in the
denominators of P's coefficients.  Since v_p(n!) never decreases, the first
index with v_p(n!) - d >= M bounds every later term.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb, factorial

from .exact_algebra import Polynomial, TruncatedSeries
from .padic_core import DomainError, PadicContext, PadicNumber, from_rational, valuation


def legendre_valuation(n: int, p: int) -> int:
    """v_p(n!) = sum_i floor(n / p^i)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    total = 0
    q = n // p
    while q:
        total += q
        q //= p
    return total


def first_index_with_factorial_valuation(target: int, p: int) -> int:
    """Smallest n with v_p(n!) >= target."""
    # v_p(n!) only jumps at multiples of p
    n = 0
    while legendre_valuation(n, p) < target:
        n += p
    return n


class FactorialPolynomial:
    """P(n) as a coefficient list, optionally remembering a product form.

    ``FactorialPolynomial.from_factors([(a1, k1), ...])`` stores
    prod (n + a_i)^k_i alongside its expansion.
    """

    __slots__ = ("poly", "factors")

    def __init__(self, poly, factors=None):
        if not isinstance(poly, Polynomial):
            poly = Polynomial(poly)
        self.poly = poly
        self.factors = None if factors is None else tuple((Fraction(a), int(k)) for a, k in factors)

    @classmethod
    def from_factors(cls, factors) -> FactorialPolynomial:
        factors = [(Fraction(a), int(k)) for a, k in factors]
        return cls(Polynomial.from_roots(factors), factors)

    @classmethod
    def monic(cls, lower_coeffs) -> FactorialPolynomial:
        """n^k + C_{k-1} n^{k-1} + ... + C_0 from [C_0, ..., C_{k-1}]."""
        return cls(Polynomial(list(lower_coeffs) + [1]))

    @property
    def degree(self) -> int:
        return self.poly.degree

    def expanded(self) -> Polynomial:
        return self.poly

    def __call__(self, n):
        return self.poly(n)

    def denominator_deficit(self, p: int) -> int:
        """max(0, -min v_p(C_i)): how far P(n) can fall below Z_p."""
        vals = [valuation(c, p) for c in self.poly.coeffs if c]
        return max([0] + [-v for v in vals])

    def __eq__(self, other):
        if isinstance(other, FactorialPolynomial):
            return self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def __str__(self):
        if self.factors:
            parts = []
            for a, k in self.factors:
                base = "n" if a == 0 else f"(n + {a})" if a > 0 else f"(n - {-a})"
                parts.append(base if k == 1 else f"{base}^{k}")
            return "*".join(parts)
        return self.poly.to_str("n")

    def __repr__(self):
        return f"FactorialPolynomial({self})"


class FactorialSeries:
    """sum_{n>=0} n! P(n) x^(n + shift)."""

    __slots__ = ("P", "shift")

    def __init__(self, P, shift: int = 0):
        if isinstance(P, (Polynomial, list, tuple)):
            P = FactorialPolynomial(P)
        elif isinstance(P, (int, Fraction)):
            P = FactorialPolynomial(Polynomial([P]))
        self.P = P
        self.shift = shift

    def coefficient(self, n: int) -> Fraction:
        """Coefficient of x^(n + shift), i.e. n! P(n)."""
        return factorial(n) * Fraction(self.P(n))

    def expand(self, N: int) -> TruncatedSeries:
        """Exact series known through x^N."""
        if N < 0:
            raise ValueError("N must be non-negative")
        count = N - self.shift + 1
        return TruncatedSeries((self.coefficient(n) for n in range(max(count, 0))), self.shift, N)

    def shifted(self, m: int) -> FactorialSeries:
        return FactorialSeries(self.P, self.shift + m)

    def derivative_series(self, mu: int = 1) -> FactorialSeries:
        """The mu-th derivative, again a factorial series (unshifted input only).

        d/dx sum n! P(n) x^n = sum n! (n+1)^2 P(n+1) x^n.
        """
        if self.shift:
            raise ValueError("derivative_series needs an unshifted series")
        P = self.P.poly
        n = Polynomial.x()
        for _ in range(mu):
            P = (n + 1) ** 2 * P.shift(1)
        return FactorialSeries(FactorialPolynomial(P))

    def cut_index(self, p: int, M: int) -> int:
        """First n whose term, and every later one, has valuation >= M on Z_p."""
        return first_index_with_factorial_valuation(M + self.P.denominator_deficit(p), p)

    def __str__(self):
        tail = "x^n" if not self.shift else f"x^(n+{self.shift})"
        return f"sum n! [{self.P}] {tail}"

    def __repr__(self):
        return f"FactorialSeries({self.P!s}, shift={self.shift})"


def _as_padic(x, ctx: PadicContext, prec: int) -> PadicNumber:
    if isinstance(x, PadicNumber):
        if x.p != ctx.p:
            raise DomainError(f"{x.p}-adic point for a {ctx.p}-adic evaluation")
        return x
    return from_rational(x, ctx, prec)


def evaluate_padic(F: FactorialSeries, x, M: int, p: int | None = None) -> PadicNumber:
    """Value of F at x in Z_p, guaranteed modulo p^M.

    ``x`` may be a rational (then ``p`` is required) or a PadicNumber.  The
    number of summed terms is the Legendre cut ``F.cut_index(p, M)``.
    """
    if isinstance(x, PadicNumber):
        p = x.p
    if p is None:
        raise ValueError("a prime is needed to evaluate at a rational point")
    d = F.P.denominator_deficit(p)
    ctx = PadicContext(p, max(M + d + 1, 1))
    xp = _as_padic(x, ctx, M + d + 1)
    if xp.valuation < 0:
        raise DomainError(f"x = {x} is outside Z_{p}")
    cut = F.cut_index(p, M)
    if xp.is_exact_zero():
        value = F.coefficient(0) if F.shift == 0 else Fraction(0)
        return from_rational(value, ctx, M)
    total = ctx.zero()
    xn = from_rational(1, ctx, M + d + 1) if F.shift == 0 else xp**F.shift
    for n in range(cut):
        coeff = F.coefficient(n)
        if coeff:
            total = total + from_rational(coeff, ctx, M + d + 1) * xn
        xn = xn * xp
    if total.prec is not None and total.prec < M:
        raise DomainError(f"point known only mod {p}^{xp.prec}; cannot reach precision {M}")
    if total.is_exact_zero():
        return ctx.zero(M)
    return total.with_prec(M)


def recenter_coefficient(beta, n: int, M: int, p: int) -> PadicNumber:
    """b_n = sum_{k>=n} (-1)^(k-n) k! C(k,n) beta^(k-n), modulo p^M.

    These solve sum_{n>=k} b_n C(n,k) beta^(n-k) = k!, which makes them the
    expansion coefficients of sum n! x^n around x = -beta:
    F0(x) = sum b_n (x + beta)^n.  Terms have valuation >= v_p(k!), so
    summation stops at the Legendre cut.
    """
    beta = Fraction(beta)
    if valuation(beta, p) < 0:
        raise DomainError(f"beta = {beta} is outside Z_{p}")
    ctx = PadicContext(p, M)
    cut = max(first_index_with_factorial_valuation(M, p), n)
    total = Fraction(0)
    for k in range(n, cut):
        total += (-1) ** (k - n) * factorial(k) * comb(k, n) * beta ** (k - n)
    return from_rational(total, ctx, M)


def recenter(F: FactorialSeries, beta, n: int, M: int, p: int) -> PadicNumber:
    """b_n for F = sum n! x^n; other series are not supported."""
    if F.shift or F.P.poly != Polynomial([1]):
        raise ValueError("recentering is implemented for sum n! x^n only")
    return recenter_coefficient(beta, n, M, p)


def recentered_value(beta, x, M: int, p: int) -> PadicNumber:
    """sum_n b_n (x + beta)^n mod p^M, for x + beta in p Z_p.

    Should agree with evaluate_padic(sum n! x^n, x).  |b_n|_p <= 1, so
    n < ceil(M / v_p(x + beta)) terms suffice.
    """
    t = Fraction(x) + Fraction(beta)
    vt = valuation(t, p)
    if vt < 1:
        raise DomainError(f"need x + beta in p*Z_{p}, got {t}")
    ctx = PadicContext(p, M)
    if vt == math.inf:
        return recenter_coefficient(beta, 0, M, p)
    total = ctx.zero()
    for n in range(-(-M // vt)):
        total = total + recenter_coefficient(beta, n, M, p) * from_rational(t**n, ctx, M)
    return total.with_prec(M)


def recentering_row(beta, k: int, M: int, p: int) -> PadicNumber:
    """sum_{n>=k} b_n C(n,k) beta^(n-k), which should equal k!.

    Needs v_p(beta) >= 1 for the outer sum to converge; the terms have
    valuation >= (n - k) * v_p(beta), so n - k < ceil(M / v_p(beta)) suffices.
    """
    beta = Fraction(beta)
    vb = valuation(beta, p)
    if vb < 1:
        raise DomainError(f"row sums need beta in p*Z_{p}, got {beta}")
    ctx = PadicContext(p, M)
    span = math.inf if vb == math.inf else -(-M // vb)
    total = ctx.zero()
    n = k
    while n - k < span:
        b = recenter_coefficient(beta, n, M, p)
        total = total + b * from_rational(comb(n, k) * beta ** (n - k), ctx, M)
        n += 1
        if vb == math.inf:
            break
    return total.with_prec(M) if not total.is_exact_zero() else ctx.zero(M)
