"""The solution (1/x) exp(-1/x) of x^2 w'' + (3x - 1) w' + w = 0 for large |x|_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from ..exact_algebra import Polynomial, RationalFunction, TruncatedSeries, X
from ..padic_core import DomainError, PadicContext, PadicNumber, from_rational, padic_exp, valuation
from .equations import LinearODE, VerificationResult, apply, residual_result


def reciprocal_transform(ode: LinearODE) -> LinearODE:
    """The same equation in y = 1/x (w' = -y^2 W', w'' = y^4 W'' + 2 y^3 W')."""
    y = RationalFunction(X)

    def at_inverse(p: Polynomial) -> RationalFunction:
        return sum((y ** (-i) * c for i, c in enumerate(p.coeffs) if c), RationalFunction(0))

    cs = [at_inverse(c) for c in ode.coeffs] + [RationalFunction(0)] * (3 - len(ode.coeffs))
    return LinearODE.from_rational(
        [cs[0], -(y * y) * cs[1] + 2 * y**3 * cs[2], y**4 * cs[2]],
        at_inverse(ode.rhs),
    )


def w1_in_reciprocal(N: int) -> TruncatedSeries:
    """y exp(-y) = sum (-1)^n y^(n+1) / n!, known through y^N."""
    return TruncatedSeries.from_function(lambda e: Fraction((-1) ** (e - 1), factorial(e - 1)) if e else 0, N)


def w1_laurent_polynomial(N: int) -> TruncatedSeries:
    """sum_{n<=N} (-1)^n x^(-n-1) / n! as an exact Laurent polynomial."""
    return TruncatedSeries([Fraction((-1) ** (N - i), factorial(N - i)) for i in range(N + 1)], -N - 1)


def w1_series_values(x, p: int, prec: int) -> tuple[PadicNumber, PadicNumber, PadicNumber]:
    """w1, w1', w1'' at x by termwise summation of the series in 1/x.

    With y = 1/x and v = v_p(y) >= 1 (p odd), the n-th term of each series
    has valuation >= (n+1) v - (n-1)/(p-1) + const, increasing in n.
    """
    x = Fraction(x)
    y = 1 / x
    v = valuation(y, p)
    ctx = PadicContext(p, prec)
    sums = [Fraction(0)] * 3
    n = 0
    # stop once (n+1)*v - (n-1)/(p-1) >= prec for all three series (w'' carries y^(n+3))
    while (n + 1) * v * (p - 1) - (n - 1) < prec * (p - 1):
        base = Fraction((-1) ** n, factorial(n))
        sums[0] += base * y ** (n + 1)
        sums[1] -= base * (n + 1) * y ** (n + 2)
        sums[2] += base * (n + 1) * (n + 2) * y ** (n + 3)
        n += 1
    return tuple(from_rational(s, ctx, prec) for s in sums)


@dataclass
class W1Report:
    p: int
    order: int
    formal: VerificationResult
    laurent: VerificationResult
    point: Fraction | None = None
    precision: int | None = None
    residual: PadicNumber | None = None
    closed_form_agrees: bool | None = None

    @property
    def residual_valuation(self):
        return None if self.residual is None else self.residual.valuation


def _check_point(x: Fraction, p: int):
    if p == 2:
        raise DomainError("pointwise check refused for p = 2 (exp needs v_2 >= 2)")
    v = valuation(x, p)
    # |x|_p > p^(1/(p-1))  <=>  v_p(x) < -1/(p-1)
    if not v * (p - 1) < -1:
        raise DomainError(f"x = {x} is not in the region |x|_{p} > {p}^(1/{p - 1})")


def w1_pointwise(x, p: int, prec: int) -> tuple[PadicNumber, bool]:
    """Residual of x^2 w'' + (3x-1) w' + w at x, and whether w matches (1/x) exp(-1/x)."""
    x = Fraction(x)
    _check_point(x, p)
    # x^2 and (3x-1) lower the valuation by up to 2; sum with headroom
    work = prec + 2 * (-valuation(x, p)) + 2
    w, dw, d2w = w1_series_values(x, p, work)
    ctx = PadicContext(p, work)
    xp = from_rational(x, ctx, work)
    residual = xp * xp * d2w + (3 * xp - 1) * dw + w
    closed = padic_exp(from_rational(-1 / x, ctx, work)) / xp
    agrees = (w - closed).valuation >= min(prec, w.prec)
    return residual, agrees


def verify_w1(p: int, N: int = 40, prec: int = 30) -> W1Report:
    """Formal residual in 1/x through order N and, for odd p, the residual at x = 1/p."""
    ode = LinearODE([Polynomial([1]), 3 * X - 1, X * X], 0)
    formal = residual_result(apply(reciprocal_transform(ode), w1_in_reciprocal(N)))
    # truncation of the Laurent polynomial only disturbs exponents below -(N+1)
    lr = apply(ode, w1_laurent_polynomial(N))
    bad = [(e, c) for e, c in lr.items() if c and e >= -(N + 1)]
    laurent = VerificationResult(not bad, -(N + 1), *(bad[0] if bad else (None, None)))
    report = W1Report(p, N, formal, laurent)
    if p != 2:
        point = Fraction(1, p)
        residual, agrees = w1_pointwise(point, p, prec)
        report.point = point
        report.precision = prec
        report.residual = residual
        report.closed_form_agrees = agrees
    return report
