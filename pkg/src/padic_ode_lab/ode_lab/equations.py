"""Linear ODEs with polynomial coefficients and their formal residuals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import NamedTuple, Sequence

from ..exact_algebra import (
    KnownOrderError,
    Polynomial,
    RationalFunction,
    TruncatedSeries,
    clear_denominators,
)
from ..factorial_series import FactorialSeries


def _content(polys: Sequence[Polynomial]) -> Fraction:
    cs = [c for p in polys for c in p.coeffs if c]
    if not cs:
        return Fraction(1)
    num = reduce(math.gcd, (c.numerator for c in cs))
    den = reduce(math.lcm, (c.denominator for c in cs))
    return Fraction(num, den)


class LinearODE:
    """sum_j coeffs[j] * w^(j) = rhs, stored primitive with a positive leading sign.

    Two equations compare equal when their normalized coefficient lists agree,
    i.e. when they differ by a rational factor.
    """

    __slots__ = ("coeffs", "rhs")

    def __init__(self, coeffs: Sequence, rhs=0):
        polys = [c if isinstance(c, Polynomial) else Polynomial([c]) for c in coeffs]
        rhs = rhs if isinstance(rhs, Polynomial) else Polynomial([rhs])
        while len(polys) > 1 and polys[-1].is_zero():
            polys.pop()
        if not polys or polys[-1].is_zero():
            raise ValueError("an ODE needs a nonzero leading coefficient")
        if len(polys) > 3:
            raise ValueError("only orders 0..2 are supported")
        g = _content(polys + [rhs])
        if polys[-1].leading < 0:
            g = -g
        self.coeffs: tuple[Polynomial, ...] = tuple(p * (1 / g) for p in polys)
        self.rhs: Polynomial = rhs * (1 / g)

    @classmethod
    def from_rational(cls, coeffs: Sequence, rhs=0) -> LinearODE:
        """Build from rational-function coefficients, clearing denominators."""
        polys, _ = clear_denominators(list(coeffs) + [rhs])
        return cls(polys[:-1], polys[-1])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_homogeneous(self) -> bool:
        return self.rhs.is_zero()

    def multiplied(self, factor: Polynomial) -> LinearODE:
        return LinearODE([c * factor for c in self.coeffs], self.rhs * factor)

    def __eq__(self, other):
        if not isinstance(other, LinearODE):
            return NotImplemented
        return self.coeffs == other.coeffs and self.rhs == other.rhs

    def __hash__(self):
        return hash((self.coeffs, self.rhs))

    def as_first_order(self) -> FirstOrderForm:
        if self.order != 1:
            raise ValueError("not a first-order equation")
        return FirstOrderForm(
            RationalFunction(self.coeffs[1]), RationalFunction(self.coeffs[0]), RationalFunction(self.rhs)
        )

    def to_str(self, var: str = "x", func: str = "w") -> str:
        names = [func, f"{func}'", f"{func}''"]
        parts = []
        for j in range(self.order, -1, -1):
            c = self.coeffs[j]
            if c.is_zero():
                continue
            if c == Polynomial([1]):
                parts.append(names[j])
            elif c == Polynomial([-1]):
                parts.append(f"-{names[j]}")
            elif len([a for a in c.coeffs if a]) == 1:
                parts.append(f"{c.to_str(var)}*{names[j]}")
            else:
                parts.append(f"({c.to_str(var)})*{names[j]}")
        lhs = " + ".join(parts).replace("+ -", "- ")
        return f"{lhs} = {self.rhs.to_str(var)}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LinearODE({self.to_str()})"


class FirstOrderForm(NamedTuple):
    """A(x) w' + B(x) w = C(x) with rational-function A, B, C."""

    A: RationalFunction
    B: RationalFunction
    C: RationalFunction

    @classmethod
    def of(cls, A, B, C) -> FirstOrderForm:
        lift = RationalFunction.lift
        return cls(lift(A), lift(B), lift(C))

    def to_ode(self) -> LinearODE:
        return LinearODE.from_rational([self.B, self.A], self.C)


def apply(ode: LinearODE, s: TruncatedSeries) -> TruncatedSeries:
    """sum_j c_j s^(j) - rhs, with the known order propagated exactly."""
    if s.order is not None and s.order < ode.order + min(s.offset, 0):
        raise KnownOrderError(f"series known through x^{s.order} cannot feed an order-{ode.order} operator")
    total = -TruncatedSeries.from_polynomial(ode.rhs)
    deriv = s
    for j, c in enumerate(ode.coeffs):
        if j:
            deriv = deriv.derivative()
        if not c.is_zero():
            total = total + deriv * TruncatedSeries.from_polynomial(c)
    return total


@dataclass(frozen=True)
class VerificationResult:
    verified: bool
    order: int | None
    index: int | None = None
    value: Fraction | None = None

    def __bool__(self):
        return self.verified

    def describe(self) -> str:
        if self.verified:
            return f"residual vanishes through x^{self.order}"
        return f"residual coefficient of x^{self.index} is {self.value}"


def residual_result(r: TruncatedSeries) -> VerificationResult:
    first = r.first_nonzero()
    if first is None:
        return VerificationResult(True, r.order)
    return VerificationResult(False, r.order, first[0], first[1])


def _series(F, N: int) -> TruncatedSeries:
    if isinstance(F, TruncatedSeries):
        return F
    if isinstance(F, FactorialSeries):
        return F.expand(N)
    return F.expand(N)


def verify_formal(ode: LinearODE, F, N: int) -> VerificationResult:
    """Does ``F`` satisfy ``ode`` formally through the order ``N`` allows?

    A failure is a value (the first offending exponent), not an exception.
    """
    if N < ode.order + 2:
        raise ValueError(f"order N={N} too small for an order-{ode.order} equation")
    return residual_result(apply(ode, _series(F, N)))


def nonlinear_product_check(factors: Sequence[LinearODE], u, N: int) -> dict:
    """Evaluate each bracket  A u' + B u - C  on u and multiply.

    Returns the product's verification plus which brackets vanished.
    """
    s = _series(u, N)
    brackets = [apply(f, s) for f in factors]
    product = brackets[0]
    for b in brackets[1:]:
        product = product * b
    return {
        "product": residual_result(product),
        "vanishing": [i for i, b in enumerate(brackets) if b.is_zero()],
        "brackets": [residual_result(b) for b in brackets],
    }
