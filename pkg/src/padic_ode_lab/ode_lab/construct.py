"""Constructions that turn one equation for a factorial series into another."""

from __future__ import annotations

from fractions import Fraction

from ..exact_algebra import Polynomial, RationalFunction, X
from ..factorial_series import FactorialPolynomial
from ..sums import decompose
from .equations import FirstOrderForm, LinearODE


class ConstructionError(ValueError):
    """A construction step does not apply (e.g. B is constant)."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message if step is None else f"step {step}: {message}")
        self.step = step


def _form(A, B=None, C=None) -> FirstOrderForm:
    if isinstance(A, FirstOrderForm):
        return A
    if isinstance(A, LinearODE):
        return A.as_first_order()
    return FirstOrderForm.of(A, B, C)


def prop1_step(A, B=None, C=None) -> FirstOrderForm:
    """Differentiate (A/B) F' + F = C/B and renormalize.

    Gives A1 F'' + B1 F' = C1 with A1 = -A B / B',
    B1 = (B' A - A' B - B^2) / B' and C1 = C - C' B / B' (= C for constant C).
    Read as an equation for F', it has the same shape as the input.
    """
    A, B, C = _form(A, B, C)
    dB = B.derivative()
    if dB.is_zero():
        raise ConstructionError(f"B = {B} is constant, so B' = 0")
    A1 = -(A * B) / dB
    B1 = (dB * A - A.derivative() * B - B * B) / dB
    C1 = C - C.derivative() * B / dB
    return FirstOrderForm(A1, B1, C1)


def prop1_chain(A, B=None, C=None, mu: int = 1) -> FirstOrderForm:
    form = _form(A, B, C)
    for step in range(1, mu + 1):
        try:
            form = prop1_step(form)
        except ConstructionError as exc:
            raise ConstructionError(str(exc), step) from None
    return form


def prop1_iterate(A, B=None, C=None, mu: int = 1) -> LinearODE:
    """First-order equation for the mu-th derivative of the input's solution.

    If F = sum n! P(n) x^n, that derivative is sum n! prod_{i<=mu} (n+i)^2 P(n+mu) x^n.
    """
    if mu < 0:
        raise ValueError("mu must be non-negative")
    return prop1_chain(A, B, C, mu).to_ode()


def first_to_second(A, B=None, C=None) -> LinearODE:
    """d/dx of A w' + B w = C:  A w'' + (A' + B) w' + B' w = C'."""
    A, B, C = _form(A, B, C)
    return LinearODE.from_rational([B.derivative(), A.derivative() + B, A], C.derivative())


def prop2_shift_form(A, B=None, C=None, m: int = 1) -> FirstOrderForm:
    """Equation for G = x^m F:  (A / x^m) G' + (B / x^m - m A / x^(m+1)) G = C."""
    A, B, C = _form(A, B, C)
    if m < 0:
        raise ValueError("m must be non-negative")
    xm = RationalFunction(X**m)
    return FirstOrderForm(A / xm, B / xm - A * m / (xm * X), C)


def prop2_shift(ode, m: int) -> LinearODE:
    return prop2_shift_form(ode, m=m).to_ode()


def combine(R) -> LinearODE:
    """x^2 w'' + (3x-1) w' + w + R [x^2 w' + (x-1) w + 1] = 0, denominators cleared."""
    R = RationalFunction.lift(R)
    x = RationalFunction(X)
    return LinearODE.from_rational([1 + R * (x - 1), 3 * x - 1 + R * x * x, RationalFunction(X**2)], -R)


def derive_first_order(P, shift: int = 0) -> FirstOrderForm:
    """A first-order equation for sum n! P(n) x^(n+shift), for any polynomial P.

    Writes the series as R F0 + T, solves for F0 and substitutes into
    x^2 F0' + (x - 1) F0 = -1.
    """
    R, T = decompose(P, shift)
    if R.is_zero():
        raise ConstructionError("series is rational; no F0 component")
    x = RationalFunction(X)
    x2 = x * x
    # F0 = (Y - T)/R,  F0' = (Y' - T')/R - (Y - T) R'/R^2
    A = x2 / R
    B = -x2 * R.derivative() / (R * R) + (x - 1) / R
    C = -1 + x2 * (T.derivative() / R - T * R.derivative() / (R * R)) + (x - 1) * T / R
    return FirstOrderForm(A, B, C)


def phi_alpha_first_order(alpha) -> FirstOrderForm:
    """The stated equation for sum n! (n+alpha) x^n."""
    a = Fraction(alpha)
    x = Polynomial.x()
    return FirstOrderForm.of(
        x * x * ((a - 1) * x + 1),
        (a - 1) * x * x - (a - 3) * x - 1,
        -((a - 1) ** 2) * x - a,
    )


def rederive_phi_alpha_beta(alpha, beta) -> FirstOrderForm:
    """First-order equation for sum n! (n+alpha)(n+beta) x^n built from the Phi_alpha one.

    Phi_ab = x Phi_a' + beta Phi_a.  With a Phi_a' + b Phi_a = c this gives
    Phi_a = (a Y - x c) / D, D = a beta - x b, Y = Phi_ab; substituting back
    into the Phi_alpha equation leaves
        a^2 D Y' + (a a' D - a^2 D' + a b D) Y = c D^2 + a (x c)' D - a x c D' + b x c D.
    """
    a, b, c = phi_alpha_first_order(alpha)
    beta = Fraction(beta)
    x = RationalFunction(X)
    D = a * beta - x * b
    if D.is_zero():
        raise ConstructionError("degenerate: a*beta - x*b vanishes")
    xc = x * c
    A = a * a * D
    B = a * a.derivative() * D - a * a * D.derivative() + a * b * D
    C = c * D * D + a * xc.derivative() * D - a * xc * D.derivative() + b * xc * D
    return FirstOrderForm(A, B, C)


def reduce_common_factor(ode: LinearODE) -> LinearODE:
    """Divide out the polynomial gcd of all coefficients and the right-hand side."""
    g = Polynomial()
    for p in list(ode.coeffs) + [ode.rhs]:
        g = p if g.is_zero() else g.gcd(p)
    if g.is_zero() or g.is_constant():
        return ode
    return LinearODE([c // g for c in ode.coeffs], ode.rhs // g)


def product_form_series(P: FactorialPolynomial, mu: int) -> FactorialPolynomial:
    """prod_{i=1}^mu (n+i)^2 P(n+mu): the coefficient law of the mu-th derivative."""
    n = Polynomial.x()
    out = P.poly.shift(mu)
    for i in range(1, mu + 1):
        out = out * (n + i) ** 2
    return FactorialPolynomial(out)
