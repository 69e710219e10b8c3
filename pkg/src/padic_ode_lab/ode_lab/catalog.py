"""Stated equations for factorial series, transcribed literally, plus a verified catalog."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from ..exact_algebra import Polynomial
from ..factorial_series import FactorialPolynomial, FactorialSeries
from .construct import (
    first_to_second,
    prop1_iterate,
    rederive_phi_alpha_beta,
    reduce_common_factor,
)
from .equations import LinearODE, verify_formal

x = Polynomial.x()
ONE = Polynomial([1])

DEFAULT_KS = tuple(range(9))
DEFAULT_ALPHAS = (Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2), Fraction(-1, 3))
DEFAULT_ALPHA_BETAS = (
    (Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(2)),
    (Fraction(2), Fraction(-1)),
    (Fraction(1, 2), Fraction(1, 3)),
    (Fraction(-1, 3), Fraction(3)),
)


def _n_poly(*factors) -> FactorialPolynomial:
    return FactorialPolynomial.from_factors(factors)


# -- stated equations --------------------------------------------------------

def eq_2_1() -> LinearODE:
    return LinearODE([x - 1, x * x], -1)


def eq_1_3() -> LinearODE:
    return LinearODE([ONE, 3 * x - 1, x * x], 0)


def eq_3_7() -> LinearODE:
    return LinearODE([x * x - 3 * x + 1, x * x * (x - 1)], x)


def eq_3_8() -> LinearODE:
    return LinearODE([x + 1, x * (3 * x - 1), x**3], 0)


def eq_3_9() -> LinearODE:
    return LinearODE([2 * x - 1, x * x], -1)


def eq_3_10() -> LinearODE:
    return LinearODE([Polynomial([2]), 4 * x - 1, x * x], 0)


def eq_3_11() -> LinearODE:
    return LinearODE([3 * x - 1, x * x], -2)


def eq_3_12() -> LinearODE:
    return LinearODE([Polynomial([3]), 5 * x - 1, x * x], 0)


def eq_3_13(alpha) -> LinearODE:
    a = Fraction(alpha)
    return LinearODE(
        [(a - 1) * x * x - (a - 3) * x - 1, x * x * ((a - 1) * x + 1)],
        -((a - 1) ** 2) * x - a,
    )


def eq_3_14(alpha) -> LinearODE:
    a = Fraction(alpha)
    c2 = x * x * ((a - 1) * x + 1) * ((a - 1) ** 2 * x + a)
    c1 = 3 * (a - 1) ** 3 * x**3 - (a - 1) * (a * a - 9 * a + 4) * x * x - (2 * a * a - 7 * a + 1) * x - a
    c0 = (a - 1) ** 3 * x * x + 2 * a * (a - 1) * x + (a + 1)
    return LinearODE([c0, c1, c2], 0)


def eq_3_15(k: int) -> LinearODE:
    return LinearODE([(k + 1) * x - 1, x * x], -factorial(k))


def eq_3_16(k: int) -> LinearODE:
    return LinearODE([Polynomial([k + 1]), (k + 3) * x - 1, x * x], 0)


def eq_3_17(k: int) -> LinearODE:
    return LinearODE([Polynomial([(k + 1) ** 2]), (2 * k + 3) * x - 1, x * x], 0)


def eq_3_18(alpha, beta) -> LinearODE:
    a, b = Fraction(alpha), Fraction(beta)
    q = (a - 1) * (b - 1) * x * x + (a + b - 3) * x + 1
    lin = (a - 1) * x + 1
    c1 = x * x * lin * q
    c0 = (
        x * (b - 1) * lin * q
        + x * (3 * (a - 1) * x + 2) * q
        - x * x * lin * (2 * (a - 1) * (b - 1) * x + a + b - 3)
        - q * q
    )
    rhs = x * ((a - 1) ** 2 * x + a) * (2 * (a - 1) * (b - 1) * x + a + b - 3) - ((a - 1) ** 2 * (b + 1) * x + a * b) * q
    return LinearODE([c0, c1], rhs)


def eq_3_19() -> LinearODE:
    return LinearODE([x**3 - 7 * x * x + 6 * x - 1, x * x * (x * x - 3 * x + 1)], -x * (x + 1))


def eq_3_20() -> LinearODE:
    return LinearODE(
        [
            x**4 + 2 * x**3 - 13 * x * x + 2 * x + 1,
            x * (3 * x**4 - 6 * x**3 - 7 * x * x + 6 * x - 1),
            x**3 * (x + 1) * (x * x - 3 * x + 1),
        ],
        0,
    )


def eq_6_4() -> LinearODE:
    return LinearODE([2 * x - 1, 2 * x**3, x**4], x - 1)


def eq_7_4_factors() -> tuple[LinearODE, LinearODE]:
    """The two brackets, each read as A u' + B u = C."""
    return eq_2_1(), eq_3_9()


# -- catalog ------------------------------------------------------------------


@dataclass
class EquationCatalogEntry:
    name: str
    parameters: dict
    first: LinearODE
    second: LinearODE
    solution: FactorialSeries
    sources: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    status: str = "unchecked"
    detail: str = ""
    rederived: LinearODE | None = None

    @property
    def key(self) -> str:
        if not self.parameters:
            return self.name
        params = ",".join(f"{k}={v}" for k, v in self.parameters.items())
        return f"{self.name}[{params}]"

    def verify(self, order: int) -> EquationCatalogEntry:
        self.results = {
            "first": verify_formal(self.first, self.solution, order),
            "second": verify_formal(self.second, self.solution, order),
        }
        if self.rederived is not None:
            self.results["rederived"] = verify_formal(self.rederived, self.solution, order)
        bad = [k for k in ("first", "second") if not self.results[k].verified]
        if bad:
            self.status = "discrepancy"
            self.detail = "; ".join(f"{k}: {self.results[k].describe()}" for k in bad)
        else:
            self.status = "verified"
            self.detail = f"both residuals vanish through order {order}"
        return self


def _entry(name, params, first, second, P, sources=None, shift=0) -> EquationCatalogEntry:
    return EquationCatalogEntry(
        name,
        params,
        first,
        second,
        FactorialSeries(P, shift),
        sources or {"first": "stated", "second": "stated"},
    )


def build_entries(
    ks=DEFAULT_KS, alphas=DEFAULT_ALPHAS, alpha_betas=DEFAULT_ALPHA_BETAS
) -> list[EquationCatalogEntry]:
    """Unverified catalog entries, in a fixed order."""
    one = FactorialPolynomial(ONE)
    entries = [
        _entry("(2.1)/(1.3)", {}, eq_2_1(), eq_1_3(), one),
        _entry("(3.5)/(3.6)", {}, eq_2_1(), eq_1_3(), one),
        _entry("(3.7)/(3.8)", {}, eq_3_7(), eq_3_8(), FactorialPolynomial(x)),
        _entry("(3.9)/(3.10)", {}, eq_3_9(), eq_3_10(), _n_poly((1, 1))),
        _entry("(3.11)/(3.12)", {}, eq_3_11(), eq_3_12(), _n_poly((1, 1), (2, 1))),
    ]
    for a in alphas:
        entries.append(_entry("(3.13)/(3.14)", {"alpha": a}, eq_3_13(a), eq_3_14(a), _n_poly((a, 1))))
    for k in ks:
        P = _n_poly(*[(i, 1) for i in range(1, k + 1)]) if k else one
        entries.append(_entry("(3.15)/(3.16)", {"k": k}, eq_3_15(k), eq_3_16(k), P))
    for k in ks:
        P = _n_poly(*[(i, 2) for i in range(1, k + 1)]) if k else one
        first = prop1_iterate(eq_2_1(), mu=k)
        entries.append(
            _entry("(3.17)", {"k": k}, first, eq_3_17(k), P, {"first": "derived: k derivative steps from (2.1)", "second": "stated"})
        )
    for a, b in alpha_betas:
        first = eq_3_18(a, b)
        entry = _entry(
            "(3.18)",
            {"alpha": a, "beta": b},
            first,
            first_to_second(first.as_first_order()),
            _n_poly((a, 1), (b, 1)),
            {"first": "stated", "second": "derived: differentiated first-order equation"},
        )
        entry.rederived = reduce_common_factor(rederive_phi_alpha_beta(a, b).to_ode())
        entries.append(entry)
    entries.append(_entry("(3.19)/(3.20)", {}, eq_3_19(), eq_3_20(), FactorialPolynomial(x * x)))
    entries.append(
        _entry("(6.4)", {}, eq_2_1(), eq_6_4(), one, {"first": "stated (2.1)", "second": "stated"})
    )
    return entries


def catalog(order: int = 60, **kwargs) -> list[EquationCatalogEntry]:
    """Every entry, verified through ``order``.

    A failing check marks the entry "discrepancy"; it never aborts.
    """
    return [e.verify(order) for e in build_entries(**kwargs)]


