"""Euler-Lagrange equations of quadratic Lagrangians.

L = a q'^2 + 2 b q' q + c q^2 + 2 d q' + 2 e q + f  gives
a q'' + a' q' + (b' - c) q = e - d'.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ..exact_algebra import RationalFunction, X
from ..parsing import parse_rational, parse_rational_function
from .equations import LinearODE


@dataclass(frozen=True)
class LogAugmentedCoefficient:
    """r(t) + lam * log t; only its derivative r'(t) + lam / t is ever needed."""

    rational: RationalFunction
    log: Fraction = Fraction(0)

    @classmethod
    def of(cls, r, log=0) -> LogAugmentedCoefficient:
        return cls(RationalFunction.lift(r), Fraction(log))

    def derivative(self) -> RationalFunction:
        return self.rational.derivative() + RationalFunction(self.log, X)

    def is_zero(self) -> bool:
        return self.rational.is_zero() and self.log == 0

    def to_str(self, var: str = "t") -> str:
        s = self.rational.to_str(var)
        if self.log:
            s += f" + {self.log}*log({var})"
        return s


@dataclass(frozen=True)
class QuadraticLagrangian:
    a: LogAugmentedCoefficient
    b: LogAugmentedCoefficient
    c: LogAugmentedCoefficient
    d: LogAugmentedCoefficient
    e: LogAugmentedCoefficient
    f: LogAugmentedCoefficient

    def __post_init__(self):
        for name in "acdef":
            if getattr(self, name).log:
                raise ValueError(f"log term allowed only in b, found one in {name}")

    @classmethod
    def from_terms(cls, qdot2=0, qdotq=0, q2=0, qdot=0, q=0, free=0, qdotq_log=0) -> QuadraticLagrangian:
        """Coefficients of q'^2, q'q, q^2, q', q, 1 as they appear in L."""
        half = Fraction(1, 2)
        lift = RationalFunction.lift
        C = LogAugmentedCoefficient.of
        return cls(
            C(qdot2),
            C(lift(qdotq) * half, Fraction(qdotq_log) * half),
            C(q2),
            C(lift(qdot) * half),
            C(lift(q) * half),
            C(free),
        )


def euler_lagrange(L: QuadraticLagrangian) -> LinearODE:
    if L.a.is_zero():
        raise ValueError("a(t) vanishes: the equation is not second order")
    a = L.a.rational
    return LinearODE.from_rational(
        [L.b.derivative() - L.c.rational, a.derivative(), a],
        L.e.rational - L.d.derivative(),
    )


def example_6_5(C=0) -> QuadraticLagrangian:
    """(t^2/2) q'^2 + (t^3/3 + 2 log t + 1/t + C) q' q + (t^2/2) q^2 - q'/t + q/t."""
    t = RationalFunction(X)
    return QuadraticLagrangian.from_terms(
        qdot2=t * t * Fraction(1, 2),
        qdotq=t**3 * Fraction(1, 3) + 1 / t + Fraction(C),
        qdotq_log=2,
        q2=t * t * Fraction(1, 2),
        qdot=-1 / t,
        q=1 / t,
    )


BUILTIN = {"example_6_5": example_6_5}

_TERM_KEYS = {"qdot^2": "qdot2", "qdot*q": "qdotq", "q^2": "q2", "qdot": "qdot", "q": "q", "1": "free"}


def lagrangian_from_dict(desc: dict) -> QuadraticLagrangian:
    """Build from a mapping such as

        {"variable": "t", "constants": {"C": "0"},
         "terms": {"qdot^2": "t^2/2", "qdot*q": {"rational": "t^3/3 + 1/t + C", "log": "2"}, ...}}

    Term values are expressions in the variable or objects with
    ``rational`` and (for ``qdot*q`` only) ``log`` fields.
    """
    var = desc.get("variable", "t")
    constants = {k: parse_rational(str(v)) for k, v in desc.get("constants", {}).items()}
    kwargs = {}
    for key, value in desc.get("terms", {}).items():
        if key not in _TERM_KEYS:
            raise ValueError(f"unknown term {key!r}; expected one of {sorted(_TERM_KEYS)}")
        name = _TERM_KEYS[key]
        if isinstance(value, dict):
            kwargs[name] = parse_rational_function(str(value.get("rational", "0")), var, constants)
            if "log" in value:
                if key != "qdot*q":
                    raise ValueError("a log t term is only supported in the qdot*q coefficient")
                kwargs["qdotq_log"] = parse_rational(str(value["log"]))
        else:
            kwargs[name] = parse_rational_function(str(value), var, constants)
    return QuadraticLagrangian.from_terms(**kwargs)


def load_lagrangian(source: str) -> QuadraticLagrangian:
    """A builtin name (``example_6_5``) or a path to a JSON description."""
    if source in BUILTIN:
        return BUILTIN[source]()
    return lagrangian_from_dict(json.loads(Path(source).read_text()))
