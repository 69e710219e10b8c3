"""p-adic factorial series, the ODEs they satisfy, and the sums they evaluate."""

__version__ = "0.1.0"

from .exact_algebra import Polynomial, RationalFunction, TruncatedSeries
from .factorial_series import FactorialPolynomial, FactorialSeries, evaluate_padic
from .padic_core import DomainError, PadicContext, PadicNumber, from_rational, padic_exp, valuation

__all__ = [
    "DomainError",
    "FactorialPolynomial",
    "FactorialSeries",
    "PadicContext",
    "PadicNumber",
    "Polynomial",
    "RationalFunction",
    "TruncatedSeries",
    "__version__",
    "evaluate_padic",
    "from_rational",
    "padic_exp",
    "valuation",
]
