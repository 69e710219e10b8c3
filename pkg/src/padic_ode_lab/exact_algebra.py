"""Exact algebra over Q: dense polynomials, rational functions, truncated series.

Rationals are :class:`fractions.Fraction` throughout.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence


class KnownOrderError(ValueError):
    """An operation asked for coefficients beyond what a series knows."""


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Polynomial:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of x^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> Polynomial:
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> Polynomial:
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, factors: Iterable[tuple]) -> Polynomial:
        """prod (x + a)^k over ``(a, k)`` pairs."""
        out = cls([1])
        for a, k in factors:
            out = out * cls([a, 1]) ** k
        return out

    # -- basic properties --------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def valuation(self) -> int | float:
        """Lowest exponent with a nonzero coefficient (inf for 0)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return math.inf

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- ring operations ---------------------------------------------------

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Polynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other: Polynomial):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        d = other.degree
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + d] / lead
            q[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Polynomial(q), Polynomial(rem[:d] if d > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- calculus and evaluation -------------------------------------------

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, value):
        """Horner evaluation; works for any ring element supporting + and *."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def evaluate(self, value):
        return self(value)

    def compose_linear(self, a, b) -> Polynomial:
        """p(a*x + b)."""
        lin = Polynomial([b, a])
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def shift(self, c) -> Polynomial:
        return self.compose_linear(1, c)

    def compose(self, other: Polynomial) -> Polynomial:
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    # -- normalization -------------------------------------------------------

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        return Polynomial(c / self.leading for c in self.coeffs)

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive over Z."""
        if self.is_zero():
            return Fraction(0)
        num = reduce(math.gcd, (c.numerator for c in self.coeffs))
        den = reduce(math.lcm, (c.denominator for c in self.coeffs))
        return Fraction(num, den)

    def gcd(self, other: Polynomial) -> Polynomial:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __repr__(self):
        return f"Polynomial({[_fmt_coeff(c) for c in self.coeffs]})"

    def to_str(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = _fmt_coeff(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()


X = Polynomial.x()


class RationalFunction:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Polynomial) else Polynomial([num])
        if den is None:
            den = Polynomial([1])
        elif not isinstance(den, Polynomial):
            den = Polynomial([den])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Polynomial(), Polynomial([1])
            return
        g = num.gcd(den)
        if not g.is_constant():
            num, den = num // g, den // g
        lead = den.leading
        self.num = Polynomial(c / lead for c in num.coeffs)
        self.den = den.monic()

    @classmethod
    def lift(cls, value) -> RationalFunction:
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, (Polynomial, int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot lift {type(value).__name__} to a rational function")

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __eq__(self, other):
        try:
            other = RationalFunction.lift(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _other(self, other):
        try:
            return RationalFunction.lift(other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return RationalFunction(self.den ** -n, self.num ** -n)
        return RationalFunction(self.num**n, self.den**n)

    def derivative(self) -> RationalFunction:
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def __call__(self, value):
        d = self.den(value)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at {value}")
        return self.num(value) / d

    def to_str(self, var: str = "x") -> str:
        if self.is_polynomial():
            return self.num.to_str(var)
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RationalFunction({self.to_str()})"


def clear_denominators(coeffs: Sequence) -> tuple[list[Polynomial], Polynomial]:
    """Multiply a coefficient list through by its least common denominator.

    Returns the polynomial coefficients and the (monic) factor used.
    """
    rfs = [RationalFunction.lift(c) for c in coeffs]
    lcd = Polynomial([1])
    for r in rfs:
        lcd = lcd * r.den // lcd.gcd(r.den)
    lcd = lcd.monic()
    return [(r * lcd).as_polynomial() for r in rfs], lcd


# ---------------------------------------------------------------------------
# truncated series
# ---------------------------------------------------------------------------


def _ord(order) -> float | int:
    return math.inf if order is None else order


class TruncatedSeries:
    """sum c_e x^e for e = offset, offset+1, ..., known exactly through ``order``.

    ``order=None`` marks an exact, finitely supported series (a Laurent
    polynomial).  Asking for a coefficient past ``order`` raises
    :class:`KnownOrderError`; nothing is silently truncated.
    """

    __slots__ = ("offset", "coeffs", "order")

    def __init__(self, coeffs: Iterable = (), offset: int = 0, order: int | None = None):
        cs = [_frac(c) for c in coeffs]
        if order is not None:
            if order < min(0, offset):
                raise KnownOrderError(f"known order {order} below offset {offset}")
            cs = cs[: max(order - offset + 1, 0)]
            cs += [Fraction(0)] * (order - offset + 1 - len(cs))
        else:
            while cs and cs[-1] == 0:
                cs.pop()
        # drop leading zeros so offset is the valuation when possible
        start = 0
        while start < len(cs) and cs[start] == 0 and (order is None or offset + start < order):
            start += 1
        if order is None and start == len(cs):
            cs, offset = [], 0
        else:
            cs, offset = cs[start:], offset + start
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.offset = offset
        self.order = order

    @classmethod
    def from_polynomial(cls, poly: Polynomial, order: int | None = None) -> TruncatedSeries:
        return cls(poly.coeffs, 0, order)

    @classmethod
    def from_function(cls, f, order: int, offset: int = 0) -> TruncatedSeries:
        return cls((f(e) for e in range(offset, order + 1)), offset, order)

    def is_exact(self) -> bool:
        return self.order is None

    def coefficient(self, e: int) -> Fraction:
        if e > _ord(self.order):
            raise KnownOrderError(f"coefficient of x^{e} requested, known only through x^{self.order}")
        i = e - self.offset
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    __getitem__ = coefficient

    def valuation(self) -> int | float:
        """Lowest exponent carrying a nonzero coefficient.

        A series that is zero through its known order reports ``order + 1``
        (the first exponent where it might be nonzero); the exact zero, inf.
        """
        for i, c in enumerate(self.coeffs):
            if c:
                return self.offset + i
        return _ord(self.order) + 1

    def first_nonzero(self) -> tuple[int, Fraction] | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return self.offset + i, c
        return None

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not any(self.coeffs)

    def exponents(self) -> range:
        return range(self.offset, self.offset + len(self.coeffs))

    def items(self):
        return zip(self.exponents(), self.coeffs)

    def truncate(self, order: int) -> TruncatedSeries:
        if order > _ord(self.order):
            raise KnownOrderError(f"cannot extend known order {self.order} to {order}")
        return TruncatedSeries(self.coeffs, self.offset, order)

    def _lift(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, Polynomial):
            return TruncatedSeries.from_polynomial(other)
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([other])
        return NotImplemented

    @staticmethod
    def _min_order(*orders):
        known = [o for o in orders if o is not None]
        return min(known) if known else None

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        order = self._min_order(self.order, other.order)
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs))
        if order is not None:
            hi = min(hi, order + 1)
            lo = min(lo, order)
        cs = [self._get(e) + other._get(e) for e in range(lo, hi)]
        return TruncatedSeries(cs, lo, order)

    __radd__ = __add__

    def _get(self, e: int) -> Fraction:
        i = e - self.offset
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.offset, self.order)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scalar_mul(self, c) -> TruncatedSeries:
        c = _frac(c)
        return TruncatedSeries([c * a for a in self.coeffs], self.offset, self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scalar_mul(other)
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        # coefficient at e needs a_i for i <= e - val(other); it is known while that index is
        va, vb = self.valuation(), other.valuation()
        bound = min(_ord(self.order) + vb, _ord(other.order) + va)
        if self.order is None and other.order is None:
            order = None
        elif bound == math.inf:
            # one side is an exact zero
            order = None
        else:
            order = int(bound)
        lo = self.offset + other.offset
        if not self.coeffs or not other.coeffs:
            return TruncatedSeries([], lo if order is None else min(lo, order), order)
        n = len(self.coeffs) + len(other.coeffs) - 1
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        if order is not None and order < lo:
            raise KnownOrderError(f"product known only through x^{order}")
        return TruncatedSeries(out, lo, order)

    __rmul__ = __mul__

    def derivative(self) -> TruncatedSeries:
        order = None if self.order is None else self.order - 1
        if not self.coeffs:
            if order is not None and order < min(0, self.offset - 1):
                raise KnownOrderError("derivative leaves no known coefficients")
            return TruncatedSeries([], max(self.offset - 1, 0) if self.offset > 0 else self.offset - 1, order)
        cs = [e * c for e, c in self.items()]
        offset = self.offset - 1
        if self.offset == 0:
            cs, offset = cs[1:], 0
        if order is not None and order < min(0, offset):
            raise KnownOrderError(f"derivative known only through x^{order}")
        return TruncatedSeries(cs, offset, order)

    def shift_by_power(self, m: int) -> TruncatedSeries:
        """x^m * self."""
        return TruncatedSeries(self.coeffs, self.offset + m, None if self.order is None else self.order + m)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order != other.order:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def to_str(self, var: str = "x", terms: int = 8) -> str:
        shown = [(e, c) for e, c in self.items() if c][:terms]
        if not shown:
            body = "0"
        else:
            body = " + ".join(
                _fmt_coeff(c) if e == 0 else f"{_fmt_coeff(c)}*{var}^{e}" for e, c in shown
            ).replace("+ -", "- ")
        if self.order is not None:
            body += f" + O({var}^{self.order + 1})"
        return body

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"TruncatedSeries(offset={self.offset}, order={self.order}, coeffs={[_fmt_coeff(c) for c in self.coeffs]})"
