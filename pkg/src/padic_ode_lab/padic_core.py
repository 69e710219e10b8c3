"""Fixed-precision arithmetic in Q_p.

A nonzero value is stored as ``unit * p**val`` where the unit is an integer
coprime to ``p`` known modulo ``p**(prec - val)``; ``prec`` is the absolute
precision, i.e. the value is known modulo ``p**prec``.

Two kinds of zero exist.  The exact zero (``prec is None``) comes from
embedding the rational 0.  A *zero to precision k* is what a computation
returns when its result is indistinguishable from 0 modulo ``p**k``; residual
checks rely on the difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

DEFAULT_PRECISION = 64


class PadicError(ArithmeticError):
    pass


class ContextMismatch(PadicError):
    pass


class DomainError(PadicError, ValueError):
    pass


class PrecisionError(PadicError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def int_valuation(n: int, p: int) -> int:
    """v_p(n) for a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(q, p: int) -> float | int:
    """v_p of a rational; ``math.inf`` for 0."""
    q = Fraction(q)
    if q == 0:
        return math.inf
    return int_valuation(q.numerator, p) - int_valuation(q.denominator, p)


@dataclass(frozen=True)
class PadicContext:
    """A prime together with the default working precision."""

    p: int
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"{self.p!r} is not a prime")
        if not isinstance(self.precision, int) or self.precision < 1:
            raise ValueError(f"precision must be a positive integer, got {self.precision!r}")

    def __call__(self, q, prec: int | None = None) -> PadicNumber:
        return from_rational(q, self, prec)

    def zero(self, prec: int | None = None) -> PadicNumber:
        return PadicNumber(self, None, 0, prec)

    def one(self) -> PadicNumber:
        return from_rational(1, self)


class PadicNumber:
    __slots__ = ("ctx", "val", "unit", "prec")

    def __init__(self, ctx: PadicContext, val: int | None, unit: int, prec: int | None):
        # Callers go through _normalized(); this constructor trusts its input.
        self.ctx = ctx
        self.val = val
        self.unit = unit
        self.prec = prec

    # -- construction helpers -------------------------------------------

    @classmethod
    def _normalized(cls, ctx: PadicContext, v: int, s: int, prec: int) -> PadicNumber:
        """Build ``s * p**v`` known modulo ``p**prec``."""
        p = ctx.p
        if prec <= v:
            return cls(ctx, None, 0, prec)
        s %= p ** (prec - v)
        if s == 0:
            return cls(ctx, None, 0, prec)
        while s % p == 0:
            s //= p
            v += 1
        return cls(ctx, v, s % p ** (prec - v), prec)

    # -- predicates and accessors ----------------------------------------

    @property
    def p(self) -> int:
        return self.ctx.p

    def is_exact_zero(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True for the exact zero and for zero-to-precision values."""
        return self.val is None

    @property
    def valuation(self):
        """v_p of the value.

        For a zero to precision k this is k, the guaranteed lower bound;
        for the exact zero it is ``math.inf``.
        """
        if self.prec is None:
            return math.inf
        if self.val is None:
            return self.prec
        return self.val

    @property
    def relative_precision(self) -> int | float:
        if self.prec is None:
            return math.inf
        if self.val is None:
            return 0
        return self.prec - self.val

    def norm(self) -> Fraction:
        """|x|_p as an exact rational.

        0 for the exact zero; for a zero to precision k the bound p^-k.
        """
        if self.prec is None:
            return Fraction(0)
        return Fraction(self.p) ** (-self.valuation)

    def to_fraction(self) -> Fraction:
        """The rational ``unit * p**val`` (the canonical representative)."""
        if self.val is None:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def residue(self) -> int:
        """Integer representative in [0, p**prec) of a p-adic integer."""
        if self.prec is None:
            return 0
        if self.valuation < 0:
            raise DomainError("value is not a p-adic integer")
        if self.val is None:
            return 0
        return self.unit * self.p ** self.val % self.p ** self.prec

    def digits(self, count: int | None = None) -> list[int]:
        """Base-p digits of the unit, least significant first."""
        if self.val is None:
            return []
        n = self.unit
        out = []
        limit = self.relative_precision if count is None else min(count, self.relative_precision)
        for _ in range(limit):
            n, d = divmod(n, self.p)
            out.append(d)
        return out

    def with_prec(self, prec: int) -> PadicNumber:
        """Reduce to absolute precision ``prec``."""
        if self.prec is not None and prec > self.prec:
            raise PrecisionError(f"value only known mod {self.p}^{self.prec}, asked for {prec}")
        if self.val is None:
            return PadicNumber(self.ctx, None, 0, prec)
        return PadicNumber._normalized(self.ctx, self.val, self.unit, prec)

    def congruent(self, other, prec: int) -> bool:
        """True when self - other has valuation >= prec (both known that far)."""
        diff = self - other
        if diff.prec is not None and diff.prec < prec:
            raise PrecisionError(f"difference only known mod {self.p}^{diff.prec}, asked for {prec}")
        return diff.valuation >= prec

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other, *, mul: bool = False) -> PadicNumber:
        if isinstance(other, PadicNumber):
            if other.ctx.p != self.ctx.p:
                raise ContextMismatch(f"cannot combine {self.p}-adic and {other.p}-adic values")
            return other
        if isinstance(other, (int, Rational)):
            q = Fraction(other)
            if q == 0:
                return PadicNumber(self.ctx, None, 0, None)
            if mul:
                rel = max(self.ctx.precision, int(min(self.relative_precision, 10**9)))
                return from_rational(q, self.ctx, valuation(q, self.p) + rel)
            if self.prec is None:
                return from_rational(q, self.ctx)
            return from_rational(q, self.ctx, max(self.prec, valuation(q, self.p) + 1))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.prec is None:
            return other
        if other.prec is None:
            return self
        prec = min(self.prec, other.prec)
        if self.val is None:
            return other.with_prec(prec)
        if other.val is None:
            return self.with_prec(prec)
        v = min(self.val, other.val)
        p = self.p
        s = self.unit * p ** (self.val - v) + other.unit * p ** (other.val - v)
        return PadicNumber._normalized(self.ctx, v, s, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.val is None:
            return self
        return PadicNumber(self.ctx, self.val, -self.unit % self.p ** (self.prec - self.val), self.prec)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other, mul=True)
        if other is NotImplemented:
            return NotImplemented
        if self.prec is None or other.prec is None:
            return PadicNumber(self.ctx, None, 0, None)
        if self.val is None and other.val is None:
            return PadicNumber(self.ctx, None, 0, self.prec + other.prec)
        if self.val is None:
            return PadicNumber(self.ctx, None, 0, self.prec + other.val)
        if other.val is None:
            return PadicNumber(self.ctx, None, 0, other.prec + self.val)
        v = self.val + other.val
        rel = min(self.prec - self.val, other.prec - other.val)
        return PadicNumber._normalized(self.ctx, v, self.unit * other.unit, v + rel)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other, mul=True)
        if other is NotImplemented:
            return NotImplemented
        if other.val is None:
            raise ZeroDivisionError("division by a value indistinguishable from zero")
        if self.prec is None:
            return self
        if self.val is None:
            return PadicNumber(self.ctx, None, 0, self.prec - other.val)
        v = self.val - other.val
        rel = min(self.prec - self.val, other.prec - other.val)
        mod = self.p ** rel
        return PadicNumber._normalized(self.ctx, v, self.unit * pow(other.unit, -1, mod), v + rel)

    def __rtruediv__(self, other):
        other = self._coerce(other, mul=True)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** -n)
        result = from_rational(1, self.ctx, max(self.ctx.precision, int(min(self.relative_precision, 10**9))))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ContextMismatch:
            return False
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # -- rendering ----------------------------------------------------------

    def __repr__(self):
        if self.prec is None:
            return f"PadicNumber(p={self.p}, exact zero)"
        if self.val is None:
            return f"PadicNumber(p={self.p}, O({self.p}^{self.prec}))"
        return f"PadicNumber(p={self.p}, val={self.val}, unit={self.unit}, prec={self.prec})"

    def __str__(self):
        p = self.p
        if self.prec is None:
            return "0"
        if self.val is None:
            return f"O({p}^{self.prec})"
        return f"{p}^{self.val} * {self.unit} + O({p}^{self.prec})"

    def render_digits(self, count: int = 12) -> str:
        """Digit expansion ``...d2 d1 d0 * p^v``, most significant digit first."""
        if self.val is None:
            return str(self)
        ds = self.digits(count)
        head = "..." if self.relative_precision > len(ds) else ""
        return f"{head}{' '.join(str(d) for d in reversed(ds))} * {self.p}^{self.val}"


def from_rational(q, ctx: PadicContext, prec: int | None = None) -> PadicNumber:
    """Embed a rational into Q_p.

    With ``prec=None`` the unit is kept to ``ctx.precision`` digits (relative
    precision); otherwise ``prec`` is the absolute precision.
    """
    q = Fraction(q)
    if q == 0:
        return PadicNumber(ctx, None, 0, None)
    p = ctx.p
    a, b = q.numerator, q.denominator
    va = int_valuation(a, p)
    vb = int_valuation(b, p)
    v = va - vb
    if prec is None:
        prec = v + ctx.precision
    if prec <= v:
        return PadicNumber(ctx, None, 0, prec)
    mod = p ** (prec - v)
    unit = (a // p**va) * pow(b // p**vb, -1, mod) % mod
    return PadicNumber(ctx, v, unit, prec)


def norm(a: PadicNumber) -> Fraction:
    return a.norm()


def padic_exp(z: PadicNumber) -> PadicNumber:
    """exp(z) = sum z^n/n! for v_p(z) > 1/(p-1).

    The term count comes from v_p(z^n/n!) >= n*v - (n-1)/(p-1), a bound that
    increases with n on the domain, so the first index reaching the target
    precision bounds the whole tail.
    """
    ctx = z.ctx
    p = ctx.p
    if z.prec is None:
        return from_rational(1, ctx)
    v = z.valuation
    if v * (p - 1) <= 1:
        raise DomainError(f"exp needs v_{p}(z) > 1/({p}-1); got valuation {v}")
    target = z.prec
    if z.val is None:
        return from_rational(1, ctx, target)
    zq = z.to_fraction()
    total = Fraction(0)
    term = Fraction(1)
    n = 0
    # stop at the first n with n*v - (n-1)/(p-1) >= target
    while n * v * (p - 1) - (n - 1) < target * (p - 1):
        total += term
        n += 1
        term = term * zq / n
    return from_rational(total, ctx, target)


def rational_reconstruction(a: PadicNumber) -> Fraction | None:
    """The rational r/s with |r|, |s| <= sqrt(p^N / 2) congruent to ``a`` mod p^N.

    N is the absolute precision of ``a``.  Returns None when no such pair
    exists (the stored digits do not come from a small rational).
    """
    if a.prec is None:
        return Fraction(0)
    p = a.p
    shift = min(a.valuation, 0)
    # work with the p-adic integer p^(-shift) * a
    N = a.prec - shift
    if N <= 0:
        return None
    mod = p**N
    if a.val is None:
        return Fraction(0)
    n = a.unit * p ** (a.val - shift) % mod
    bound = math.isqrt(mod // 2)
    r0, r1, s0, s1 = mod, n, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, s1) != 1 or s1 % p == 0:
        return None
    return Fraction(r1, s1) * Fraction(p) ** shift
