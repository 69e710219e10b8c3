"""Power-series solutions of homogeneous equations via their coefficient recurrence."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..exact_algebra import Polynomial, RationalFunction, TruncatedSeries
from .equations import LinearODE


def falling(n: Polynomial, j: int) -> Polynomial:
    out = Polynomial([1])
    for r in range(j):
        out = out * (n - r)
    return out


def recurrence(ode: LinearODE) -> dict[int, Polynomial]:
    """Shift -> polynomial q_shift(n) with sum_shift q_shift(n) a_(n+shift) = 0.

    The relation at index n is the coefficient of x^n after substituting
    w = sum a_m x^m; x^i w^(j) contributes c_{j,i} (n+j-i)_j a_(n+j-i).
    """
    n = Polynomial.x()
    q: dict[int, Polynomial] = {}
    for j, c in enumerate(ode.coeffs):
        for i, cji in enumerate(c.coeffs):
            if cji:
                d = j - i
                q[d] = q.get(d, Polynomial()) + falling(n + d, j) * cji
    return {d: p for d, p in sorted(q.items()) if not p.is_zero()}


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows . v = 0} by exact Gauss-Jordan elimination."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pcol in enumerate(pivots):
            v[pcol] = -m[row][fcol]
        basis.append(v)
    return basis


@dataclass
class SolutionSpace:
    dimension: int
    basis: list[TruncatedSeries]
    recurrence: dict[int, Polynomial]
    order: int
    degenerate: list[int] = field(default_factory=list)

    def solved_recurrence(self) -> dict[int, RationalFunction]:
        """a_(n+top) = sum_shift r_shift(n) a_(n+shift) for shifts below the top one."""
        top = max(self.recurrence)
        lead = self.recurrence[top]
        return {d: RationalFunction(-q, lead) for d, q in self.recurrence.items() if d != top}

    def describe(self) -> str:
        terms = []
        for d, q in self.recurrence.items():
            idx = "n" if d == 0 else f"n{d:+d}"
            terms.append(f"({q.to_str('n')})*a[{idx}]")
        return " + ".join(terms) + " = 0"


def formal_solution_space(ode: LinearODE, N: int = 40) -> SolutionSpace:
    """Dimension and basis of power-series solutions truncated at x^N.

    Unknowns a_0..a_N; every coefficient relation that involves only those
    unknowns is imposed.  Indices where a relation has only zero coefficients
    are reported in ``degenerate``.
    """
    if not ode.is_homogeneous():
        raise ValueError("formal_solution_space needs a homogeneous equation")
    if N < 10:
        raise ValueError("N must be at least 10")
    q = recurrence(ode)
    top = max(q)
    rows = []
    degenerate = []
    for e in range(0, N - top + 1):
        row = [Fraction(0)] * (N + 1)
        for d, poly in q.items():
            m = e + d
            if 0 <= m <= N:
                row[m] += poly(e)
        if any(row):
            rows.append(row)
        else:
            degenerate.append(e)
    vecs = nullspace(rows, N + 1)
    basis = []
    for v in vecs:
        lead = next(c for c in v if c)
        basis.append(TruncatedSeries([c / lead for c in v], 0, N))
    basis.sort(key=lambda s: s.valuation())
    return SolutionSpace(len(basis), basis, q, N, degenerate)
