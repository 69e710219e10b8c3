from fractions import Fraction

from hypothesis import strategies as st

PRIMES = (2, 3, 5, 7)


def rationals(max_num=10**6, max_den=10**4, nonzero=False):
    num = st.integers(-max_num, max_num)
    if nonzero:
        num = num.filter(bool)
    return st.builds(Fraction, num, st.integers(1, max_den))


def small_polys(max_deg=4, bound=9):
    return st.lists(st.integers(-bound, bound), max_size=max_deg + 1)


def coeffs(series, N=None):
    """Coefficients of x^0..x^N (N defaults to the known order)."""
    N = series.order if N is None else N
    return [series.coefficient(e) for e in range(N + 1)]
