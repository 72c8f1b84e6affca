"""Independent reference implementations used only by the tests.

They share no code with the package: ticks come from 80-digit Decimal
powers, medians from sorting, parabolas from Lagrange interpolation.
"""

from decimal import Context, Decimal
from fractions import Fraction

_CTX = Context(prec=80)
_BASE = Decimal("1.0001")


def tick_price(tick: int) -> Decimal:
    return _CTX.power(_BASE, tick)


def nearest_tick(price) -> int:
    """Round-to-nearest log base 1.0001, found by bracketing with Decimal."""
    p = Decimal(price) if not isinstance(price, Fraction) else _CTX.divide(
        Decimal(price.numerator), Decimal(price.denominator))
    guess = int(_CTX.divide(_CTX.ln(p), _CTX.ln(_BASE)))
    lo = guess - 2
    while tick_price(lo + 1) <= p:
        lo += 1
    while tick_price(lo) > p:
        lo -= 1
    # p lies in [1.0001^lo, 1.0001^(lo+1)); compare against the geometric midpoint
    mid = _CTX.multiply(tick_price(lo), _CTX.sqrt(_BASE))
    return lo + 1 if p > mid else lo


def lagrange_at(xs, ys, x) -> Fraction:
    total = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Fraction(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term *= Fraction(x - xj, xi - xj)
        total += term
    return total


def sorted_median(values):
    s = sorted(values)
    m = len(s) // 2
    return s[m] if len(s) % 2 else (s[m - 1] + s[m]) / 2


def sliding_median(values, window):
    return [sorted_median(values[max(0, i - window + 1): i + 1]) for i in range(len(values))]


def check_markers(m, seen_min, seen_max):
    """Raise AssertionError unless a booted marker state is well ordered."""
    n, h = m.n, m.h
    assert n[0] == 1 and n[4] == m.count, (n, m.count)
    assert all(n[j] < n[j + 1] for j in range(4)), n
    assert all(h[j] <= h[j + 1] for j in range(4)), h
    assert h[0] == seen_min and h[4] == seen_max, (h, seen_min, seen_max)
