from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ormer.errors import CountOverflow, DegenerateSpacing, NotBooted
from ormer.fixedmath import FixedQ64, price_to_tick, tick_to_price
from ormer.p2core import MAX_COUNT, MarkerState, linear_adjust, parabolic_adjust
from oracles import lagrange_at, sorted_median


def fed(values):
    m = MarkerState()
    for v in values:
        m.add(v)
    return m


def test_parabolic_collinear_extrapolates():
    assert parabolic_adjust(1, 2, 3, 10, 20, 30, 1) == FixedQ64.from_int(30)


def test_parabolic_exact_square():
    assert parabolic_adjust(1, 3, 5, 1, 9, 25, 1) == FixedQ64.from_int(16)


def test_parabolic_uneven_spacing():
    got = parabolic_adjust(1, 2, 4, 0, 1, 2, 1)
    want = lagrange_at((1, 2, 4), (0, 1, 2), 3)
    assert want == Fraction(5, 3)
    assert got == FixedQ64(want.numerator * (1 << 64) // want.denominator)


@given(
    st.integers(1, 50), st.integers(1, 50), st.integers(1, 50),
    st.integers(-1000, 1000), st.integers(-1000, 1000), st.integers(-1000, 1000),
)
def test_parabolic_matches_lagrange(g1, g2, n0, a, b, c):
    n = (n0, n0 + g1, n0 + g1 + g2)
    for d in (1, -1):
        got = parabolic_adjust(*n, a, b, c, d)
        want = lagrange_at(n, (a, b, c), n[1] + d)
        assert abs(got.to_fraction() - want) < Fraction(1, 1 << 63)


def test_parabolic_degenerate():
    with pytest.raises(DegenerateSpacing):
        parabolic_adjust(1, 1, 3, 0, 1, 2, 1)


def test_linear_examples():
    assert linear_adjust(2, 4, 20, 26, 1) == FixedQ64.from_int(23)
    assert linear_adjust(2, 4, 20, 20, 1) == FixedQ64.from_int(20)
    assert linear_adjust(5, 3, 10, 4, -1) == FixedQ64.from_int(7)
    with pytest.raises(DegenerateSpacing):
        linear_adjust(3, 3, 1, 2, 1)


def test_init_sorts_on_fifth():
    m = fed([5, 1, 4, 2, 3])
    assert m.h == [1, 2, 3, 4, 5]
    assert m.n == [1, 2, 3, 4, 5]
    assert m.estimate_median() == 3


def test_init_identical():
    m = fed([7] * 5)
    assert m.h == [7] * 5


def test_not_booted():
    m = fed([1, 2])
    with pytest.raises(NotBooted):
        m.estimate_median()
    with pytest.raises(NotBooted):
        m.observe(3)
    assert m.buffered() == [1, 2]


@pytest.mark.parametrize("p,k,h", [(25, 1, [10, 20, 30, 40, 50]), (0, 0, [0, 20, 30, 40, 50]),
                                   (90, 3, [10, 20, 30, 40, 90]), (20, 0, [10, 20, 30, 40, 50])])
def test_find_cell(p, k, h):
    m = fed([10, 20, 30, 40, 50])
    assert m.find_cell(p) == k
    assert m.h == h


def test_constant_stream():
    m = MarkerState()
    for _ in range(50):
        m.add(100)
        if m.booted:
            assert m.estimate_median() == 100


def test_sorted_ramp_stream():
    m = fed(range(1, 101))
    assert abs(m.estimate_median() - 50.5) / 50.5 <= 0.05


@pytest.mark.parametrize("seed", range(5))
def test_lognormal_ticks_within_two_percent(seed):
    rng = np.random.default_rng(seed)
    prices = rng.lognormal(0.0, 0.1, 10_000)
    ticks = [price_to_tick(FixedQ64.from_float(p)) for p in prices]
    m = fed(ticks)
    exact = float(sorted_median(prices))
    est = float(tick_to_price(m.estimate_median()))
    assert abs(est - exact) / exact <= 0.02


def test_spikes_barely_move_estimate():
    rng = np.random.default_rng(3)
    clean = [int(x) for x in 46000 + rng.integers(-50, 50, 25)]  # ticks near price 100
    spiked = list(clean)
    spiked[7] += 23027  # x10 in tick space
    spiked[18] += 23027
    exact = 1.0001 ** sorted_median(clean)
    est = 1.0001 ** fed(spiked).estimate_median()
    assert abs(est - exact) / exact <= 0.05


def test_positions_and_extremes():
    rng = np.random.default_rng(11)
    xs = [int(v) for v in rng.integers(-5000, 5000, 400)]
    m = MarkerState()
    for i, v in enumerate(xs, 1):
        m.add(v)
        if m.booted:
            assert m.n[0] == 1 and m.n[4] == m.count
            assert all(m.n[j] < m.n[j + 1] for j in range(4))
            assert all(m.h[j] <= m.h[j + 1] for j in range(4))
            assert m.h[0] == min(xs[:i]) and m.h[4] == max(xs[:i])


def test_count_overflow():
    m = fed([1, 2, 3, 4, 5])
    m.count = MAX_COUNT
    with pytest.raises(CountOverflow):
        m.observe(3)


def test_reset():
    m = fed([1, 2, 3, 4, 5, 6])
    m.reset()
    assert m.count == 0 and m.n == [1, 2, 3, 4, 5]
