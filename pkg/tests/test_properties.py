"""Cross-module properties of the estimator, baselines and cost ledger."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ormer.baselines import EmaState, TwapAccumulator, ema_alpha, true_median
from ormer.errors import FixedPointOverflow
from ormer.estimator import OrmerMed, OrmerMedDS, blend_window, fuse_delay
from ormer.fixedmath import MAX_PRICE_TICK, MIN_PRICE_TICK, ONE_RAW, RAW_MAX, FixedQ64, tick_to_price
from ormer.p2core import MarkerState
from oracles import check_markers

ticks = st.integers(MIN_PRICE_TICK, MAX_PRICE_TICK)
# narrow alphabets force many ties and repeated heights
streams = st.one_of(
    st.lists(ticks, min_size=5, max_size=400),
    st.lists(st.integers(-3, 3), min_size=5, max_size=400),
    st.lists(st.sampled_from([0, 1000, 100000]), min_size=5, max_size=400),
)


@given(streams)
def test_marker_orderings_hold_after_every_update(xs):
    m = MarkerState()
    for i, x in enumerate(xs, 1):
        m.add(x)
        if m.booted:
            check_markers(m, min(xs[:i]), max(xs[:i]))


@given(st.lists(st.integers(45500, 46500), min_size=25, max_size=25), st.integers(0, 24))
def test_single_outlier_moves_less_than_mean(xs, j):
    spiked = list(xs)
    spiked[j] += 23027  # x10 in tick space
    a, b = MarkerState(), MarkerState()
    for x, y in zip(xs, spiked):
        a.add(x)
        b.add(y)
    mean_shift = Fraction(23027, len(xs))
    assert abs(b.estimate_median() - a.estimate_median()) < mean_shift


prices = ticks.map(tick_to_price)


@given(prices, prices, st.integers(1, 500), st.data())
def test_blend_is_convex(e_last, e_cur, window, data):
    c = data.draw(st.integers(0, window))
    out = blend_window(e_last, e_cur, c, window)
    assert min(e_last, e_cur) <= out <= max(e_last, e_cur)
    if c < window:
        nxt = blend_window(e_last, e_cur, c + 1, window)
        assert (nxt >= out) if e_cur >= e_last else (nxt <= out)


@given(st.integers(MIN_PRICE_TICK, MAX_PRICE_TICK - 1), st.integers(1, 5000), st.booleans())
def test_fusion_overshoots_in_trend_direction(base, gap, up):
    lo = tick_to_price(base)
    hi = tick_to_price(min(base + gap, MAX_PRICE_TICK))
    if hi == lo:
        return
    half, full = (hi, lo) if up else (lo, hi)
    h, f = half.to_fraction(), full.to_fraction()
    if (h + f) * h / (2 * f) > Fraction(RAW_MAX, ONE_RAW):
        with pytest.raises(FixedPointOverflow):
            fuse_delay(half, full)
        return
    out = fuse_delay(half, full)
    if up:
        assert out > half > full
    else:
        assert out < half < full


@given(st.lists(st.integers(40000, 48000), min_size=1, max_size=300), st.integers(12, 60))
def test_persist_restore_every_step_matches_straight_run(xs, window):
    straight = OrmerMedDS.create(window)
    words = OrmerMedDS.create(window).persist()
    for x in xs:
        want = straight.update(x)
        node = OrmerMedDS.restore(words)
        got = node.update(x)
        words = node.persist()
        assert got == want
    assert OrmerMedDS.restore(words) == straight


@given(st.lists(st.integers(1, 10**6), min_size=3, max_size=41, unique=True), st.data())
def test_true_median_breakdown(xs, data):
    if len(xs) % 2 == 0:
        xs = xs[:-1]
    vals = [FixedQ64.from_int(v) for v in xs]
    med = true_median(vals)
    k = (len(xs) - 1) // 2
    order = sorted(range(len(xs)), key=lambda i: xs[i])
    lower, upper = order[:k], order[k + 1:]
    swap = data.draw(st.lists(st.sampled_from(lower + upper), max_size=k, unique=True))
    out = list(vals)
    for i in swap:
        out[i] = FixedQ64(1) if i in lower else FixedQ64.from_int(10**9)
    assert true_median(out) == med


@given(st.lists(st.tuples(st.integers(1, 50), st.integers(1, 10**6)), min_size=2, max_size=40),
       st.integers(2, 9))
def test_twap_scales_linearly(steps, c):
    a, b = TwapAccumulator(), TwapAccumulator()
    t = 0
    for dt, p in steps:
        t += dt
        a.update(t, FixedQ64.from_int(p))
        b.update(t, FixedQ64.from_int(p * c))
    span = t - steps[0][0]
    # each side rounds once, so they agree to within c raw units
    assert abs(b.query(span).raw - c * a.query(span).raw) <= c


@given(st.integers(6, 200), st.integers(1, 10**6), st.integers(1, 10**6))
def test_ema_constant_exact_and_step_monotone(window, p0, p1):
    e = EmaState(ema_alpha(window))
    for _ in range(5):
        assert e.update(FixedQ64.from_int(p0)) == FixedQ64.from_int(p0)
    prev = e.value
    for _ in range(50):
        cur = e.update(FixedQ64.from_int(p1))
        assert (prev <= cur <= FixedQ64.from_int(p1)) if p1 >= p0 else (prev >= cur >= FixedQ64.from_int(p1))
        prev = cur


def test_med_footprint_is_constant():
    rng = np.random.default_rng(0)
    m = OrmerMed(25)
    for n in (0, 10, 1000, 20000):
        for v in rng.integers(40000, 48000, n):
            m.update(int(v))
        assert m.persist() < 1 << 256
