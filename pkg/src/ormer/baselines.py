"""Reference oracles: time-weighted average, EMA and exact sliding median."""

from __future__ import annotations

import bisect
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptyWindow, InsufficientHistory, NonMonotonicTimestamp
from .fixedmath import FixedQ64, round_div

DEFAULT_RING_CAPACITY = 65536


@dataclass
class TwapAccumulator:
    """Cumulative price-seconds with one checkpoint per update.

    Each checkpoint is ``(t, a_t, p)``: the accumulator value at ``t`` and the
    price that holds from ``t`` until the next update.  Accumulators are raw
    64.64 integers, so the integral itself is exact.
    """

    capacity: int = DEFAULT_RING_CAPACITY
    checkpoints: deque = field(default_factory=deque)

    def __post_init__(self):
        if self.capacity < 1:
            raise ValueError("capacity must be positive")
        self.checkpoints = deque(self.checkpoints, maxlen=self.capacity)

    @property
    def last_time(self) -> int | None:
        return self.checkpoints[-1][0] if self.checkpoints else None

    def update(self, t: int, price: FixedQ64) -> None:
        if self.checkpoints:
            t_last, a_last, p_last = self.checkpoints[-1]
            if t <= t_last:
                raise NonMonotonicTimestamp(f"timestamp {t} not after {t_last}")
            acc = a_last + p_last.raw * (t - t_last)
        else:
            acc = 0
        self.checkpoints.append((t, acc, price))

    def cumulative(self, t: int) -> int:
        """Raw accumulator value at ``t`` (held price interpolation)."""
        cps = self.checkpoints
        if not cps or t < cps[0][0]:
            raise InsufficientHistory(f"no checkpoint at or before t={t}")
        if t >= cps[-1][0]:
            j = len(cps) - 1
        else:
            j = bisect.bisect_right(_TimeView(cps), t) - 1
        t_j, a_j, p_j = cps[j]
        return a_j + p_j.raw * (t - t_j)

    def query(self, window: int, now: int | None = None, allow_partial: bool = False) -> FixedQ64:
        """Average price over ``[now - window, now]``.

        With ``allow_partial`` the window is clipped to the available history
        instead of raising InsufficientHistory.
        """
        if window <= 0:
            raise ValueError("window must be positive")
        if not self.checkpoints:
            raise InsufficientHistory("accumulator is empty")
        now = self.last_time if now is None else now
        if now < self.last_time:
            raise NonMonotonicTimestamp("query time precedes the last update")
        start = now - window
        first = self.checkpoints[0][0]
        if start < first:
            if not allow_partial:
                raise InsufficientHistory(f"history starts at {first}, window needs {start}")
            start = first
        if now == start:
            return self.checkpoints[-1][2]
        return FixedQ64(round_div(self.cumulative(now) - self.cumulative(start), now - start))


class _TimeView:
    """Sequence view over checkpoint timestamps for ``bisect``."""

    def __init__(self, cps):
        self._cps = cps

    def __len__(self):
        return len(self._cps)

    def __getitem__(self, i):
        return self._cps[i][0]


def ema_alpha(window: int) -> Fraction:
    return Fraction(2, window + 1)


@dataclass
class EmaState:
    alpha: Fraction
    value: FixedQ64 | None = None

    def __post_init__(self):
        self.alpha = Fraction(self.alpha)
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")

    def update(self, price: FixedQ64) -> FixedQ64:
        if self.value is None:
            self.value = price
        else:
            a = self.alpha
            step = round_div(a.numerator * (price.raw - self.value.raw), a.denominator)
            self.value = FixedQ64(self.value.raw + step)
        return self.value


@dataclass
class MedianBuffer:
    window: int
    values: deque = field(default_factory=deque)

    def __post_init__(self):
        if self.window < 1:
            raise ValueError("window must be positive")
        self.values = deque(self.values, maxlen=self.window)

    def update(self, price: FixedQ64) -> None:
        self.values.append(price)

    def median(self) -> FixedQ64:
        return true_median(self.values)


def true_median(values) -> FixedQ64:
    """Exact median; an even count averages the two middle values."""
    s = sorted(values)
    if not s:
        raise EmptyWindow("median of an empty window")
    m = len(s) // 2
    if len(s) % 2:
        return s[m]
    return FixedQ64(round_div(s[m - 1].raw + s[m].raw, 2))
