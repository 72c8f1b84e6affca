"""Price series, CSV feed I/O and Poisson arrival sampling."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Iterable

import numpy as np

from ..errors import NonMonotonicTimestamp, NonPositivePrice, ParseError
from ..fixedmath import ONE_RAW, FixedQ64


@dataclass(frozen=True)
class PricePoint:
    t: int
    p: FixedQ64

    def __post_init__(self):
        if self.p.raw <= 0:
            raise NonPositivePrice(f"price at t={self.t} must be positive")


@dataclass(frozen=True)
class PriceSeries:
    """Timestamped positive prices, strictly increasing in time."""

    times: tuple[int, ...]
    prices: tuple[FixedQ64, ...]

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(int(t) for t in self.times))
        object.__setattr__(self, "prices", tuple(self.prices))
        if len(self.times) != len(self.prices):
            raise ValueError("times and prices differ in length")
        for i in range(1, len(self.times)):
            if self.times[i] <= self.times[i - 1]:
                raise NonMonotonicTimestamp(
                    f"timestamp {self.times[i]} at index {i} is not increasing", row=i
                )
        for i, p in enumerate(self.prices):
            if p.raw <= 0:
                raise NonPositivePrice(f"non-positive price at index {i}", row=i)

    @classmethod
    def from_points(cls, points: Iterable[PricePoint]) -> PriceSeries:
        pts = list(points)
        return cls(tuple(p.t for p in pts), tuple(p.p for p in pts))

    @classmethod
    def from_floats(cls, times, values) -> PriceSeries:
        return cls(tuple(int(t) for t in times), tuple(FixedQ64.from_float(float(v)) for v in values))

    def __len__(self) -> int:
        return len(self.times)

    def __iter__(self):
        return (PricePoint(t, p) for t, p in zip(self.times, self.prices))

    def values(self) -> np.ndarray:
        return np.array([p.raw for p in self.prices], dtype=float) / ONE_RAW

    def times_array(self) -> np.ndarray:
        return np.array(self.times, dtype=np.int64)

    def replace_prices(self, prices) -> PriceSeries:
        return PriceSeries(self.times, tuple(prices))


_DEC = Context(prec=40)


def format_price(p: FixedQ64) -> str:
    """Decimal text that parses back to exactly the same 64.64 value."""
    d = _DEC.divide(Decimal(p.raw), Decimal(ONE_RAW))
    text = format(d, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def _parse_number(text: str) -> Fraction:
    return Fraction(text.strip())


def _is_header(cell: str) -> bool:
    try:
        _parse_number(cell)
    except (ValueError, ZeroDivisionError):
        return True
    return False


def load_feed(path) -> PriceSeries:
    """Read ``timestamp_unix_seconds,price_decimal`` rows (header optional)."""
    times: list[int] = []
    prices: list[FixedQ64] = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row_no, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < 2:
                raise ParseError(f"row {row_no}: expected 'timestamp,price'", row=row_no)
            if row_no == 1 and _is_header(row[0]):
                continue
            try:
                t = _parse_number(row[0])
                p = _parse_number(row[1])
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"row {row_no}: cannot parse {row[:2]!r}", row=row_no) from None
            if t.denominator != 1:
                raise ParseError(f"row {row_no}: timestamp must be whole seconds", row=row_no)
            if p <= 0:
                raise NonPositivePrice(f"row {row_no}: price must be positive", row=row_no)
            t = int(t)
            if times and t <= times[-1]:
                raise NonMonotonicTimestamp(
                    f"row {row_no}: timestamp {t} not after {times[-1]}", row=row_no
                )
            fp = FixedQ64.from_fraction(p)
            if fp.raw <= 0:
                raise NonPositivePrice(f"row {row_no}: price underflows 64.64", row=row_no)
            times.append(t)
            prices.append(fp)
    return PriceSeries(tuple(times), tuple(prices))


def save_feed(series: PriceSeries, path, header: bool = True) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if header:
            w.writerow(["timestamp", "price"])
        for t, p in zip(series.times, series.prices):
            w.writerow([t, format_price(p)])


def poisson_sample(series: PriceSeries, rate: float, seed: int) -> PriceSeries:
    """Keep the price in force at Poisson arrival times (whole seconds).

    Arrivals in the same second collapse to one point, so a very high rate
    reproduces the feed on its full one-second grid.
    """
    if rate <= 0:
        raise ValueError("rate must be positive")
    if len(series) == 0:
        return series
    rng = np.random.default_rng(seed)
    t0, t_end = series.times[0], series.times[-1]
    span = t_end + 1 - t0
    kept = []
    clock = float(t0)
    chunk = min(max(int(rate * span * 1.1) + 16, 16), 1_000_000)
    while clock < t_end + 1:
        steps = np.cumsum(rng.exponential(1.0 / rate, size=chunk)) + clock
        clock = float(steps[-1])
        steps = steps[steps < t_end + 1]
        kept.append(np.unique(np.floor(steps).astype(np.int64)))
    seconds = np.unique(np.concatenate(kept))
    times = series.times_array()
    idx = np.searchsorted(times, seconds, side="right") - 1
    prices = tuple(series.prices[i] for i in idx)
    return PriceSeries(tuple(int(s) for s in seconds), prices)
