"""Back-testing metrics: regression errors, Tweedie deviances, lag and scores.

All metrics run on two feeds resampled to a common grid with previous-tick
(step) interpolation, which is how an on-chain price holds between updates.
Scores are relative to a baseline oracle (the exact sliding median):

* stationary score ``S`` solves ``3 (1/S - 1) = sum_p (TD_p(X) - TD_p(base))^2``
  for Tweedie powers 0, 1, 2;
* delay score is ``(D_base,all + D_base,win) / (D_X,all + D_X,win)``;
* gas score is ``gas_base / gas_X``;
* resistance efficiency is their weighted mean, weights ``[1, 2, 2]`` by
  default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    EmptyOverlap,
    NoData,
    NonPositiveValue,
    ZeroCost,
    ZeroDenominator,
    ZeroVariance,
)

DEFAULT_DELAY_CAP = 1800
DEFAULT_DELAY_WINDOW = 3600

TABLE_COLUMNS = (
    "MAE",
    "MSE",
    "MedAE",
    "MaxErr",
    "TDP",
    "TDG",
    "MAPE",
    "Stationary Score",
    "Delay (Window)",
    "Delay (All)",
    "Delay Score",
    "Gas Consumption",
    "Gas Score",
    "Resistance Efficiency Score",
)


@dataclass(frozen=True)
class AlignedFeeds:
    times: np.ndarray
    reference: np.ndarray
    candidate: np.ndarray
    grid_step: int = 1

    def __post_init__(self):
        if len(self.reference) != len(self.candidate) or len(self.times) != len(self.reference):
            raise ValueError("aligned arrays must share one length")

    def __len__(self):
        return len(self.times)


def step_resample(times, values, grid) -> np.ndarray:
    """Value in force at each grid time (last observation at or before it)."""
    times = np.asarray(times)
    idx = np.searchsorted(times, grid, side="right") - 1
    if len(idx) and idx[0] < 0:
        raise EmptyOverlap("grid starts before the first observation")
    return np.asarray(values, dtype=float)[idx]


def align_feeds(ref_times, ref_values, cand_times, cand_values, grid_step: int = 1) -> AlignedFeeds:
    if len(ref_times) == 0 or len(cand_times) == 0:
        raise EmptyOverlap("one of the feeds is empty")
    start = max(ref_times[0], cand_times[0])
    end = min(ref_times[-1], cand_times[-1])
    if end < start:
        raise EmptyOverlap("feeds do not overlap in time")
    grid = np.arange(start, end + 1, grid_step)
    return AlignedFeeds(
        times=grid,
        reference=step_resample(ref_times, ref_values, grid),
        candidate=step_resample(cand_times, cand_values, grid),
        grid_step=grid_step,
    )


def regression_metrics(a: AlignedFeeds) -> dict[str, float]:
    if len(a) == 0:
        raise EmptyOverlap("no aligned points")
    err = a.candidate - a.reference
    abs_err = np.abs(err)
    return {
        "MAE": float(abs_err.mean()),
        "MSE": float((err**2).mean()),
        "MedAE": float(np.median(abs_err)),
        "MaxErr": float(abs_err.max()),
        "MAPE": float((abs_err / np.abs(a.reference)).mean() * 100.0),
    }


def tweedie_deviance(y, y_hat, power: int) -> float:
    """Mean Tweedie deviance for power 0 (squared error), 1 (Poisson), 2 (Gamma)."""
    y = np.asarray(y, dtype=float)
    y_hat = np.asarray(y_hat, dtype=float)
    if len(y) == 0:
        raise EmptyOverlap("no aligned points")
    if power == 0:
        dev = (y - y_hat) ** 2
    elif power in (1, 2):
        if (y <= 0).any() or (y_hat <= 0).any():
            raise NonPositiveValue(f"Tweedie power {power} needs strictly positive values")
        if power == 1:
            dev = 2 * (y * np.log(y / y_hat) + y_hat - y)
        else:
            dev = 2 * (np.log(y_hat / y) + y / y_hat - 1)
    else:
        raise ValueError(f"unsupported Tweedie power {power}")
    return float(dev.mean())


def tweedie_triplet(a: AlignedFeeds) -> tuple[float, float, float]:
    return tuple(tweedie_deviance(a.reference, a.candidate, p) for p in (0, 1, 2))


def stationary_score(td_x: Sequence[float], td_base: Sequence[float]) -> float:
    total = sum((x - b) ** 2 for x, b in zip(td_x, td_base, strict=True))
    return 3.0 / (3.0 + total)


def _lag_correlations(x: np.ndarray, y: np.ndarray, cap: int) -> np.ndarray:
    n = len(x)
    corr = np.full(min(cap, n - 2) + 1, -np.inf)
    for t in range(len(corr)):
        xs = x[: n - t]
        ys = y[t:]
        xc = xs - xs.mean()
        yc = ys - ys.mean()
        denom = math.sqrt(float(xc @ xc) * float(yc @ yc))
        if denom > 0:
            corr[t] = float(xc @ yc) / denom
    return corr


def delay_lag(x, y, cap: int = DEFAULT_DELAY_CAP) -> int:
    """Shift ``t`` in ``[0, cap]`` grid steps maximising corr(x(s), y(s + t)).

    Ties go to the smallest lag.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) != len(y):
        raise ValueError("series must be resampled to a common grid")
    if len(x) < 3:
        raise NoData("need at least three points for a lag estimate")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise ZeroVariance("correlation undefined for a constant series")
    corr = _lag_correlations(x, y, cap)
    if not np.isfinite(corr).any():
        raise ZeroVariance("no lag with non-degenerate overlap")
    return int(np.argmax(corr))


def delay_windowed(x, y, window: int = DEFAULT_DELAY_WINDOW, cap: int = DEFAULT_DELAY_CAP) -> float:
    """Mean of per-window lags over consecutive full windows."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    lags = []
    for s in range(0, len(x) - window + 1, window):
        try:
            lags.append(delay_lag(x[s : s + window], y[s : s + window], min(cap, window // 2)))
        except ZeroVariance:
            continue
    if not lags:
        raise NoData("no window with usable variance")
    return float(np.mean(lags))


def delay_score(delays_x: tuple[float, float], delays_base: tuple[float, float]) -> float:
    """Delays are ``(window, all)`` pairs."""
    den = delays_x[0] + delays_x[1]
    if den == 0:
        raise ZeroDenominator("candidate delays are both zero")
    return (delays_base[0] + delays_base[1]) / den


def gas_score(cost_x: float, cost_base: float) -> float:
    if cost_x <= 0:
        raise ZeroCost("candidate cost must be positive")
    return cost_base / cost_x


@dataclass(frozen=True)
class ScoreWeights:
    w0: float = 1.0
    w1: float = 2.0
    w2: float = 2.0

    def __post_init__(self):
        if min(self.w0, self.w1, self.w2) < 0 or self.w0 + self.w1 + self.w2 <= 0:
            raise ValueError("weights must be non-negative with a positive sum")


def resistance_efficiency(stationary: float, delay: float, gas: float,
                          weights: ScoreWeights = ScoreWeights()) -> float:
    w = weights
    return (w.w0 * stationary + w.w1 * delay + w.w2 * gas) / (w.w0 + w.w1 + w.w2)


def feed_metrics(a: AlignedFeeds, cap: int = DEFAULT_DELAY_CAP,
                 delay_window: int = DEFAULT_DELAY_WINDOW) -> dict[str, float | None]:
    """Raw (unscored) metric row for one candidate against the reference."""
    row: dict[str, float | None] = dict(regression_metrics(a))
    td0, td1, td2 = tweedie_triplet(a)
    row.update({"TD0": td0, "TDP": td1, "TDG": td2})
    step = a.grid_step
    cap_steps = max(cap // step, 1)
    try:
        row["Delay (All)"] = float(delay_lag(a.reference, a.candidate, cap_steps) * step)
    except (ZeroVariance, NoData):
        row["Delay (All)"] = None
    try:
        row["Delay (Window)"] = delay_windowed(
            a.reference, a.candidate, max(delay_window // step, 3), cap_steps
        ) * step
    except (ZeroVariance, NoData):
        row["Delay (Window)"] = None
    return row


def score_rows(rows: dict[str, dict], baseline: str,
               weights: ScoreWeights = ScoreWeights()) -> dict[str, dict]:
    """Add Stationary/Delay/Gas/Resistance Efficiency scores to metric rows.

    Each row needs ``TD0``, ``TDP``, ``TDG``, ``Delay (Window)``,
    ``Delay (All)`` and ``Gas Consumption``.  Scores that cannot be formed
    (missing delay, zero cost) are reported as ``None``.
    """
    base = rows[baseline]
    td_base = (base["TD0"], base["TDP"], base["TDG"])
    out = {}
    for name, row in rows.items():
        r = dict(row)
        st = stationary_score((row["TD0"], row["TDP"], row["TDG"]), td_base)
        try:
            de = delay_score((row["Delay (Window)"], row["Delay (All)"]),
                             (base["Delay (Window)"], base["Delay (All)"]))
        except (TypeError, ZeroDenominator):
            de = None
        try:
            gs = gas_score(row["Gas Consumption"], base["Gas Consumption"])
        except ZeroCost:
            gs = None
        r["Stationary Score"] = st
        r["Delay Score"] = de
        r["Gas Score"] = gs
        r["Resistance Efficiency Score"] = (
            None if de is None or gs is None else resistance_efficiency(st, de, gs, weights)
        )
        out[name] = r
    return out
