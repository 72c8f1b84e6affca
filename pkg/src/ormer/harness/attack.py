"""Price-level spike injection and the (beta, epsilon) security check."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import EmptyOverlap, SpecOutOfRange
from ..fixedmath import FixedQ64
from .feeds import PriceSeries


@dataclass(frozen=True)
class AttackSpec:
    """At most ``beta`` manipulated points in any ``window`` consecutive points.

    Targets are either explicit ``indices`` or, when ``indices`` is None,
    ``count`` points drawn at random (seeded) subject to the same bound.
    """

    beta: int
    window: int
    magnitude: Fraction | float | str = Fraction(10)
    indices: tuple[int, ...] | None = None
    count: int = 0

    def __post_init__(self):
        object.__setattr__(self, "magnitude", Fraction(self.magnitude))
        if self.indices is not None:
            object.__setattr__(self, "indices", tuple(sorted(set(int(i) for i in self.indices))))
        if self.window < 1:
            raise SpecOutOfRange("window must be positive")
        if not 0 <= self.beta <= self.window:
            raise SpecOutOfRange(f"beta must lie in [0, window], got {self.beta}")
        if self.magnitude <= 0:
            raise SpecOutOfRange("magnitude must be positive")
        if self.count < 0:
            raise SpecOutOfRange("count must be non-negative")


def max_per_window(indices, window: int) -> int:
    """Largest number of ``indices`` falling in any run of ``window`` positions."""
    idx = np.asarray(sorted(indices), dtype=np.int64)
    if len(idx) == 0:
        return 0
    # for each index, how many later indices lie within window - 1 of it
    ends = np.searchsorted(idx, idx + window, side="left")
    return int((ends - np.arange(len(idx))).max())


def select_targets(spec: AttackSpec, n: int, seed: int) -> tuple[int, ...]:
    """Pick attacked indices; a random draw stops at ``count`` or when no slot fits under ``beta``."""
    if spec.beta == 0:
        return ()
    if spec.indices is not None:
        targets = spec.indices
        bad = [i for i in targets if not 0 <= i < n]
        if bad:
            raise SpecOutOfRange(f"attack indices {bad} outside a {n}-point series")
        worst = max_per_window(targets, spec.window)
        if worst > spec.beta:
            raise SpecOutOfRange(
                f"{worst} attacked points fall in one {spec.window}-point window, beta is {spec.beta}"
            )
        return targets
    rng = np.random.default_rng(seed)
    chosen: list[int] = []
    for i in rng.permutation(n):
        if len(chosen) >= spec.count:
            break
        trial = chosen + [int(i)]
        if max_per_window(trial, spec.window) <= spec.beta:
            chosen = trial
    return tuple(sorted(chosen))


@dataclass(frozen=True)
class AttackResult:
    series: PriceSeries
    indices: tuple[int, ...]


def inject_attack(series: PriceSeries, spec: AttackSpec, seed: int = 0) -> AttackResult:
    """Multiply the selected points by ``spec.magnitude``; leave the rest untouched."""
    targets = select_targets(spec, len(series), seed)
    prices = list(series.prices)
    for i in targets:
        prices[i] = prices[i].scale(spec.magnitude.numerator, spec.magnitude.denominator)
    return AttackResult(series=series.replace_prices(prices), indices=targets)


@dataclass(frozen=True)
class SecurityCheck:
    epsilon: float
    relative: bool = False
    deviation: float = field(default=0.0)
    at_time: int | None = None

    @property
    def passed(self) -> bool:
        return self.deviation <= self.epsilon

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "relative": self.relative,
            "deviation": self.deviation,
            "at_time": self.at_time,
            "verdict": "pass" if self.passed else "fail",
        }


def evaluate_security(clean: PriceSeries, attacked: PriceSeries, epsilon: float,
                      relative: bool = False) -> SecurityCheck:
    """Worst deviation of ``attacked`` from ``clean`` over their shared timestamps.

    ``clean`` is normally the same oracle replayed on the unmanipulated feed;
    with ``relative`` the deviation is a fraction of the clean value.
    """
    if epsilon < 0:
        raise SpecOutOfRange("epsilon must be non-negative")
    clean_at = dict(zip(clean.times, clean.prices))
    worst, worst_t = None, None
    for t, p in zip(attacked.times, attacked.prices):
        ref = clean_at.get(t)
        if ref is None:
            continue
        dev = abs(p.to_fraction() - ref.to_fraction())
        if relative:
            dev /= ref.to_fraction()
        if worst is None or dev > worst:
            worst, worst_t = dev, t
    if worst is None:
        raise EmptyOverlap("clean and attacked feeds share no timestamps")
    return SecurityCheck(epsilon=epsilon, relative=relative, deviation=float(worst), at_time=worst_t)
