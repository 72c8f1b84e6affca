"""Seeded synthetic feeds on a one-second grid.

Every generator returns a clean ``reference`` (the market price an oracle
should track) and a ``source`` feed the oracle actually observes
(reference times multiplicative log-normal noise).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .feeds import PriceSeries

SYNTH_KINDS = ("gbm", "ramp", "case-study")


@dataclass(frozen=True)
class SynthFeed:
    reference: PriceSeries
    source: PriceSeries
    clip_start: int = 0  # index where the scenario proper begins (after warm-up)


def _with_noise(times, clean, noise: float, rng) -> SynthFeed:
    noisy = clean * np.exp(noise * rng.standard_normal(len(clean))) if noise > 0 else clean
    return SynthFeed(
        reference=PriceSeries.from_floats(times, clean),
        source=PriceSeries.from_floats(times, noisy),
    )


def gbm(seconds: int, seed: int, start: float = 100.0, drift: float = 0.0,
        vol: float = 0.0005, noise: float = 0.0, t0: int = 0) -> SynthFeed:
    """Geometric Brownian motion; ``drift``/``vol`` are per-second log rates."""
    rng = np.random.default_rng(seed)
    steps = (drift - 0.5 * vol**2) + vol * rng.standard_normal(seconds - 1)
    clean = start * np.exp(np.concatenate([[0.0], np.cumsum(steps)]))
    times = np.arange(t0, t0 + seconds)
    return _with_noise(times, clean, noise, rng)


def ramp(seconds: int, seed: int, start: float = 100.0, total_change: float = 0.2,
         sine_amplitude: float = 0.03, sine_period: float = 3600.0,
         noise: float = 0.0005, t0: int = 0) -> SynthFeed:
    """Linear ramp plus a sine swing plus observation noise.

    ``total_change`` and ``sine_amplitude`` are fractions of ``start``; the
    sine phase is drawn from the seed.
    """
    rng = np.random.default_rng(seed)
    t = np.arange(seconds, dtype=float)
    phase = rng.uniform(0, 2 * np.pi)
    clean = start * (
        1.0 + total_change * t / max(seconds - 1, 1)
        + sine_amplitude * np.sin(2 * np.pi * t / sine_period + phase)
    )
    return _with_noise(np.arange(t0, t0 + seconds), clean, noise, rng)


def case_study(seed: int, level: float = 407.0, points: int = 60, block_time: int = 12,
               jitter: float = 0.0005, warmup: int = 24, t0: int = 0) -> SynthFeed:
    """Quiet block-spaced feed fluctuating slightly around ``level``.

    The first ``warmup`` points only warm the oracles up; scenario indices
    count from ``clip_start``.  No spike is included; use
    :func:`~ormer.harness.attack.inject_attack` on ``source``.
    """
    rng = np.random.default_rng(seed)
    total = warmup + points
    clean = level * np.exp(jitter * rng.standard_normal(total))
    times = t0 + block_time * np.arange(total)
    feed = PriceSeries.from_floats(times, clean)
    return SynthFeed(reference=feed, source=feed, clip_start=warmup)


def synthesize(kind: str, seconds: int, seed: int, **kwargs) -> SynthFeed:
    if kind == "gbm":
        return gbm(seconds, seed, **kwargs)
    if kind == "ramp":
        return ramp(seconds, seed, **kwargs)
    if kind == "case-study":
        block_time = kwargs.pop("block_time", 12)
        warmup = kwargs.pop("warmup", 24)
        points = max(seconds // block_time - warmup, 1)
        return case_study(seed, points=points, block_time=block_time, warmup=warmup, **kwargs)
    raise ValueError(f"unknown synthetic kind {kind!r}; choose from {SYNTH_KINDS}")
