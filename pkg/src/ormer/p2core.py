"""Five-marker piecewise-parabolic streaming median over ticks.

Markers track the minimum, quartiles and maximum of everything observed
since the last reset.  Heights are ticks (so they fit the 24-bit slot
fields); the parabolic and linear corrections are evaluated exactly in
64.64 and then rounded back onto the tick grid.

Positions follow the classic P-squared bookkeeping: markers strictly above
the cell of a new observation shift right, so ``n[0] == 1`` and
``n[4] == count`` always hold.  Desired positions are ``count * q`` for
``q in (0, 1/4, 1/2, 3/4, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CountOverflow, DegenerateSpacing, NotBooted
from .fixedmath import FRAC_BITS, FixedQ64, round_div

BOOT_COUNT = 5
MAX_COUNT = 0xFFFF
# desired position of marker i is count * i / 4
QUARTILES = (0.0, 0.25, 0.5, 0.75, 1.0)


def _floor_div(num: int, den: int) -> int:
    return num // den if den > 0 else (-num) // (-den)


def parabolic_adjust(
    n_prev: int, n_i: int, n_next: int, h_prev: int, h_i: int, h_next: int, d: int
) -> FixedQ64:
    """Height of the parabola through three markers, evaluated at ``n_i + d``.

    Computed as one exact rational and floored into 64.64.
    """
    g_lo = n_i - n_prev
    g_hi = n_next - n_i
    span = n_next - n_prev
    if g_lo == 0 or g_hi == 0 or span == 0:
        raise DegenerateSpacing(f"marker positions {n_prev}, {n_i}, {n_next} not distinct")
    num = d * ((g_lo + d) * (h_next - h_i) * g_lo + (g_hi - d) * (h_i - h_prev) * g_hi)
    den = span * g_hi * g_lo
    return FixedQ64((h_i << FRAC_BITS) + _floor_div(num << FRAC_BITS, den))


def linear_adjust(n_i: int, n_neighbor: int, h_i: int, h_neighbor: int, d: int) -> FixedQ64:
    """Step ``d`` along the segment toward the neighbouring marker."""
    gap = n_neighbor - n_i
    if gap == 0:
        raise DegenerateSpacing(f"marker positions coincide at {n_i}")
    return FixedQ64((h_i << FRAC_BITS) + _floor_div((d * (h_neighbor - h_i)) << FRAC_BITS, gap))


def _to_tick(value: FixedQ64) -> int:
    return round_div(value.raw, 1 << FRAC_BITS)


@dataclass
class MarkerState:
    """Marker positions ``n``, heights ``h`` and observation ``count``.

    Before five observations ``h`` holds the raw inputs in arrival order and
    ``n`` keeps its initial ``[1..5]``.
    """

    n: list[int] = field(default_factory=lambda: [1, 2, 3, 4, 5])
    h: list[int] = field(default_factory=lambda: [0, 0, 0, 0, 0])
    count: int = 0

    @property
    def booted(self) -> bool:
        return self.count >= BOOT_COUNT

    def reset(self) -> None:
        self.n = [1, 2, 3, 4, 5]
        self.h = [0, 0, 0, 0, 0]
        self.count = 0

    def add(self, p: int) -> None:
        """Feed one tick, booting first if fewer than five were seen."""
        if self.count < BOOT_COUNT:
            self.init_observe(p)
        else:
            self.observe(p)

    def init_observe(self, p: int) -> None:
        if self.count >= BOOT_COUNT:
            raise ValueError("marker engine already booted")
        self.h[self.count] = p
        self.count += 1
        if self.count == BOOT_COUNT:
            self.h.sort()
            self.n = [1, 2, 3, 4, 5]

    def find_cell(self, p: int) -> int:
        """Cell index ``k`` with ``h[k] <= p <= h[k+1]``; widens the extremes."""
        h = self.h
        if p < h[0]:
            h[0] = p
            return 0
        if p <= h[1]:
            return 0
        if p <= h[2]:
            return 1
        if p <= h[3]:
            return 2
        if p <= h[4]:
            return 3
        h[4] = p
        return 3

    def observe(self, p: int) -> int:
        """Full P-squared step for a booted engine. Returns the number of
        marker height corrections made."""
        if self.count < BOOT_COUNT:
            raise NotBooted(f"marker engine needs {BOOT_COUNT} observations, has {self.count}")
        if self.count >= MAX_COUNT:
            raise CountOverflow(f"observation count would exceed {MAX_COUNT}")
        self.count += 1
        k = self.find_cell(p)
        n, h = self.n, self.h
        for j in range(k + 1, 5):
            n[j] += 1
        moves = 0
        count = self.count
        for i in (1, 2, 3):
            # 4 * (desired - actual), kept integral
            dev4 = count * i - 4 * n[i]
            if dev4 >= 4 and n[i + 1] - n[i] > 1:
                d = 1
            elif dev4 <= -4 and n[i - 1] - n[i] < -1:
                d = -1
            else:
                continue
            cand = parabolic_adjust(n[i - 1], n[i], n[i + 1], h[i - 1], h[i], h[i + 1], d)
            lo, hi = h[i - 1] << FRAC_BITS, h[i + 1] << FRAC_BITS
            if not lo < cand.raw < hi:
                cand = linear_adjust(n[i], n[i + d], h[i], h[i + d], d)
            h[i] = _to_tick(cand)
            n[i] += d
            moves += 1
        return moves

    def estimate_median(self) -> int:
        if self.count < BOOT_COUNT:
            raise NotBooted(f"marker engine needs {BOOT_COUNT} observations, has {self.count}")
        return self.h[2]

    def buffered(self) -> list[int]:
        """Observations currently held, sorted (all five once booted)."""
        return sorted(self.h[: min(self.count, BOOT_COUNT)])
