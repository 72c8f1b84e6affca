"""Windowed median oracles: Ormer MED and the delay-suppressed MedDS.

MED runs one marker engine per window of ``L`` observations.  When a window
fills, its median estimate becomes ``E_last`` and the engine restarts; the
published price blends the finished and the running window::

    E_t = ((L - c) * E_last + c * E_current) / L

evaluated on prices (ticks are decoded first).  While a restarted engine is
still collecting its first five observations the running estimate is taken
to be ``E_last``, i.e. the output holds; in the very first window nothing is
published until the engine boots.

MedDS feeds every observation to a window ``T`` and a window ``T // 2`` MED
and extrapolates along their ratio::

    p_hat = (p_half + p_full) / 2 * p_half / p_full

Both keep their whole state in 256-bit words (one for MED, two for MedDS).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FieldOutOfRange, FixedPointDivisionByZero, NonPositivePrice
from .fixedmath import FixedQ64, round_div, tick_to_price
from .p2core import BOOT_COUNT, MarkerState
from .slotcodec import I24_MIN, U16_MAX, PackedState, SlotWord, decode_slot, encode_slot, validate_state

MIN_WINDOW = 6
# Stored in the last-estimation field while no window has completed.  It lies
# far outside the usable price-tick range, so it never collides with a real
# estimate.
NO_ESTIMATE = I24_MIN


def blend_window(e_last: FixedQ64, e_current: FixedQ64, count: int, window: int) -> FixedQ64:
    """Weighted sum of the previous and the running window estimate."""
    if not 0 <= count <= window:
        raise ValueError(f"count {count} outside [0, {window}]")
    num = (window - count) * e_last.raw + count * e_current.raw
    return FixedQ64(round_div(num, window))


def fuse_delay(p_half: FixedQ64, p_full: FixedQ64) -> FixedQ64:
    """Project the half-window estimate forward along ``p_half / p_full``."""
    if p_full.raw == 0:
        raise FixedPointDivisionByZero("full-window estimate is zero")
    if p_full.raw < 0 or p_half.raw < 0:
        raise NonPositivePrice("delay fusion needs positive prices")
    return FixedQ64(round_div((p_half.raw + p_full.raw) * p_half.raw, 2 * p_full.raw))


def _check_window(window: int) -> int:
    if not MIN_WINDOW <= window <= U16_MAX:
        raise FieldOutOfRange(f"window {window} outside [{MIN_WINDOW}, {U16_MAX}]")
    return window


@dataclass
class OrmerMed:
    window: int
    markers: MarkerState = field(default_factory=MarkerState)
    last: int | None = None

    def __post_init__(self):
        _check_window(self.window)

    @property
    def count(self) -> int:
        return self.markers.count

    def update(self, tick: int) -> FixedQ64 | None:
        self.markers.add(tick)
        if self.markers.count == self.window:
            self.last = self.markers.estimate_median()
            self.markers.reset()
        return self.query()

    def query(self) -> FixedQ64 | None:
        c = self.markers.count
        if self.last is None:
            if c < BOOT_COUNT:
                return None
            return tick_to_price(self.markers.h[2])
        e_last = tick_to_price(self.last)
        if c < BOOT_COUNT:
            return e_last
        return blend_window(e_last, tick_to_price(self.markers.h[2]), c, self.window)

    def pack(self) -> PackedState:
        return PackedState(
            window_size=self.window,
            observation_count=self.markers.count,
            last_estimation=NO_ESTIMATE if self.last is None else self.last,
            positions=tuple(self.markers.n),
            heights=tuple(self.markers.h),
        )

    def persist(self) -> SlotWord:
        return encode_slot(self.pack())

    @classmethod
    def unpack(cls, state: PackedState) -> OrmerMed:
        validate_state(state)
        markers = MarkerState(
            n=list(state.positions), h=list(state.heights), count=state.observation_count
        )
        last = None if state.last_estimation == NO_ESTIMATE else state.last_estimation
        return cls(window=state.window_size, markers=markers, last=last)

    @classmethod
    def restore(cls, word: SlotWord) -> OrmerMed:
        return cls.unpack(decode_slot(word))


@dataclass
class OrmerMedDS:
    full: OrmerMed
    half: OrmerMed

    def __post_init__(self):
        if self.half.window != self.full.window // 2:
            raise FieldOutOfRange(
                f"half window {self.half.window} != floor({self.full.window} / 2)"
            )

    @classmethod
    def create(cls, window: int) -> OrmerMedDS:
        _check_window(window)
        return cls(full=OrmerMed(window), half=OrmerMed(window // 2))

    @property
    def window(self) -> int:
        return self.full.window

    def update(self, tick: int) -> FixedQ64 | None:
        self.full.update(tick)
        self.half.update(tick)
        return self.query()

    def query(self) -> FixedQ64 | None:
        p_full = self.full.query()
        p_half = self.half.query()
        if p_full is None or p_half is None:
            return None
        return fuse_delay(p_half, p_full)

    def persist(self) -> tuple[SlotWord, SlotWord]:
        return self.full.persist(), self.half.persist()

    @classmethod
    def restore(cls, words: tuple[SlotWord, SlotWord]) -> OrmerMedDS:
        full_word, half_word = words
        return cls(full=OrmerMed.restore(full_word), half=OrmerMed.restore(half_word))
