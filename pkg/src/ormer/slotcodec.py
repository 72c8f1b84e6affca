"""Bit-exact packing of one estimator state into a 256-bit storage word.

Layout, most-significant field first::

    [255..240] window_size        u16
    [239..224] observation_count  u16
    [223..200] last_estimation    i24 (two's complement)
    [199..120] positions[0..4]    u16 x 5, index 0 highest
    [119..0]   heights[0..4]      i24 x 5, index 0 highest

The codec only enforces field widths.  Semantic validity (window >= 6,
increasing positions, ...) is checked by :func:`validate_state`, because the
codec must also round-trip the all-zero word and other raw states.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import FieldOutOfRange

SLOT_BITS = 256
WORD_MASK = (1 << SLOT_BITS) - 1

U16_MAX = 0xFFFF
I24_MIN = -(1 << 23)
I24_MAX = (1 << 23) - 1

# (name, width, signed) in layout order
_LAYOUT = (
    ("window_size", 16, False),
    ("observation_count", 16, False),
    ("last_estimation", 24, True),
) + tuple((f"positions[{i}]", 16, False) for i in range(5)) + tuple(
    (f"heights[{i}]", 24, True) for i in range(5)
)
assert sum(w for _, w, _ in _LAYOUT) == SLOT_BITS

SlotWord = int


@dataclass(frozen=True)
class PackedState:
    window_size: int = 0
    observation_count: int = 0
    last_estimation: int = 0
    positions: tuple[int, ...] = (0, 0, 0, 0, 0)
    heights: tuple[int, ...] = (0, 0, 0, 0, 0)

    def fields(self) -> tuple[int, ...]:
        return (
            self.window_size,
            self.observation_count,
            self.last_estimation,
            *self.positions,
            *self.heights,
        )


def _to_field(name: str, value: int, width: int, signed: bool) -> int:
    if signed:
        lo, hi = -(1 << (width - 1)), (1 << (width - 1)) - 1
    else:
        lo, hi = 0, (1 << width) - 1
    if not isinstance(value, int) or not lo <= value <= hi:
        raise FieldOutOfRange(f"{name}={value!r} does not fit in {'i' if signed else 'u'}{width}")
    return value & ((1 << width) - 1)


def encode_slot(state: PackedState) -> SlotWord:
    if len(state.positions) != 5 or len(state.heights) != 5:
        raise FieldOutOfRange("positions and heights must have exactly 5 entries")
    word = 0
    for (name, width, signed), value in zip(_LAYOUT, state.fields()):
        word = (word << width) | _to_field(name, value, width, signed)
    return word


def decode_slot(word: SlotWord) -> PackedState:
    """Inverse of :func:`encode_slot`; any 256-bit word decodes."""
    if not 0 <= word <= WORD_MASK:
        raise FieldOutOfRange("slot word must be an unsigned 256-bit integer")
    values = []
    shift = SLOT_BITS
    for _, width, signed in _LAYOUT:
        shift -= width
        v = (word >> shift) & ((1 << width) - 1)
        if signed and v >> (width - 1):
            v -= 1 << width
        values.append(v)
    return PackedState(
        window_size=values[0],
        observation_count=values[1],
        last_estimation=values[2],
        positions=tuple(values[3:8]),
        heights=tuple(values[8:13]),
    )


def validate_state(state: PackedState, booted: bool | None = None) -> None:
    """Raise FieldOutOfRange unless ``state`` is a valid estimator state.

    ``booted`` defaults to ``observation_count >= 5``; heights must be ordered
    only once the marker engine has sorted them.
    """
    if not 6 <= state.window_size <= U16_MAX:
        raise FieldOutOfRange(f"window_size={state.window_size} outside [6, 65535]")
    if not 0 <= state.observation_count <= state.window_size:
        raise FieldOutOfRange("observation_count exceeds window_size")
    p = state.positions
    if any(p[i] >= p[i + 1] for i in range(4)):
        raise FieldOutOfRange(f"positions not strictly increasing: {p}")
    if booted is None:
        booted = state.observation_count >= 5
    h = state.heights
    if booted and any(h[i] > h[i + 1] for i in range(4)):
        raise FieldOutOfRange(f"heights not ordered: {h}")


def slot_hex(word: SlotWord) -> str:
    """Big-endian 64-hex-character rendering used in reports."""
    return f"{word:064x}"


def slot_from_hex(text: str) -> SlotWord:
    if len(text) != 64:
        raise FieldOutOfRange("slot hex must be exactly 64 characters")
    return int(text, 16)


class WriteKind(Enum):
    ZERO_TO_NONZERO = "zero_to_nonzero"
    NONZERO_TO_NONZERO = "nonzero_to_nonzero"
    TO_ZERO = "to_zero"


def classify_write(old: SlotWord, new: SlotWord) -> WriteKind:
    """Transition class of a storage write, as priced by the cost model."""
    if new == 0:
        return WriteKind.TO_ZERO
    if old == 0:
        return WriteKind.ZERO_TO_NONZERO
    return WriteKind.NONZERO_TO_NONZERO
