"""Signed 64.64 fixed-point numbers and tick <-> price conversion.

A :class:`FixedQ64` is a signed 128-bit integer ``raw`` read as ``raw / 2**64``.
Ticks are signed 24-bit integers, ``tick = log_1.0001(price)``.

Tick conversion never calls a floating-point ``log``/``exp``: it walks a
ladder of precomputed Q128 constants ``1.0001^(+-2^k)`` (generated by
``scripts/gen_tick_constants.py``), so results are bit-identical everywhere.

Rounding is round-to-nearest with ties toward zero wherever a value is
narrowed (``round_div``); ``fp_mul``/``fp_div`` floor, as a mulDiv would.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import (
    FixedPointDivisionByZero,
    FixedPointOverflow,
    NonPositivePrice,
    TickOutOfRange,
)

FRAC_BITS = 64
ONE_RAW = 1 << FRAC_BITS
RAW_MAX = (1 << 127) - 1
RAW_MIN = -(1 << 127)

TICK_BITS = 24
MIN_TICK = -(1 << (TICK_BITS - 1))
MAX_TICK = (1 << (TICK_BITS - 1)) - 1

# Ticks whose price is representable in 64.64 with enough resolution for an
# exact roundtrip: 1.0001^t < 2^63 above, 1.0001^t >= 2^-48 below.
MAX_PRICE_TICK = 436704
MIN_PRICE_TICK = -332727

_Q128 = 1 << 128

_INV_LADDER = (
    0xFFF97272373D413259A46990580E213A,  # 1.0001^-1
    0xFFF2E50F5F656932EF12357CF3C7FDCC,  # 1.0001^-2
    0xFFE5CACA7E10E4E61C3624EAA0941CD0,  # 1.0001^-4
    0xFFCB9843D60F6159C9DB58835C926644,  # 1.0001^-8
    0xFF973B41FA98C081472E6896DFB254C0,  # 1.0001^-16
    0xFF2EA16466C96A3843EC78B326B52861,  # 1.0001^-32
    0xFE5DEE046A99A2A811C461F1969C3053,  # 1.0001^-64
    0xFCBE86C7900A88AEDCFFC83B479AA3A4,  # 1.0001^-128
    0xF987A7253AC413176F2B074CF7815E54,  # 1.0001^-256
    0xF3392B0822B70005940C7A398E4B70F3,  # 1.0001^-512
    0xE7159475A2C29B7443B29C7FA6E889D9,  # 1.0001^-1024
    0xD097F3BDFD2022B8845AD8F792AA5825,  # 1.0001^-2048
    0xA9F746462D870FDF8A65DC1F90E061E5,  # 1.0001^-4096
    0x70D869A156D2A1B890BB3DF62BAF32F7,  # 1.0001^-8192
    0x31BE135F97D08FD981231505542FCFA6,  # 1.0001^-16384
    0x9AA508B5B7A84E1C677DE54F3E99BC9,  # 1.0001^-32768
    0x5D6AF8DEDB81196699C329225EE604,  # 1.0001^-65536
    0x2216E584F5FA1EA926041BEDFE98,  # 1.0001^-131072
    0x48A170391F7DC42444E8FA2,  # 1.0001^-262144
)
_POW_LADDER = (
    0x100068DB8BAC710CB295E9E1B089A0275,  # 1.0001^1
    0x1000D1B9C68ABE5F76B30FB7581B74FB8,  # 1.0001^2
    0x1001A37E4A234CB0830516E519450A146,  # 1.0001^4
    0x100347278AB0E92ADA25AB46019279F90,  # 1.0001^8
    0x10068EFB00A525480A5D7FDC2CCF5998F,  # 1.0001^16
    0x100D20A63B4173839DF9DAAA568442CE5,  # 1.0001^32
    0x101A4C11C742DD7729738DF5E966396F0,  # 1.0001^64
    0x1034C35C31F64CFA6DC0D6DE43D0881D3,  # 1.0001^128
    0x106A34B78C8AAFFBF81BED5A32B0FCE74,  # 1.0001^256
    0x10D72A6A46CCD8BCE9AE771B16294A7EB,  # 1.0001^512
    0x11B9A258E63928596DC757FAA33154DF7,  # 1.0001^1024
    0x13A2E2BDA04F8379F3CD17BE5C343D452,  # 1.0001^2048
    0x181954BE69E0DA8FE77F2AB42E87CF512,  # 1.0001^4096
    0x244C2655D185A02908025287709061F74,  # 1.0001^8192
    0x525816EEB9F935B1C616779E807E264B2,  # 1.0001^16384
    0x1A7C8D00B551684FF4D31AE06501B81FA8,  # 1.0001^32768
    0x2BD893D0B2DF7C97884590C66CDE3D18CA0,  # 1.0001^65536
    0x78278E1E19E448CF8B95D2152DCCF4128F29E,  # 1.0001^131072
    0x38651B58D457501416FEADE3193A21B785E9F303F8,  # 1.0001^262144
)
_HALF_TICK = 0x1000346D6FF11672AE55AD00F5C38565C  # 1.0001^0.5


def round_div(num: int, den: int) -> int:
    """Integer ``num / den`` rounded to nearest, ties toward zero."""
    if den == 0:
        raise FixedPointDivisionByZero("division by zero")
    if den < 0:
        num, den = -num, -den
    q, r = divmod(abs(num), den)
    if 2 * r > den:
        q += 1
    return q if num >= 0 else -q


def _check_raw(raw: int) -> int:
    if raw > RAW_MAX or raw < RAW_MIN:
        raise FixedPointOverflow(f"value out of signed 64.64 range (raw={raw})")
    return raw


@dataclass(frozen=True, order=True, slots=True)
class FixedQ64:
    """Signed 64.64 fixed-point value; ``raw`` is the scaled integer."""

    raw: int

    def __post_init__(self):
        _check_raw(self.raw)

    @classmethod
    def from_int(cls, value: int) -> FixedQ64:
        return cls(value << FRAC_BITS)

    @classmethod
    def from_fraction(cls, value: Union[Fraction, int, str]) -> FixedQ64:
        """Exact rational (or decimal string) to nearest representable value."""
        f = Fraction(value)
        return cls(round_div(f.numerator << FRAC_BITS, f.denominator))

    @classmethod
    def from_float(cls, value: float) -> FixedQ64:
        return cls.from_fraction(Fraction(value))

    def to_fraction(self) -> Fraction:
        return Fraction(self.raw, ONE_RAW)

    def __float__(self) -> float:
        return self.raw / ONE_RAW

    def __repr__(self) -> str:
        return f"FixedQ64({float(self)!r})"

    def __add__(self, other: FixedQ64) -> FixedQ64:
        return FixedQ64(_check_raw(self.raw + other.raw))

    def __sub__(self, other: FixedQ64) -> FixedQ64:
        return FixedQ64(_check_raw(self.raw - other.raw))

    def __neg__(self) -> FixedQ64:
        return FixedQ64(_check_raw(-self.raw))

    def __mul__(self, other: FixedQ64) -> FixedQ64:
        return fp_mul(self, other)

    def __truediv__(self, other: FixedQ64) -> FixedQ64:
        return fp_div(self, other)

    def scale(self, num: int, den: int = 1) -> FixedQ64:
        """``self * num / den`` with a single nearest rounding."""
        return FixedQ64(_check_raw(round_div(self.raw * num, den)))


ZERO = FixedQ64(0)
ONE = FixedQ64(ONE_RAW)


def fp_mul(a: FixedQ64, b: FixedQ64) -> FixedQ64:
    """``floor(a * b)`` in 64.64."""
    return FixedQ64(_check_raw((a.raw * b.raw) >> FRAC_BITS))


def fp_div(a: FixedQ64, b: FixedQ64) -> FixedQ64:
    """``floor(a / b)`` in 64.64."""
    if b.raw == 0:
        raise FixedPointDivisionByZero("fixed-point division by zero")
    return FixedQ64(_check_raw((a.raw << FRAC_BITS) // b.raw))


def check_tick(tick: int) -> int:
    if not MIN_TICK <= tick <= MAX_TICK:
        raise TickOutOfRange(f"tick {tick} outside signed 24-bit range")
    return tick


@lru_cache(maxsize=65536)
def _tick_to_raw(tick: int) -> int:
    a = abs(tick)
    r = _Q128
    k = 0
    while a:
        if a & 1:
            r = (r * _INV_LADDER[k] + (1 << 127)) >> 128
        a >>= 1
        k += 1
    # r ~ 1.0001^-|tick| in Q128
    if tick > 0:
        return round_div(1 << (128 + FRAC_BITS), r)
    return round_div(r, 1 << (128 - FRAC_BITS))


def tick_to_price(tick: int) -> FixedQ64:
    """``1.0001 ** tick`` as a 64.64 value.

    Raises FixedPointOverflow for ticks outside
    ``[MIN_PRICE_TICK, MAX_PRICE_TICK]``, where the price either does not fit
    or is too coarse to convert back to the same tick.
    """
    check_tick(tick)
    if tick > MAX_PRICE_TICK or tick < MIN_PRICE_TICK:
        raise FixedPointOverflow(f"tick {tick} has no usable 64.64 price")
    return FixedQ64(_tick_to_raw(tick))


def price_to_tick(price: FixedQ64) -> int:
    """Nearest integer to ``log_1.0001(price)`` (ties toward zero)."""
    if price.raw <= 0:
        raise NonPositivePrice(f"price must be positive, got {float(price)}")
    x = price.raw << (128 - FRAC_BITS)
    negative = x < _Q128
    if negative:
        x = (1 << 256) // x
    tick = 0
    for k in range(len(_POW_LADDER) - 1, -1, -1):
        if x >= _POW_LADDER[k]:
            x = (x * _INV_LADDER[k]) >> 128
            tick += 1 << k
    if x > _HALF_TICK:
        tick += 1
    if negative:
        tick = -tick
    if tick > MAX_PRICE_TICK or tick < MIN_PRICE_TICK:
        raise TickOutOfRange(f"price {float(price)!r} maps outside the usable tick range")
    return tick
