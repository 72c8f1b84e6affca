"""Contract-style adapters: every oracle behind the same Update/Query calls.

Each adapter keeps its persistent state in a :class:`SlotStore`, so the cost
ledger sees the storage traffic a contract with that layout would cause.
The two Ormer contracts really live in their words (decoded on every call);
the baselines keep a Python mirror for speed and write the packed words
they would store.
"""

from __future__ import annotations

from .baselines import DEFAULT_RING_CAPACITY, EmaState, MedianBuffer, TwapAccumulator, ema_alpha
from .costmodel import QUERY, UPDATE, CostLedger, SlotStore
from .errors import ConfigError
from .estimator import OrmerMed, OrmerMedDS
from .fixedmath import FixedQ64, price_to_tick

_U32 = 0xFFFFFFFF
_ACC_MASK = (1 << 224) - 1
_RAW_MASK = (1 << 128) - 1


class OracleContract:
    kind = "abstract"

    def __init__(self, window: int, ledger: CostLedger):
        self.window = window
        self.ledger = ledger
        self.store = SlotStore(ledger)

    def update(self, t: int, price: FixedQ64) -> None:
        with self.ledger.invocation(UPDATE):
            self._update(t, price)

    def query(self) -> FixedQ64 | None:
        with self.ledger.invocation(QUERY):
            return self._query()

    def _update(self, t: int, price: FixedQ64) -> None:
        raise NotImplementedError

    def _query(self) -> FixedQ64 | None:
        raise NotImplementedError


class MedContract(OracleContract):
    kind = "ormer-med"
    SLOT = ("med", 0)

    def _load(self) -> OrmerMed:
        word = self.store.read(self.SLOT)
        return OrmerMed.restore(word) if word else OrmerMed(self.window)

    def _update(self, t, price):
        est = self._load()
        est.update(price_to_tick(price))
        self.ledger.record_compute(1)
        self.store.write(self.SLOT, est.persist())

    def _query(self):
        word = self.store.read(self.SLOT)
        return OrmerMed.restore(word).query() if word else None

    def state(self) -> OrmerMed:
        word = self.store.words.get(self.SLOT, 0)
        return OrmerMed.restore(word) if word else OrmerMed(self.window)


class MedDsContract(OracleContract):
    kind = "ormer-medds"
    SLOTS = (("medds", 0), ("medds", 1))

    def __init__(self, window, ledger):
        if window // 2 < 6:
            raise ConfigError(f"MedDS needs window >= 12 (half window >= 6), got {window}")
        super().__init__(window, ledger)

    def _load(self) -> OrmerMedDS | None:
        words = tuple(self.store.read(s) for s in self.SLOTS)
        if not any(words):
            return None
        return OrmerMedDS.restore(words)

    def _update(self, t, price):
        est = self._load() or OrmerMedDS.create(self.window)
        est.update(price_to_tick(price))
        self.ledger.record_compute(2)
        for slot, word in zip(self.SLOTS, est.persist()):
            self.store.write(slot, word)

    def _query(self):
        est = self._load()
        return est.query() if est is not None else None

    def state(self) -> OrmerMedDS:
        words = tuple(self.store.words.get(s, 0) for s in self.SLOTS)
        return OrmerMedDS.restore(words) if any(words) else OrmerMedDS.create(self.window)


class TwapContract(OracleContract):
    """Ring of ``(timestamp, accumulator)`` observations plus a header word.

    A query reads the header, the newest observation and then binary-searches
    the ring for the window start.  The search takes about
    ``log2(cardinality)`` probes wherever the window starts, so its cost
    grows with history length but not with the window.
    """

    kind = "twap"
    HEADER = ("twap", "header")

    def __init__(self, window, ledger, window_seconds: int | None = None,
                 capacity: int = DEFAULT_RING_CAPACITY):
        super().__init__(window, ledger)
        self.window_seconds = window if window_seconds is None else window_seconds
        if self.window_seconds <= 0:
            raise ConfigError("TWAP window must be positive")
        self.acc = TwapAccumulator(capacity=capacity)
        self.index = -1

    def _slot(self, physical: int):
        return ("twap", physical)

    def _header_word(self, price: FixedQ64) -> int:
        card = len(self.acc.checkpoints)
        return ((price.raw & _RAW_MASK) << 64) | ((self.index & _U32) << 32) | card

    def _update(self, t, price):
        self.store.read(self.HEADER)
        if self.index >= 0:
            self.store.read(self._slot(self.index))
        self.acc.update(t, price)
        self.index = (self.index + 1) % self.acc.capacity
        t_new, a_new, _ = self.acc.checkpoints[-1]
        self.store.write(self._slot(self.index), ((t_new & _U32) << 224) | (a_new & _ACC_MASK) or 1)
        self.store.write(self.HEADER, self._header_word(price))

    def _query(self):
        self.store.read(self.HEADER)
        card = len(self.acc.checkpoints)
        if card == 0:
            return None
        self.store.read(self._slot(self.index))
        oldest = (self.index + 1) % self.acc.capacity if card == self.acc.capacity else 0
        start = self.acc.last_time - self.window_seconds
        # lower-bound search for the first checkpoint after the window start
        lo, hi = 0, card
        while lo < hi:
            mid = (lo + hi) // 2
            self.store.read(self._slot((oldest + mid) % self.acc.capacity))
            if self.acc.checkpoints[mid][0] <= start:
                lo = mid + 1
            else:
                hi = mid
        return self.acc.query(self.window_seconds, allow_partial=True)


class EmaContract(OracleContract):
    kind = "ema"
    SLOT = ("ema", 0)

    def __init__(self, window, ledger):
        super().__init__(window, ledger)
        self.ema = EmaState(ema_alpha(window))

    def _update(self, t, price):
        self.store.read(self.SLOT)
        value = self.ema.update(price)
        self.ledger.record_compute(1)
        self.store.write(self.SLOT, value.raw & _RAW_MASK)

    def _query(self):
        self.store.read(self.SLOT)
        return self.ema.value


class TrueMedianContract(OracleContract):
    """Pre-allocated ring of ``window`` price slots plus a header.

    Updates touch one price slot; queries read every buffered price.
    """

    kind = "true-median"
    HEADER = ("tm", "header")

    def __init__(self, window, ledger):
        super().__init__(window, ledger)
        self.buffer = MedianBuffer(window)
        self.index = -1

    def _update(self, t, price):
        self.store.read(self.HEADER)
        self.buffer.update(price)
        self.index = (self.index + 1) % self.window
        self.store.write(("tm", self.index), price.raw & _RAW_MASK)
        self.store.write(self.HEADER, ((self.index + 1) << 32) | len(self.buffer.values))

    def _query(self):
        self.store.read(self.HEADER)
        n = len(self.buffer.values)
        if n == 0:
            return None
        for i in range(n):
            self.store.read(("tm", i))
        self.ledger.record_compute(n * max(n.bit_length(), 1))
        return self.buffer.median()


ORACLE_KINDS = {
    cls.kind: cls
    for cls in (TwapContract, EmaContract, TrueMedianContract, MedContract, MedDsContract)
}


def make_oracle(kind: str, window: int, ledger: CostLedger, *, window_seconds: int | None = None,
                ring_capacity: int = DEFAULT_RING_CAPACITY) -> OracleContract:
    try:
        cls = ORACLE_KINDS[kind]
    except KeyError:
        raise ConfigError(f"unknown oracle {kind!r}; choose from {sorted(ORACLE_KINDS)}") from None
    if cls is TwapContract:
        return cls(window, ledger, window_seconds=window_seconds, capacity=ring_capacity)
    return cls(window, ledger)
