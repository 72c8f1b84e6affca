"""Modeled on-chain cost: storage access tallies priced by a cost table.

Every oracle call runs inside an invocation (``Update`` or ``Query``).  Reads
are cold on first touch within the invocation and warm afterwards; writes
are priced by their zero/non-zero transition.  The defaults mirror public
EVM storage pricing but are only calibration values: comparisons between
oracles are what matter.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field, fields

from .errors import ConfigError, NoData, NoOpenInvocation
from .slotcodec import SlotWord, WriteKind, classify_write

UPDATE = "update"
QUERY = "query"


@dataclass(frozen=True)
class CostTable:
    read_cold: int = 2100
    read_warm: int = 100
    write_zero_to_nonzero: int = 20000
    write_nonzero_to_nonzero: int = 2900
    write_to_zero: int = 2900
    tx_base: int = 21000
    arithmetic_unit: int = 0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ConfigError(f"cost table entry {f.name} must be a non-negative integer")

    @classmethod
    def from_dict(cls, data: dict) -> CostTable:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown cost table keys: {sorted(unknown)}")
        return cls(**data)

    def write_cost(self, kind: WriteKind) -> int:
        return {
            WriteKind.ZERO_TO_NONZERO: self.write_zero_to_nonzero,
            WriteKind.NONZERO_TO_NONZERO: self.write_nonzero_to_nonzero,
            WriteKind.TO_ZERO: self.write_to_zero,
        }[kind]


@dataclass
class InvocationRecord:
    op_kind: str
    reads_cold: int = 0
    reads_warm: int = 0
    writes_zero_to_nonzero: int = 0
    writes_nonzero_to_nonzero: int = 0
    writes_to_zero: int = 0
    compute_units: int = 0
    total_gas: int = 0

    def price(self, table: CostTable) -> int:
        return (
            table.tx_base
            + self.reads_cold * table.read_cold
            + self.reads_warm * table.read_warm
            + self.writes_zero_to_nonzero * table.write_zero_to_nonzero
            + self.writes_nonzero_to_nonzero * table.write_nonzero_to_nonzero
            + self.writes_to_zero * table.write_to_zero
            + self.compute_units * table.arithmetic_unit
        )


@dataclass(frozen=True)
class CostSummary:
    mean: float
    stddev: float
    count: int


@dataclass
class CostLedger:
    table: CostTable = field(default_factory=CostTable)
    records: list[InvocationRecord] = field(default_factory=list)

    def __post_init__(self):
        self._open: InvocationRecord | None = None
        self._touched: set = set()

    def begin(self, op_kind: str) -> None:
        if op_kind not in (UPDATE, QUERY):
            raise ValueError(f"unknown invocation kind {op_kind!r}")
        if self._open is not None:
            raise RuntimeError("an invocation is already open")
        self._open = InvocationRecord(op_kind)
        self._touched = set()

    def end(self) -> InvocationRecord:
        rec = self._require_open()
        rec.total_gas = rec.price(self.table)
        self.records.append(rec)
        self._open = None
        return rec

    @contextmanager
    def invocation(self, op_kind: str):
        self.begin(op_kind)
        try:
            yield self._open
        except BaseException:
            self._open = None
            raise
        self.end()

    def _require_open(self) -> InvocationRecord:
        if self._open is None:
            raise NoOpenInvocation("storage access outside an invocation")
        return self._open

    def record_access(
        self, slot_id, kind: str, old_word: SlotWord = 0, new_word: SlotWord = 0
    ) -> None:
        rec = self._require_open()
        if kind == "read":
            if slot_id in self._touched:
                rec.reads_warm += 1
            else:
                rec.reads_cold += 1
        elif kind == "write":
            wk = classify_write(old_word, new_word)
            if wk is WriteKind.ZERO_TO_NONZERO:
                rec.writes_zero_to_nonzero += 1
            elif wk is WriteKind.NONZERO_TO_NONZERO:
                rec.writes_nonzero_to_nonzero += 1
            else:
                rec.writes_to_zero += 1
        else:
            raise ValueError(f"unknown access kind {kind!r}")
        self._touched.add(slot_id)

    def record_compute(self, units: int) -> None:
        self._require_open().compute_units += units

    def invocation_cost(self, op_kind: str) -> CostSummary:
        gas = [r.total_gas for r in self.records if r.op_kind == op_kind]
        if not gas:
            raise NoData(f"no {op_kind} invocations recorded")
        mean = sum(gas) / len(gas)
        var = sum((g - mean) ** 2 for g in gas) / len(gas)
        return CostSummary(mean=mean, stddev=math.sqrt(var), count=len(gas))

    def summary(self) -> dict:
        out = {}
        for kind in (UPDATE, QUERY):
            try:
                s = self.invocation_cost(kind)
            except NoData:
                continue
            out[kind] = {"mean": s.mean, "stddev": s.stddev, "count": s.count}
        return out

    def to_dict(self, include_records: bool = False) -> dict:
        d = {"table": asdict(self.table), "summary": self.summary()}
        if include_records:
            d["records"] = [asdict(r) for r in self.records]
        return d


class SlotStore:
    """Word-addressed contract storage that reports every access to a ledger."""

    def __init__(self, ledger: CostLedger):
        self.ledger = ledger
        self.words: dict = {}

    def read(self, slot_id) -> SlotWord:
        self.ledger.record_access(slot_id, "read")
        return self.words.get(slot_id, 0)

    def write(self, slot_id, word: SlotWord) -> None:
        old = self.words.get(slot_id, 0)
        self.ledger.record_access(slot_id, "write", old, word)
        if word:
            self.words[slot_id] = word
        else:
            self.words.pop(slot_id, None)

    def footprint_bits(self) -> int:
        return 256 * len(self.words)
