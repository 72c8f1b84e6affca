"""Stream a price feed through one oracle with the Update/Query protocol."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..baselines import DEFAULT_RING_CAPACITY
from ..contracts import MedContract, MedDsContract, make_oracle
from ..costmodel import CostLedger, CostTable
from ..slotcodec import slot_hex
from .feeds import PriceSeries


def twap_window_seconds(series: PriceSeries, window: int) -> int:
    """Seconds covered by ``window`` observations at the feed's mean spacing.

    Observation-counted oracles see ``window`` points; a TWAP of the same
    reach averages over about ``window * mean_spacing`` seconds (for Poisson
    arrivals at rate ``lam`` that is ``window / lam``).
    """
    if len(series) < 2:
        return window
    spacing = (series.times[-1] - series.times[0]) / (len(series) - 1)
    return max(int(round(window * spacing)), 1)


@dataclass
class ReplayResult:
    kind: str
    window: int
    output: PriceSeries
    ledger: CostLedger
    window_seconds: int | None = None
    state_words: list[str] = field(default_factory=list)

    @property
    def query_cost(self) -> float:
        return self.ledger.invocation_cost("query").mean

    @property
    def update_cost(self) -> float:
        return self.ledger.invocation_cost("update").mean


def replay(series: PriceSeries, kind: str, window: int, cost_table: CostTable | None = None,
           *, window_seconds: int | None = None,
           ring_capacity: int = DEFAULT_RING_CAPACITY) -> ReplayResult:
    """One Update then one Query per input point.

    Points where the oracle has no estimate yet are left out of the output
    feed.  Ormer oracles also report their final persisted words as hex.
    """
    ledger = CostLedger(cost_table or CostTable())
    if kind == "twap" and window_seconds is None:
        window_seconds = twap_window_seconds(series, window)
    oracle = make_oracle(kind, window, ledger, window_seconds=window_seconds,
                         ring_capacity=ring_capacity)
    times, prices = [], []
    for t, p in zip(series.times, series.prices):
        oracle.update(t, p)
        out = oracle.query()
        if out is not None:
            times.append(t)
            prices.append(out)
    words: list[str] = []
    if isinstance(oracle, MedContract):
        words = [slot_hex(oracle.state().persist())]
    elif isinstance(oracle, MedDsContract):
        words = [slot_hex(w) for w in oracle.state().persist()]
    return ReplayResult(
        kind=kind,
        window=window,
        output=PriceSeries(tuple(times), tuple(prices)),
        ledger=ledger,
        window_seconds=window_seconds if kind == "twap" else None,
        state_words=words,
    )
