"""Multi-oracle comparison and report files (JSON, CSV, optional plot)."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from ..costmodel import CostTable
from ..errors import NoData
from ..metrics import (
    DEFAULT_DELAY_CAP,
    DEFAULT_DELAY_WINDOW,
    TABLE_COLUMNS,
    ScoreWeights,
    align_feeds,
    feed_metrics,
    score_rows,
)
from .feeds import PriceSeries, save_feed
from .replay import ReplayResult, replay

BASELINE = "true-median"


@dataclass
class Comparison:
    window: int
    results: dict[str, ReplayResult]
    rows: dict[str, dict]
    shown: tuple[str, ...]
    extra: dict = field(default_factory=dict)


def gas_consumption(result: ReplayResult) -> float:
    """Mean Update cost plus mean Query cost (one round of the protocol)."""
    return result.update_cost + result.query_cost


def metric_row(result: ReplayResult, reference: PriceSeries, cap: int = DEFAULT_DELAY_CAP,
               delay_window: int = DEFAULT_DELAY_WINDOW) -> dict:
    if len(result.output) == 0:
        raise NoData(f"{result.kind} produced no output")
    aligned = align_feeds(reference.times_array(), reference.values(),
                          result.output.times_array(), result.output.values())
    row = feed_metrics(aligned, cap=cap, delay_window=delay_window)
    row["Gas Consumption"] = gas_consumption(result)
    return row


def compare(source: PriceSeries, kinds, window: int, cost_table: CostTable | None = None, *,
            reference: PriceSeries | None = None, twap_window_seconds: int | None = None,
            ring_capacity: int = 65536, weights: ScoreWeights = ScoreWeights(),
            delay_cap: int = DEFAULT_DELAY_CAP,
            delay_window: int = DEFAULT_DELAY_WINDOW) -> Comparison:
    """Replay every oracle on ``source`` and score it against ``reference``.

    The exact sliding median is the scoring baseline, so it is always
    replayed; it only appears in the output when requested.
    """
    reference = source if reference is None else reference
    shown = tuple(kinds)
    run = shown if BASELINE in shown else shown + (BASELINE,)
    results = {
        k: replay(source, k, window, cost_table, window_seconds=twap_window_seconds,
                  ring_capacity=ring_capacity)
        for k in run
    }
    raw = {k: metric_row(r, reference, delay_cap, delay_window) for k, r in results.items()}
    rows = score_rows(raw, BASELINE, weights)
    return Comparison(window=window, results=results, rows=rows, shown=shown)


def _clean(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def oracle_section(result: ReplayResult, row: dict | None) -> dict:
    section = {
        "oracle": result.kind,
        "window": result.window,
        "points": len(result.output),
        "ledger": result.ledger.to_dict(),
    }
    if result.window_seconds is not None:
        section["window_seconds"] = result.window_seconds
    if result.state_words:
        section["state_words"] = result.state_words
    if row is not None:
        section["metrics"] = {c: _clean(row.get(c)) for c in TABLE_COLUMNS}
        section["metrics"]["TD0"] = _clean(row.get("TD0"))
    return section


def build_report(results: dict[str, ReplayResult], rows: dict[str, dict] | None = None, *,
                 shown=None, config: dict | None = None, seed: int | None = None,
                 extra: dict | None = None) -> dict:
    shown = tuple(results) if shown is None else tuple(shown)
    report = {
        "seed": seed,
        "config": config or {},
        "oracles": [oracle_section(results[k], None if rows is None else rows[k]) for k in shown],
    }
    if extra:
        report.update(extra)
    return report


def plot_comparison(results: dict[str, ReplayResult], shown, source: PriceSeries, path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(10, 4))
    ax.step(source.times_array(), source.values(), where="post", color="0.6", lw=0.8, label="source")
    for k in shown:
        out = results[k].output
        ax.step(out.times_array(), out.values(), where="post", lw=1.0, label=k)
    ax.set_xlabel("time (s)")
    ax.set_ylabel("price")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def emit_report(out_dir, results: dict[str, ReplayResult], rows: dict[str, dict] | None = None, *,
                shown=None, config: dict | None = None, seed: int | None = None,
                extra: dict | None = None, source: PriceSeries | None = None,
                plot: bool = False) -> Path:
    """Write ``report.json`` plus ``<oracle>.csv`` per oracle; return the JSON path.

    The JSON carries no wall-clock data, so identical inputs give identical
    bytes.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    shown = tuple(results) if shown is None else tuple(shown)
    report = build_report(results, rows, shown=shown, config=config, seed=seed, extra=extra)
    path = out / "report.json"
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    for k in shown:
        save_feed(results[k].output, out / f"{k}.csv")
    if plot and source is not None:
        plot_comparison(results, shown, source, out / "comparison.png")
    return path
