"""Harness configuration loaded from a JSON file.

Schema (all keys optional)::

    {
      "oracles": ["twap", "ema", "true-median", "ormer-med", "ormer-medds"],
      "window": 25,
      "seed": 0,
      "sampling_rate": null,          # Poisson arrivals per second, null = no sampling
      "twap_window_seconds": null,    # null = window * mean spacing of the feed
      "ring_capacity": 65536,
      "epsilon": null,                # security bound; null = no check
      "relative_epsilon": false,
      "delay_cap": 1800,
      "delay_window": 3600,
      "weights": [1, 2, 2],
      "cost_table": {"read_cold": 2100, ...},
      "attack": {"beta": 1, "magnitude": "10", "indices": [3], "count": 0}
    }
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from ..contracts import ORACLE_KINDS
from ..costmodel import CostTable
from ..errors import ConfigError
from ..metrics import DEFAULT_DELAY_CAP, DEFAULT_DELAY_WINDOW, ScoreWeights
from .attack import AttackSpec

log = logging.getLogger(__name__)

DEFAULT_ORACLES = ("twap", "ema", "true-median", "ormer-med", "ormer-medds")
DEFAULT_WINDOW = 25
# below these windows the estimators rarely leave their boot phase
MED_MIN_ADVISED = 9
MEDDS_MIN_ADVISED = 24


@dataclass(frozen=True)
class HarnessConfig:
    oracles: tuple[str, ...] = DEFAULT_ORACLES
    window: int = DEFAULT_WINDOW
    seed: int = 0
    sampling_rate: float | None = None
    twap_window_seconds: int | None = None
    ring_capacity: int = 65536
    epsilon: float | None = None
    relative_epsilon: bool = False
    delay_cap: int = DEFAULT_DELAY_CAP
    delay_window: int = DEFAULT_DELAY_WINDOW
    weights: tuple[float, float, float] = (1.0, 2.0, 2.0)
    cost_table: CostTable = field(default_factory=CostTable)
    attack: dict | None = None

    def __post_init__(self):
        object.__setattr__(self, "oracles", tuple(self.oracles))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        unknown = [o for o in self.oracles if o not in ORACLE_KINDS]
        if unknown:
            raise ConfigError(f"unknown oracles {unknown}; choose from {sorted(ORACLE_KINDS)}")
        if not self.oracles:
            raise ConfigError("at least one oracle is required")
        if self.window < 6 or self.window > 65535:
            raise ConfigError(f"window must lie in [6, 65535], got {self.window}")
        if self.sampling_rate is not None and self.sampling_rate <= 0:
            raise ConfigError("sampling_rate must be positive")
        if len(self.weights) != 3:
            raise ConfigError("weights needs three entries")
        ScoreWeights(*self.weights)
        if self.attack is not None:
            self.attack_spec()

    @property
    def score_weights(self) -> ScoreWeights:
        return ScoreWeights(*self.weights)

    def attack_spec(self) -> AttackSpec | None:
        if self.attack is None:
            return None
        a = dict(self.attack)
        try:
            return AttackSpec(
                beta=int(a.pop("beta")),
                window=int(a.pop("window", self.window)),
                magnitude=str(a.pop("magnitude", "10")),
                indices=None if a.get("indices") is None else tuple(a.pop("indices")),
                count=int(a.pop("count", 0)),
            )
        except KeyError as exc:
            raise ConfigError(f"attack section is missing {exc}") from None

    def advisories(self) -> list[str]:
        notes = []
        if "ormer-med" in self.oracles and self.window < MED_MIN_ADVISED:
            notes.append(f"ormer-med with window {self.window} < {MED_MIN_ADVISED} spends most updates booting")
        if "ormer-medds" in self.oracles and self.window < MEDDS_MIN_ADVISED:
            notes.append(f"ormer-medds with window {self.window} < {MEDDS_MIN_ADVISED} spends most updates booting")
        for note in notes:
            log.warning(note)
        return notes

    @classmethod
    def from_dict(cls, data: dict) -> HarnessConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        data = dict(data)
        if "cost_table" in data:
            data["cost_table"] = CostTable.from_dict(data["cost_table"])
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def load(cls, path) -> HarnessConfig:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: top level must be an object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["oracles"] = list(self.oracles)
        d["weights"] = list(self.weights)
        return d
