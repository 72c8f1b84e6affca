"""Streaming median price oracles on fixed-point ticks with modeled storage cost."""

from .estimator import OrmerMed, OrmerMedDS
from .fixedmath import FixedQ64, price_to_tick, tick_to_price

__all__ = ["FixedQ64", "OrmerMed", "OrmerMedDS", "price_to_tick", "tick_to_price"]
