"""Feeds, synthetic data, attacks, replay, reports and the command line."""
