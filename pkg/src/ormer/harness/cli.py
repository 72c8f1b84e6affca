"""Command line: ``replay``, ``compare``, ``synth`` and ``attack``.

Every failure prints one JSON object on stderr and exits non-zero::

    {"error": "NonMonotonicTimestamp", "code": "non_monotonic_timestamp",
     "message": "...", "row": 7}
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from ..errors import ConfigError, OrmerError
from .attack import AttackSpec, evaluate_security, inject_attack
from .config import HarnessConfig
from .feeds import load_feed, poisson_sample, save_feed
from .replay import replay
from .report import compare, emit_report
from .synth import SYNTH_KINDS, synthesize

EXIT_USAGE = 2
EXIT_FAILURE = 1


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _load_config(path) -> HarnessConfig:
    return HarnessConfig.load(path) if path else HarnessConfig()


def _prepare_source(args, cfg: HarnessConfig):
    source = load_feed(args.input)
    extra = {"input_points": len(source)}
    if cfg.sampling_rate is not None:
        source = poisson_sample(source, cfg.sampling_rate, cfg.seed)
        extra["sampled_points"] = len(source)
        extra["selection_ratio"] = len(source) / extra["input_points"]
    return source, extra


def cmd_replay(args) -> dict:
    cfg = _load_config(args.config)
    window = args.window if args.window is not None else cfg.window
    source, extra = _prepare_source(args, cfg)
    notes = HarnessConfig.from_dict({**cfg.to_dict(), "oracles": [args.oracle], "window": window}).advisories()
    clean = replay(source, args.oracle, window, cfg.cost_table,
                   window_seconds=cfg.twap_window_seconds, ring_capacity=cfg.ring_capacity)
    results = {args.oracle: clean}
    spec = cfg.attack_spec()
    if spec is not None:
        attacked = inject_attack(source, spec, cfg.seed)
        hit = replay(attacked.series, args.oracle, window, cfg.cost_table,
                     window_seconds=cfg.twap_window_seconds, ring_capacity=cfg.ring_capacity)
        results = {args.oracle: hit}
        extra["attack"] = {"indices": list(attacked.indices), "magnitude": str(spec.magnitude),
                           "beta": spec.beta, "window": spec.window}
        if cfg.epsilon is not None:
            check = evaluate_security(clean.output, hit.output, cfg.epsilon, cfg.relative_epsilon)
            extra["security"] = check.to_dict()
    if notes:
        extra["advisories"] = notes
    path = emit_report(args.out, results, config=cfg.to_dict(), seed=cfg.seed, extra=extra)
    return {"report": str(path), **{k: v for k, v in extra.items() if k == "security"}}


def cmd_compare(args) -> dict:
    cfg = _load_config(args.config)
    window = args.window if args.window is not None else cfg.window
    oracles = [o.strip() for o in args.oracles.split(",") if o.strip()] if args.oracles else list(cfg.oracles)
    run_cfg = HarnessConfig.from_dict({**cfg.to_dict(), "oracles": oracles, "window": window})
    notes = run_cfg.advisories()
    source, extra = _prepare_source(args, cfg)
    reference = load_feed(args.reference) if args.reference else None
    cmp = compare(source, oracles, window, cfg.cost_table, reference=reference,
                  twap_window_seconds=cfg.twap_window_seconds, ring_capacity=cfg.ring_capacity,
                  weights=cfg.score_weights, delay_cap=cfg.delay_cap, delay_window=cfg.delay_window)
    if notes:
        extra["advisories"] = notes
    path = emit_report(args.out, cmp.results, cmp.rows, shown=cmp.shown, config=run_cfg.to_dict(),
                       seed=cfg.seed, extra=extra, source=source, plot=args.plot)
    return {"report": str(path), "oracles": list(cmp.shown)}


def cmd_synth(args) -> dict:
    feed = synthesize(args.kind, args.seconds, args.seed)
    save_feed(feed.source, args.out)
    out = {"source": args.out, "points": len(feed.source), "clip_start": feed.clip_start}
    if args.reference_out:
        save_feed(feed.reference, args.reference_out)
        out["reference"] = args.reference_out
    return out


def _parse_indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"--at expects comma-separated integers, got {text!r}") from None


def cmd_attack(args) -> dict:
    source = load_feed(args.input)
    indices = _parse_indices(args.at) if args.at else None
    try:
        magnitude = Fraction(args.magnitude)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"bad magnitude {args.magnitude!r}") from None
    spec = AttackSpec(beta=args.beta, window=args.window, magnitude=magnitude,
                      indices=indices, count=args.count)
    result = inject_attack(source, spec, args.seed)
    save_feed(result.series, args.out)
    return {"out": args.out, "indices": list(result.indices)}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ormer", description="Median price oracle replay harness.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("replay", help="replay one oracle over a feed")
    r.add_argument("--input", required=True)
    r.add_argument("--oracle", required=True)
    r.add_argument("--window", type=int)
    r.add_argument("--config")
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_replay)

    c = sub.add_parser("compare", help="replay several oracles and score them")
    c.add_argument("--input", required=True)
    c.add_argument("--oracles")
    c.add_argument("--window", type=int)
    c.add_argument("--config")
    c.add_argument("--reference", help="market reference feed (default: the input)")
    c.add_argument("--plot", action="store_true")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_compare)

    s = sub.add_parser("synth", help="write a seeded synthetic feed")
    s.add_argument("--kind", required=True, choices=SYNTH_KINDS)
    s.add_argument("--seconds", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.add_argument("--reference-out")
    s.set_defaults(func=cmd_synth)

    a = sub.add_parser("attack", help="inject multiplicative price spikes")
    a.add_argument("--input", required=True)
    a.add_argument("--beta", type=int, required=True)
    a.add_argument("--magnitude", required=True)
    a.add_argument("--at", help="comma-separated indices; omit to draw --count at random")
    a.add_argument("--count", type=int, default=0)
    a.add_argument("--window", type=int, default=25)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out", required=True)
    a.set_defaults(func=cmd_attack)
    return p


def _fail(kind: str, code: str, message: str, row=None, status=EXIT_FAILURE) -> int:
    payload = {"error": kind, "code": code, "message": message}
    if row is not None:
        payload["row"] = row
    print(json.dumps(payload), file=sys.stderr)
    return status


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return _fail("UsageError", "usage", str(exc), status=EXIT_USAGE)
    try:
        summary = args.func(args)
    except OrmerError as exc:
        return _fail(type(exc).__name__, exc.code, str(exc), getattr(exc, "row", None))
    except OSError as exc:
        return _fail(type(exc).__name__, "io_error", str(exc))
    except ValueError as exc:
        return _fail(type(exc).__name__, "invalid_value", str(exc))
    print(json.dumps(summary, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
