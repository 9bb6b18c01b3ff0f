"""Command line front end: build, verify, simulate, capacity, export.

Exit codes: 0 on success, 1 when a verification or simulation found
failures, 2 on parameter errors.  All output is deterministic given the
flags and seed.  STREAMCODE_THREADS caps worker threads for verify and
simulate fan-out (default 1); results are merged in canonical order.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor

from .channel import BudgetError, ErasurePattern, apply, enumerate_block_patterns
from .construction import (ParamError, StreamParams, build_code, capacity,
                           encode_block, validate_and_derive)
from .decoder import DecoderError, classify_pattern, decode_structured, oracle_decode
from .stream import delay_check, simulate

_EXHAUSTIVE_DEFAULT_MAX_N = 14


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("STREAMCODE_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    t = _threads()
    if t == 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=t) as ex:
        return list(ex.map(fn, items))


def _build(args):
    d = validate_and_derive(StreamParams(args.W, args.T, args.B, args.N))
    return d, build_code(d)


def cmd_build(args) -> int:
    d, g = _build(args)
    rate = capacity(d.T_eff, d.B, d.N)
    print(f"k={d.k} n={d.n} M={d.M} delta={d.delta} q={d.q} m={d.m} "
          f"rate={d.k}/{d.n} capacity={rate.numerator}/{rate.denominator}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(g.to_json_obj(), fh, sort_keys=True)
            fh.write("\n")
        print(f"wrote {args.out}")
    return 0


def cmd_export(args) -> int:
    _, g = _build(args)
    text = json.dumps(g.to_json_obj(), sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _check_pattern(g, pattern, trials, seed):
    """Oracle + structured decode over random source blocks; returns failure dicts."""
    d = g.derived
    ext = g.field()
    rng = random.Random((seed, pattern.erased).__hash__() & 0xFFFFFFFF)
    case = classify_pattern(pattern, d)
    fails = []
    for trial in range(trials):
        s = [ext.random_element(rng) for _ in range(d.k)]
        y = apply(encode_block(s, g), pattern)
        orc = oracle_decode(g, y)
        try:
            st = decode_structured(g, y, case)
        except DecoderError as exc:
            fails.append({"pattern": pattern.to_text(), "trial": trial,
                          "symbol": -1, "kind": f"structural: {exc}"})
            continue
        for i in range(d.k):
            o, r = orc.symbols[i], st.symbols[i]
            if o.status != "recovered" or o.value != s[i] or o.recovery_time > o.deadline:
                fails.append({"pattern": pattern.to_text(), "trial": trial,
                              "symbol": i, "kind": "oracle"})
            if r.status != "recovered" or r.value != s[i]:
                fails.append({"pattern": pattern.to_text(), "trial": trial,
                              "symbol": i, "kind": "structured"})
            elif o.status == "recovered" and r.value != o.value:
                fails.append({"pattern": pattern.to_text(), "trial": trial,
                              "symbol": i, "kind": "equivalence"})
    return fails


def _random_block_patterns(d, count, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        if rng.random() < 0.5:
            length = rng.randint(1, d.B)
            start = rng.randrange(d.n - length + 1)
            idx = range(start, start + length)
        else:
            size = rng.randint(0, d.N)
            idx = rng.sample(range(d.n), size)
        out.append(ErasurePattern.make(d.n, idx))
    return out


def cmd_verify(args, gset=None) -> int:
    d = validate_and_derive(StreamParams(args.W, args.T, args.B, args.N))
    g = gset if gset is not None else build_code(d)

    if args.erase is not None:
        pattern = ErasurePattern.from_text(d.n, args.erase)
        ext = g.field()
        rng = random.Random(args.seed)
        s = [ext.random_element(rng) for _ in range(d.k)]
        y = apply(encode_block(s, g), pattern)
        report = oracle_decode(g, y)
        print(json.dumps(report.to_json_obj(), sort_keys=True))
        return 0 if report.ok() else 1

    mode = args.mode
    if mode is None:
        mode = "exhaustive" if d.n <= _EXHAUSTIVE_DEFAULT_MAX_N else "random"
    if mode == "exhaustive":
        try:
            patterns = enumerate_block_patterns(d.n, d.T_eff + 1, d.B, d.N)
        except BudgetError as exc:
            print(f"error: {exc}; use --mode random", file=sys.stderr)
            return 2
    else:
        space = f"~2^{d.n} subsets filtered to <= {d.N} sparse / <= {d.B} burst"
        print(f"random mode: sampling {args.trials} patterns from {space}")
        patterns = _random_block_patterns(d, args.trials, args.seed)

    trials = args.trials if mode == "exhaustive" else 5
    failures = []
    for fails in _pmap(lambda p: _check_pattern(g, p, trials, args.seed), patterns):
        failures.extend(fails)
    print(json.dumps({"patterns_checked": len(patterns), "failures": failures},
                     sort_keys=True))
    return 0 if not failures else 1


def cmd_simulate(args) -> int:
    d, g = _build(args)
    results = _pmap(lambda t: simulate(g, args.len, args.seed + t),
                    range(args.trials))
    packets = erased = recovered = 0
    max_latency = 0
    failures = []
    for trial, (rep, _pat) in enumerate(results):
        packets += rep.packets
        erased += rep.erased_slots
        recovered += rep.recovered()
        max_latency = max(max_latency, rep.max_latency)
        failures.extend([trial, t] for t in rep.failures)
    summary = {} if args.trials == 0 else {
        "packets": packets, "erased": erased, "recovered": recovered,
        "max_latency": max_latency, "failures": failures,
    }
    text = json.dumps(summary, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if not failures else 1


def cmd_capacity(args) -> int:
    c = capacity(args.T, args.B, args.N)
    print(f"{c.numerator}/{c.denominator} ≈ {float(c):.4f}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="streamfec",
                                 description="streaming erasure codes for burst/arbitrary loss")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_params(p, need_w=True):
        if need_w:
            p.add_argument("--W", type=int, required=True)
        p.add_argument("--T", type=int, required=True)
        p.add_argument("--B", type=int, required=True)
        p.add_argument("--N", type=int, required=True)

    p = sub.add_parser("build", help="derive parameters and assemble the generator")
    add_params(p)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("verify", help="check recovery guarantees over erasure patterns")
    add_params(p)
    p.add_argument("--mode", choices=["exhaustive", "random"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--erase", help="single pattern: comma-separated erased positions")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("simulate", help="seeded streaming simulations")
    add_params(p)
    p.add_argument("--len", type=int, default=100)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("capacity", help="print the exact capacity fraction")
    add_params(p, need_w=False)
    p.set_defaults(fn=cmd_capacity)

    p = sub.add_parser("export", help="write the generator bundle as JSON")
    add_params(p)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_export)

    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParamError, BudgetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
