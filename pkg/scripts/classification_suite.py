#!/usr/bin/env python3
"""Classify the reference families and print a comparison table.

Runs the trace class split, the index report and all three traceability
criteria on powers, power-logs, the exponential, both staircases and two
finite rank steps; writes the full JSON report next to the table when
--output is given.
"""

import argparse
import json
import math
import sys
import time

from singtrace import (
    classify,
    construct_dominator,
    construct_vanisher,
    exponential,
    g_inverse,
    g_transform,
    power_log,
    pure_power,
    step_mu,
)
from singtrace.cli import _sanitize


def build_suite():
    line = g_transform(pure_power(p=1))
    return [
        ("power p=0.25", power_log(p=0.25)),
        ("power p=0.5", power_log(p=0.5)),
        ("power p=1", power_log(p=1.0)),
        ("power p=2", power_log(p=2.0)),
        ("power p=4", power_log(p=4.0)),
        ("power-log q=-1", power_log(p=1.0, q=-1.0)),
        ("power-log q=0", power_log(p=1.0, q=0.0)),
        ("power-log q=2", power_log(p=1.0, q=2.0)),
        ("exponential", exponential(1.0)),
        ("vanisher staircase", g_inverse(construct_vanisher(line, 40).g())),
        ("dominator staircase", g_inverse(construct_dominator(line, 40).g())),
        ("finite rank 3/2/1", step_mu([0, 1, 2, 3], [3, 2, 1])),
        ("finite rank single", step_mu([0, 2], [5.0])),
    ]


def fmt(v):
    return {True: "yes", False: "no", None: "?"}[v]


def fmt_delta(d):
    if d is None:
        return "-"
    if math.isinf(d):
        return "inf"
    return f"{d:.3g}"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--output", default=None, help="write the JSON report here")
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    rows = []
    blobs = {}
    header = f"{'family':<22} {'trace class':<16} {'regular':<8} {'delta':<6} " \
             f"{'idx':<4} {'liminf':<7} {'ratio':<6} {'agree':<5}"
    print(header)
    print("-" * len(header))
    for name, fn in build_suite():
        rep = classify(fn)
        print(
            f"{name:<22} {rep.trace_class.verdict:<16} {fmt(rep.regular):<8} "
            f"{fmt_delta(rep.delta):<6} {fmt(rep.by_indices.traceable):<4} "
            f"{fmt(rep.by_liminf.traceable):<7} {fmt(rep.by_ratio.traceable):<6} "
            f"{fmt(rep.agreement):<5}"
        )
        blobs[name] = {
            "trace_class": rep.trace_class,
            "regular": rep.regular,
            "delta": rep.delta,
            "indices": rep.indices_report,
            "traceable": rep.traceable,
            "agreement": rep.agreement,
        }
    elapsed = time.perf_counter() - t0
    print(f"\n{len(blobs)} families classified in {elapsed:.2f}s")
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(_sanitize(blobs), fh, indent=2)
        print(f"report written to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
