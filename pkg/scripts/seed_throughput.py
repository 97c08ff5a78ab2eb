#!/usr/bin/env python3
"""Measure end-to-end seed generation cost across kernel scales.

For each scale the full pipeline runs: probe, collect, condition. Reports the
median of --repeats wall-clock timings together with the distinct-delta count,
which shows how much quality headroom each scale buys on this host.

Usage: python scripts/seed_throughput.py [--scales 250,500,1000,2000,4000]
"""

import argparse
import statistics
import sys
import time

from jitterseed.collector import CollectorConfig, collect_trace, distinct_count
from jitterseed.conditioner import condition
from jitterseed.timer import default_clock, probe_resolution


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scales", default="250,500,1000,2000,4000",
                        help="comma-separated kernel scales to measure")
    parser.add_argument("--stretch", type=int, default=100)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--floor", type=int, default=20)
    args = parser.parse_args()

    scales = [int(s) for s in args.scales.split(",") if s.strip()]
    clock = default_clock()
    spec = probe_resolution(clock)
    print(f"timer: {spec.name}, observed resolution {spec.resolution_ns} ns")
    print(f"{'scale':>8}  {'median_ms':>10}  {'distinct':>8}  {'seed_bytes':>10}")

    for scale in scales:
        config = CollectorConfig(scale=scale, stretch=args.stretch)
        timings = []
        distinct = 0
        seed_bytes = 0
        for _ in range(args.repeats):
            started = time.perf_counter()
            trace = collect_trace(config, clock, spec)
            seed = condition(trace, quality_floor=args.floor)
            timings.append((time.perf_counter() - started) * 1000.0)
            distinct = distinct_count(trace)
            seed_bytes = seed.total_bytes
        print(f"{scale:>8}  {statistics.median(timings):>10.2f}  "
              f"{distinct:>8}  {seed_bytes:>10}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
