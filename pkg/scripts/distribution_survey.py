#!/usr/bin/env python3
"""Survey the runtime-delta distribution of this host's timer/kernel pairing.

Collects repeated timing traces at a fixed config, prints the top-k value
table plus the worst-case entropy figures, and optionally writes the raw value
log, histogram CSV, and JSON report for offline analysis.

Usage: python scripts/distribution_survey.py [--runs 30] [--scale 250] ...
"""

import argparse
import sys

from jitterseed.analysis import (
    DEFAULT_TOP_K,
    aggregate_distribution,
    estimate_worst_case_entropy,
    meets_seed_standard,
    report_document,
    write_histogram_csv,
    write_json_report,
    write_value_log,
)
from jitterseed.collector import CollectorConfig, collect_trace
from jitterseed.timer import default_clock, probe_resolution


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=30)
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--scale", type=int, default=250)
    parser.add_argument("--k", type=int, default=DEFAULT_TOP_K)
    parser.add_argument("--log", default=None, help="raw value log path")
    parser.add_argument("--csv", default=None, help="histogram CSV path")
    parser.add_argument("--json", default=None, help="JSON report path")
    args = parser.parse_args()

    clock = default_clock()
    spec = probe_resolution(clock)
    config = CollectorConfig(samples=args.samples, scale=args.scale)
    print(f"timer: {spec.name}, observed resolution {spec.resolution_ns} ns")
    print(f"collecting {args.runs} runs of {config.samples} samples at scale {config.scale}")

    traces = [collect_trace(config, clock, spec) for _ in range(args.runs)]
    report = aggregate_distribution(traces, k=args.k)

    print(f"\n{'value_ns':>12}  {'count':>8}  share")
    for value, count in report.top_k:
        print(f"{value:>12}  {count:>8}  {count / report.total_samples:6.2%}")
    print(
        f"\nunique values: {report.unique_values} over {report.total_samples} samples"
        f" ({report.runs} runs)"
    )
    print(f"flatness ratio (top-k max/min): {report.flatness_ratio:.2f}"
          f" -> {'flat' if report.flat else 'spiky'}")

    n_top = min(DEFAULT_TOP_K, report.unique_values)
    estimate = estimate_worst_case_entropy(n_top, config.samples)
    print(
        f"worst-case key space: {estimate.bits:.1f} bits per trace"
        f" (10^{estimate.key_space_log10:.1f}),"
        f" 256-bit standard {'met' if meets_seed_standard(estimate) else 'NOT met'}"
    )

    if args.log:
        write_value_log([v for t in traces for v in t.samples], args.log)
        print(f"wrote value log to {args.log}", file=sys.stderr)
    if args.csv:
        write_histogram_csv(report, args.csv)
        print(f"wrote histogram to {args.csv}", file=sys.stderr)
    if args.json:
        write_json_report(report_document(spec, config, report), args.json)
        print(f"wrote report to {args.json}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
