"""Command-line front end.

Exit codes: 0 success, 1 operational failure (insufficient entropy, stuck
clock, unattainable tuning, short stream), 2 usage error. Seed bytes go to
the chosen sink and nothing else ever shares it: when seeding to stdout, all
summaries and diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, replace

from . import analysis, autotune, fips
from .collector import CollectorConfig, collect_trace, distinct_count
from .conditioner import DEFAULT_QUALITY_FLOOR, condition, mk0_stream
from .errors import SeederError, ShortStreamError
from .timer import SimulatedClock, default_clock, probe_resolution


def _add_sim_flag(parser: argparse.ArgumentParser) -> None:
    # Test hook: replace the real clock with a quantized one.
    parser.add_argument(
        "--simulate-quantum-ns", type=int, default=None, help=argparse.SUPPRESS
    )


def _make_clock(args):
    quantum = getattr(args, "simulate_quantum_ns", None)
    if quantum is not None:
        return SimulatedClock(quantum)
    return default_clock()


def _config_from(args) -> CollectorConfig:
    config = CollectorConfig()
    overrides = {
        name: value
        for name in ("scale", "samples", "stretch")
        if (value := getattr(args, name, None)) is not None
    }
    return replace(config, **overrides) if overrides else config


def _emit_json(document: dict) -> None:
    print(json.dumps(document, indent=2))


def cmd_seed(args) -> int:
    clock = _make_clock(args)
    timer_spec = probe_resolution(clock)
    config = _config_from(args)

    tuning = None
    if args.tune:
        result = autotune.tune(
            config,
            clock,
            timer_spec,
            floor=args.floor,
            budget_ns=args.budget_ms * 1_000_000,
        )
        tuning = result
        if result.verdict is autotune.TuneVerdict.UNATTAINABLE:
            print(
                f"error: tuning unattainable within {args.budget_ms} ms "
                f"(best median distinct {result.achieved_distinct}, floor {args.floor})",
                file=sys.stderr,
            )
            return 1
        config = result.config

    trace = collect_trace(config, clock, timer_spec)
    seed = condition(trace, quality_floor=args.floor)

    payload = seed.hex().encode() + b"\n" if args.hex else seed.to_bytes()
    if args.out:
        with open(args.out, "wb") as handle:
            handle.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()

    note = f" after tuning to scale={config.scale}" if tuning else ""
    print(
        f"seed: {seed.total_bytes} bytes from {distinct_count(trace)} distinct "
        f"deltas (samples={config.samples} scale={config.scale} "
        f"stretch={config.stretch}){note}",
        file=sys.stderr,
    )
    return 0


def cmd_tune(args) -> int:
    clock = _make_clock(args)
    result = autotune.tune(
        CollectorConfig(),
        clock,
        floor=args.floor,
        budget_ns=args.budget_ms * 1_000_000,
    )
    _emit_json(result.to_dict())
    if args.save_config:
        autotune.write_tune_config(result, args.save_config)
    if result.verdict is autotune.TuneVerdict.UNATTAINABLE:
        print("error: tuning unattainable within budget", file=sys.stderr)
        return 1
    return 0


def cmd_analyze(args) -> int:
    clock = _make_clock(args)
    timer_spec = probe_resolution(clock)
    config = CollectorConfig()

    traces = [collect_trace(config, clock, timer_spec) for _ in range(args.runs)]
    report = analysis.aggregate_distribution(traces, k=args.k)

    if args.log:
        all_values = [value for trace in traces for value in trace.samples]
        analysis.write_value_log(all_values, args.log)
    if args.csv:
        analysis.write_histogram_csv(report, args.csv)

    document = analysis.report_document(timer_spec, config, report)
    if args.json:
        analysis.write_json_report(document, args.json)
    _emit_json(document)
    return 0


def cmd_fips(args) -> int:
    if args.source == "-":
        stream = sys.stdin.buffer
        close = False
    else:
        stream = open(args.source, "rb")
        close = True

    csv_handle = None
    sink = None
    try:
        if args.per_block:
            csv_handle = open(args.per_block, "w")
            csv_handle.write(fips.BLOCK_CSV_HEADER + "\n")
            sink = lambda result: csv_handle.write(fips.block_csv_row(result) + "\n")
        try:
            report = fips.fips_pass_rate(
                stream,
                args.blocks,
                continuous_check=args.continuous,
                block_sink=sink,
            )
        except ShortStreamError as exc:
            if exc.partial is not None:
                print(fips.summary_line(exc.partial))
            print(f"error: {exc}", file=sys.stderr)
            return 1
    finally:
        if csv_handle is not None:
            csv_handle.close()
        if close:
            stream.close()

    print(fips.summary_line(report))
    return 0


def cmd_mk0(args) -> int:
    data = mk0_stream(args.count)
    if args.out:
        with open(args.out, "wb") as handle:
            handle.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    return 0


def cmd_probe(args) -> int:
    clock = _make_clock(args)
    timer_spec = probe_resolution(clock, reads=args.reads)
    _emit_json(asdict(timer_spec))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jitterseed",
        description="Seed CSPRNGs from CPU benchmark timing jitter.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    seed = sub.add_parser("seed", help="collect one trace and emit seed bytes")
    seed.add_argument("--scale", type=int, default=None, help="kernel repeat count per sample")
    seed.add_argument("--samples", type=int, default=None, help="timed runs per trace")
    seed.add_argument("--stretch", type=int, default=None, help="extra digest links")
    seed.add_argument(
        "--floor",
        type=int,
        default=DEFAULT_QUALITY_FLOOR,
        help="minimum distinct deltas required (fail-closed)",
    )
    seed.add_argument("--tune", action="store_true", help="autotune scale first")
    seed.add_argument(
        "--budget-ms", type=int, default=5000, help="tuning time budget (with --tune)"
    )
    seed.add_argument("--out", default=None, help="write seed bytes to this file")
    seed.add_argument("--hex", action="store_true", help="emit lowercase hex text")
    _add_sim_flag(seed)
    seed.set_defaults(func=cmd_seed)

    tune = sub.add_parser("tune", help="find the smallest adequate scale")
    tune.add_argument("--floor", type=int, default=autotune.DEFAULT_TUNE_FLOOR)
    tune.add_argument("--budget-ms", type=int, default=5000)
    tune.add_argument("--save-config", default=None, help="persist tuned config (key=value)")
    _add_sim_flag(tune)
    tune.set_defaults(func=cmd_tune)

    analyze = sub.add_parser("analyze", help="collect traces and report the delta distribution")
    analyze.add_argument("--runs", type=int, default=30, help="collection runs to aggregate")
    analyze.add_argument("--k", type=int, default=analysis.DEFAULT_TOP_K)
    analyze.add_argument("--log", default=None, help="raw value log path")
    analyze.add_argument("--csv", default=None, help="histogram CSV path")
    analyze.add_argument("--json", default=None, help="JSON report path")
    _add_sim_flag(analyze)
    analyze.set_defaults(func=cmd_analyze)

    fips_cmd = sub.add_parser("fips", help="run the statistical battery over a byte stream")
    fips_cmd.add_argument("source", metavar="FILE", help="input file, or - for stdin")
    fips_cmd.add_argument(
        "--blocks",
        type=int,
        default=None,
        help="exact block count (default: all complete blocks until EOF)",
    )
    fips_cmd.add_argument("--per-block", default=None, help="per-block verdict CSV path")
    fips_cmd.add_argument(
        "--continuous", action="store_true", help="also flag repeated 32-bit words"
    )
    fips_cmd.set_defaults(func=cmd_fips)

    mk0 = sub.add_parser("mk0", help="emit the reference counter-hash stream")
    mk0.add_argument("--count", type=int, default=100000, help="number of 32-byte digests")
    mk0.add_argument("--out", default=None, help="write stream to this file")
    mk0.set_defaults(func=cmd_mk0)

    probe = sub.add_parser("probe", help="measure the timer's empirical resolution")
    probe.add_argument("--reads", type=int, default=1000)
    _add_sim_flag(probe)
    probe.set_defaults(func=cmd_probe)

    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SeederError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        # Downstream stopped reading (mk0 | head, etc). Point stdout at
        # devnull so interpreter shutdown does not trip over it again.
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 1


def main() -> None:
    sys.exit(run_cli())
