"""Scale autotuning: grow the workload until the timer can tell runs apart.

On a coarse timer most deltas collapse onto the same few tick values, which
the distinct-count floor catches. Rather than modeling resolution, the tuner
just measures: probe the current scale three times, take the median distinct
count, and double the scale until the floor is met or the time budget says
the platform cannot get there.
"""

from __future__ import annotations

import enum
import time
from dataclasses import asdict, dataclass, replace

from .collector import CollectorConfig, collect_trace, distinct_count, kernel
from .timer import TimerSpec, default_clock, probe_resolution

DEFAULT_TUNE_FLOOR = 20
DEFAULT_BUDGET_NS = 5_000_000_000
PROBE_RUNS_PER_SCALE = 3


class TuneVerdict(str, enum.Enum):
    TUNED = "tuned"
    ALREADY_ADEQUATE = "already-adequate"
    UNATTAINABLE = "unattainable"


@dataclass(frozen=True)
class TuneResult:
    config: CollectorConfig
    probe_runs: int
    achieved_distinct: int
    elapsed_ns: int
    verdict: TuneVerdict

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "probe_runs": self.probe_runs,
            "achieved_distinct": self.achieved_distinct,
            "elapsed_ns": self.elapsed_ns,
            "verdict": self.verdict.value,
        }


def _projected_probe_ns(config: CollectorConfig) -> int:
    """Estimate one probe triple's cost by timing a single kernel call."""
    t0 = time.perf_counter_ns()
    kernel(config.val1, config.val2, config.scale)
    per_call = time.perf_counter_ns() - t0
    return PROBE_RUNS_PER_SCALE * config.samples * per_call


def tune(
    base: CollectorConfig,
    clock=None,
    timer_spec: TimerSpec | None = None,
    floor: int = DEFAULT_TUNE_FLOOR,
    budget_ns: int = DEFAULT_BUDGET_NS,
) -> TuneResult:
    """Find the smallest power-of-two multiple of base.scale meeting `floor`.

    Never lowers the scale. Before each probe triple the projected cost is
    checked against the remaining budget; if it does not fit, the verdict is
    `unattainable` and no seed pipeline consulting this result may proceed.
    """
    if floor < 2:
        raise ValueError(f"floor must be >= 2, got {floor}")
    if budget_ns <= 0:
        raise ValueError(f"budget_ns must be positive, got {budget_ns}")
    base.validate()
    if clock is None:
        clock = default_clock()

    started = time.perf_counter_ns()
    if timer_spec is None:
        timer_spec = probe_resolution(clock)

    candidate = base
    probed = base
    probe_runs = 0
    achieved = 0
    verdict = TuneVerdict.UNATTAINABLE

    while True:
        elapsed = time.perf_counter_ns() - started
        if elapsed + _projected_probe_ns(candidate) > budget_ns:
            break
        distincts = sorted(
            distinct_count(collect_trace(candidate, clock, timer_spec))
            for _ in range(PROBE_RUNS_PER_SCALE)
        )
        probe_runs += PROBE_RUNS_PER_SCALE
        achieved = distincts[PROBE_RUNS_PER_SCALE // 2]
        probed = candidate
        if achieved >= floor:
            verdict = (
                TuneVerdict.ALREADY_ADEQUATE
                if candidate.scale == base.scale
                else TuneVerdict.TUNED
            )
            break
        candidate = replace(candidate, scale=candidate.scale * 2)

    return TuneResult(
        config=probed,
        probe_runs=probe_runs,
        achieved_distinct=achieved,
        elapsed_ns=time.perf_counter_ns() - started,
        verdict=verdict,
    )


def write_tune_config(result: TuneResult, path) -> None:
    """Persist the tuned collection config as key=value text."""
    config = result.config
    with open(path, "w") as handle:
        for key in ("val1", "val2", "samples", "scale", "stretch"):
            handle.write(f"{key}={getattr(config, key)}\n")


def read_tune_config(path) -> CollectorConfig:
    fields = {}
    with open(path) as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            fields[key.strip()] = int(value.strip())
    return CollectorConfig(**fields)
