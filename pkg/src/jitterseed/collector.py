"""Benchmark kernel and timing-trace collection.

One sample = time one run of the addition kernel. The kernel itself is
deterministic and boring on purpose; the entropy is the irreproducibility of
how long each run takes on a real machine. The ordered deltas are the raw
material, so nothing here may sort, dedup, or drop them, zeros included.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .errors import InvalidConfigError, NonMonotonicTimerError
from .timer import TimerSpec, default_clock, probe_resolution

_U64 = 0xFFFFFFFFFFFFFFFF

# Collection is timing-sensitive; serialize it within the process.
_collection_lock = threading.Lock()


@dataclass(frozen=True)
class CollectorConfig:
    """Knobs for one collection run.

    scale is the per-sample workload repeat count; it is the lever that
    stretches runtimes past the timer's granularity on coarse clocks.
    """

    val1: int = 2585566630
    val2: int = 576722363
    samples: int = 100
    scale: int = 250
    stretch: int = 100

    def validate(self) -> None:
        if self.samples < 1:
            raise InvalidConfigError(f"samples must be >= 1, got {self.samples}")
        if self.scale < 1:
            raise InvalidConfigError(f"scale must be >= 1, got {self.scale}")
        if self.stretch < 0:
            raise InvalidConfigError(f"stretch must be >= 0, got {self.stretch}")


@dataclass(frozen=True)
class TimingTrace:
    """Ordered runtime deltas from one collection run, plus provenance.

    samples holds integer-nanosecond deltas in collection order. Immutable so
    traces can be shared across analysis code without defensive copies.
    """

    samples: tuple[int, ...]
    config: CollectorConfig
    timer: TimerSpec
    kernel_checksum: int


def kernel(val1: int, val2: int, scale: int) -> int:
    """Run the addition workload `scale` times; return the live result.

    The return value is data-dependent on the loop so the work cannot be
    reasoned away as dead code. Callers fold it into a checksum.
    """
    if scale < 1:
        raise ValueError(f"scale must be >= 1, got {scale}")
    a1 = 0
    for _ in range(scale):
        a1 = val1 + val2
    return a1


def collect_trace(
    config: CollectorConfig,
    clock=None,
    timer_spec: TimerSpec | None = None,
    tap=None,
) -> TimingTrace:
    """Time `config.samples` kernel runs and return the ordered deltas.

    Probes the clock first unless a TimerSpec is supplied. Holds the
    process-wide collection lock for the whole timed section. If `tap` is
    given, each delta is written to it as one decimal per line, in collection
    order, after timing finishes (so logging cannot perturb the measurement).
    """
    config.validate()
    if clock is None:
        clock = default_clock()
    if timer_spec is None:
        timer_spec = probe_resolution(clock)
    if not clock.monotonic or not timer_spec.monotonic:
        raise NonMonotonicTimerError(f"{clock.name} is not monotonic")

    with _collection_lock:
        # Buffer allocated in full before the timed region.
        deltas = [0] * config.samples
        read = clock.now_ticks
        val1, val2, scale = config.val1, config.val2, config.scale
        checksum = 0
        for i in range(config.samples):
            t0 = read()
            a1 = kernel(val1, val2, scale)
            t1 = read()
            delta = t1 - t0
            if delta < 0:
                raise NonMonotonicTimerError(
                    f"{clock.name} stepped backwards by {-delta} ns"
                )
            deltas[i] = delta
            checksum = (checksum + a1) & _U64

    if tap is not None:
        for delta in deltas:
            tap.write(f"{delta}\n")

    return TimingTrace(
        samples=tuple(deltas),
        config=config,
        timer=timer_spec,
        kernel_checksum=checksum,
    )


def distinct_count(trace) -> int:
    """Number of distinct delta values; the collection-quality yardstick.

    Accepts a TimingTrace or any iterable of deltas.
    """
    samples = getattr(trace, "samples", trace)
    return len(set(samples))
