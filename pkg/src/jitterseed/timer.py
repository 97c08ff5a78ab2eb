"""Monotonic tick sources and empirical resolution probing.

Runtime deltas are only as trustworthy as the clock behind them, so the clock
is pinned down first: which source, is it monotonic, and what is the smallest
advance it can actually show us. That last number comes from measurement, not
from what the platform advertises.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import StuckClockError, UnsupportedClockError

DEFAULT_PROBE_READS = 1000

# When back-to-back reads never disagree, wait this long (host wall clock)
# for the probed clock to advance before declaring it stuck.
DEFAULT_ADVANCE_TIMEOUT_S = 1.0


@dataclass(frozen=True)
class TimerSpec:
    """What a probe learned about a clock."""

    name: str
    resolution_ns: int
    monotonic: bool
    probe_reads: int


class PerfCounterClock:
    """The platform's highest-resolution monotonic counter, in integer ns.

    Deliberately a wall-clock-style counter rather than process CPU time:
    scheduler preemption and platform interference must show up in the deltas,
    because that interference is part of what gets harvested.
    """

    name = "perf_counter_ns"

    def __init__(self):
        info = time.get_clock_info("perf_counter")
        if not info.monotonic:
            raise UnsupportedClockError("perf_counter is not monotonic here")
        self.monotonic = True

    def now_ticks(self) -> int:
        return time.perf_counter_ns()


class SimulatedClock:
    """A real clock quantized to a fixed tick, for reproducing coarse timers.

    Every reading is floored to a multiple of ``quantum_ns``, so consecutive
    distinct readings differ by exactly one quantum. A 16 ms quantum recreates
    the classic low-resolution-timer failure mode on any host.
    """

    def __init__(self, quantum_ns: int, base=None):
        if quantum_ns < 1:
            raise ValueError("quantum_ns must be >= 1")
        self.quantum_ns = quantum_ns
        self._base = base if base is not None else PerfCounterClock()
        self.name = f"simulated-{quantum_ns}ns"
        self.monotonic = self._base.monotonic

    def now_ticks(self) -> int:
        return (self._base.now_ticks() // self.quantum_ns) * self.quantum_ns


_default_clock = None


def default_clock() -> PerfCounterClock:
    global _default_clock
    if _default_clock is None:
        _default_clock = PerfCounterClock()
    return _default_clock


def now_ticks() -> int:
    """Current reading of the default monotonic clock, integer nanoseconds."""
    return default_clock().now_ticks()


def probe_resolution(
    clock=None,
    reads: int = DEFAULT_PROBE_READS,
    advance_timeout_s: float = DEFAULT_ADVANCE_TIMEOUT_S,
) -> TimerSpec:
    """Measure the smallest positive step the clock will show.

    Takes ``reads`` back-to-back read pairs and keeps the minimum positive
    delta. A coarse clock may sit still for every pair; in that case the probe
    waits (bounded by ``advance_timeout_s`` of host wall time) for up to three
    advances and takes the smallest, so a 16 ms quantum reports ~16 ms instead
    of masquerading as a dead clock. Only a clock that never moves at all
    raises StuckClockError.

    Probing is timing-sensitive; run it single-threaded.
    """
    if reads < 2:
        raise ValueError("reads must be >= 2")
    if clock is None:
        clock = default_clock()

    best = None
    prev = clock.now_ticks()
    for _ in range(reads):
        cur = clock.now_ticks()
        delta = cur - prev
        if delta > 0 and (best is None or delta < best):
            best = delta
        prev = cur

    if best is None:
        deadline = time.monotonic() + advance_timeout_s
        anchor = clock.now_ticks()
        seen = 0
        while seen < 3 and time.monotonic() < deadline:
            cur = clock.now_ticks()
            if cur > anchor:
                delta = cur - anchor
                if best is None or delta < best:
                    best = delta
                anchor = cur
                seen += 1
        if best is None:
            raise StuckClockError(
                f"{clock.name} never advanced across {reads} read pairs "
                f"and {advance_timeout_s:.3f}s of waiting"
            )

    return TimerSpec(
        name=clock.name,
        resolution_ns=best,
        monotonic=clock.monotonic,
        probe_reads=reads,
    )
