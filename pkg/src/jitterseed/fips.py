"""FIPS 140-2 statistical battery over 20000-bit blocks.

Implements the four change-notice tests (monobit, poker, runs, long run) with
the exact published intervals, on blocks of exactly 2500 bytes. Bits are taken
most-significant-first within each byte, bytes in stream order, matching the
reference hardware-RNG tooling. These tests catch gross defects only; passing
them is a floor, not a proof of randomness.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ShortStreamError, WrongBlockSizeError

BLOCK_BITS = 20000
BLOCK_BYTES = BLOCK_BITS // 8

# Monobit: ones count strictly inside (9725, 10275).
MONOBIT_LO = 9725
MONOBIT_HI = 10275

# Poker over 5000 4-bit segments. With d = sum of squared pattern counts the
# statistic is X = (16/5000)*d - 5000 and the pass band 2.16 < X < 46.17;
# comparing d against precomputed integer bounds keeps the test float-free.
POKER_D_LO = 1563176
POKER_D_HI = 1576928

# Required count interval per run length (1..5, then 6 and longer), applied to
# zero-runs and one-runs alike. Bounds are inclusive.
RUN_INTERVALS = ((2315, 2685), (1114, 1386), (527, 723), (240, 384), (103, 209), (103, 209))

# Any run of 26 or more identical bits fails the long-run test.
LONG_RUN_BITS = 26

BLOCK_CSV_HEADER = "block,monobit,poker,runs,longrun,pass"


@dataclass(frozen=True)
class FipsBlockResult:
    """Verdicts and raw statistics for one 20000-bit block."""

    block_index: int
    ones: int
    monobit_pass: bool
    poker_statistic: float
    poker_pass: bool
    # run_counts[bit_value][i] = number of runs of length i+1 (last bucket: >= 6)
    run_counts: tuple[tuple[int, ...], tuple[int, ...]]
    runs_pass: bool
    max_run: int
    long_run_pass: bool
    continuous_pass: bool | None = None

    @property
    def passed(self) -> bool:
        core = (
            self.monobit_pass
            and self.poker_pass
            and self.runs_pass
            and self.long_run_pass
        )
        return core and self.continuous_pass is not False


@dataclass(frozen=True)
class FipsRateReport:
    """Aggregate verdict tally over a run of consecutive blocks."""

    blocks_tested: int
    blocks_passed: int
    pass_rate: float
    failures: dict[str, int] = field(default_factory=dict)


def fips_block_tests(block: bytes, block_index: int = 0) -> FipsBlockResult:
    """Run the four tests on exactly one 20000-bit block."""
    if len(block) != BLOCK_BYTES:
        raise WrongBlockSizeError(
            f"block must be exactly {BLOCK_BYTES} bytes, got {len(block)}"
        )
    arr = np.frombuffer(block, dtype=np.uint8)
    bits = np.unpackbits(arr)

    ones = int(bits.sum())
    monobit_pass = MONOBIT_LO < ones < MONOBIT_HI

    nibble_counts = np.bincount(
        np.concatenate((arr >> 4, arr & 0x0F)), minlength=16
    )
    d = int(np.dot(nibble_counts, nibble_counts))
    poker_pass = POKER_D_LO < d < POKER_D_HI
    poker_statistic = 16.0 * d / 5000.0 - 5000.0

    # Run-length extraction: starts of maximal same-bit stretches.
    boundaries = np.flatnonzero(bits[1:] != bits[:-1]) + 1
    starts = np.concatenate(([0], boundaries))
    lengths = np.diff(np.concatenate((starts, [bits.size])))
    values = bits[starts]

    counts = [[0] * 6, [0] * 6]
    for bit_value in (0, 1):
        run_lengths = lengths[values == bit_value]
        for length in range(1, 6):
            counts[bit_value][length - 1] = int((run_lengths == length).sum())
        counts[bit_value][5] = int((run_lengths >= 6).sum())
    runs_pass = all(
        lo <= counts[bit_value][i] <= hi
        for bit_value in (0, 1)
        for i, (lo, hi) in enumerate(RUN_INTERVALS)
    )

    max_run = int(lengths.max())
    long_run_pass = max_run < LONG_RUN_BITS

    return FipsBlockResult(
        block_index=block_index,
        ones=ones,
        monobit_pass=monobit_pass,
        poker_statistic=poker_statistic,
        poker_pass=poker_pass,
        run_counts=(tuple(counts[0]), tuple(counts[1])),
        runs_pass=runs_pass,
        max_run=max_run,
        long_run_pass=long_run_pass,
    )


def _repeated_word(block: bytes, last_word: bytes | None) -> tuple[bool, bytes]:
    """Scan consecutive 32-bit words (carrying across blocks) for a repeat."""
    repeated = False
    for offset in range(0, len(block), 4):
        word = block[offset : offset + 4]
        if word == last_word:
            repeated = True
        last_word = word
    return repeated, last_word


def fips_pass_rate(
    source,
    blocks: int | None = None,
    continuous_check: bool = False,
    block_sink=None,
) -> FipsRateReport:
    """Test consecutive blocks from bytes or a binary stream.

    With `blocks` given, exactly that many are required; running dry early
    raises ShortStreamError with the partial report attached. With blocks=None
    every complete block until EOF is tested (at least one must exist).
    block_sink, if given, receives each FipsBlockResult as it is produced.
    The continuous check flags any repeat of consecutive 32-bit words, carried
    across block boundaries; it is off by default.
    """
    if blocks is not None and blocks < 1:
        raise ValueError(f"blocks must be >= 1, got {blocks}")
    stream = io.BytesIO(source) if isinstance(source, (bytes, bytearray)) else source

    failures = {"monobit": 0, "poker": 0, "runs": 0, "long_run": 0}
    if continuous_check:
        failures["continuous"] = 0
    tested = 0
    passed = 0
    last_word: bytes | None = None

    index = 0
    while blocks is None or index < blocks:
        block = stream.read(BLOCK_BYTES)
        if len(block) < BLOCK_BYTES:
            if blocks is None and tested > 0:
                break
            partial = FipsRateReport(
                blocks_tested=tested,
                blocks_passed=passed,
                pass_rate=passed / tested if tested else 0.0,
                failures=failures,
            )
            wanted = "at least 1" if blocks is None else str(blocks)
            raise ShortStreamError(
                f"stream exhausted after {tested} of {wanted} blocks",
                partial=partial,
            )
        result = fips_block_tests(block, block_index=index)
        index += 1
        if continuous_check:
            repeated, last_word = _repeated_word(block, last_word)
            result = replace(result, continuous_pass=not repeated)
            if repeated:
                failures["continuous"] += 1
        tested += 1
        if result.passed:
            passed += 1
        if not result.monobit_pass:
            failures["monobit"] += 1
        if not result.poker_pass:
            failures["poker"] += 1
        if not result.runs_pass:
            failures["runs"] += 1
        if not result.long_run_pass:
            failures["long_run"] += 1
        if block_sink is not None:
            block_sink(result)

    return FipsRateReport(
        blocks_tested=tested,
        blocks_passed=passed,
        pass_rate=passed / tested,
        failures=failures,
    )


def summary_line(report: FipsRateReport) -> str:
    return (
        f"blocks={report.blocks_tested} "
        f"passed={report.blocks_passed} "
        f"rate={report.pass_rate:.6f}"
    )


def block_csv_row(result: FipsBlockResult) -> str:
    flags = (
        result.monobit_pass,
        result.poker_pass,
        result.runs_pass,
        result.long_run_pass,
        result.passed,
    )
    return f"{result.block_index}," + ",".join(str(int(f)) for f in flags)
