import io
import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from golden_blocks import (
    BLOCK_BYTES,
    block_with_ones,
    block_with_run,
    flat_nibble_block,
    golden_corpus,
)
from jitterseed.conditioner import mk0_stream
from jitterseed.errors import ShortStreamError, WrongBlockSizeError
from jitterseed.fips import (
    BLOCK_CSV_HEADER,
    FipsBlockResult,
    block_csv_row,
    fips_block_tests,
    fips_pass_rate,
    summary_line,
)
from reference_fips import reference_verdicts


def test_block_size_is_20000_bits():
    assert BLOCK_BYTES == 2500
    for bad in (b"", b"\x00" * 2499, b"\x00" * 2501):
        with pytest.raises(WrongBlockSizeError):
            fips_block_tests(bad)


def test_all_zeros_block_fails_everything():
    result = fips_block_tests(b"\x00" * 2500)
    assert result.ones == 0
    assert not result.monobit_pass
    assert result.max_run == 20000
    assert not result.long_run_pass
    assert not result.poker_pass
    assert not result.runs_pass
    assert not result.passed


def test_all_ones_block_mirrors_all_zeros():
    result = fips_block_tests(b"\xff" * 2500)
    assert result.ones == 20000
    assert not result.monobit_pass
    assert not result.long_run_pass


def test_alternating_block_hand_computed():
    # 0101...: exactly half ones, a single 4-bit pattern, all runs length 1.
    result = fips_block_tests(b"\x55" * 2500)
    assert result.ones == 10000
    assert result.monobit_pass
    assert result.poker_statistic == 75000.0
    assert not result.poker_pass
    assert result.run_counts == ((10000, 0, 0, 0, 0, 0), (10000, 0, 0, 0, 0, 0))
    assert not result.runs_pass
    assert result.max_run == 1
    assert result.long_run_pass
    assert not result.passed


@pytest.mark.parametrize(
    "ones,expected",
    [(9725, False), (9726, True), (10274, True), (10275, False)],
)
def test_monobit_strict_bounds(ones, expected):
    result = fips_block_tests(block_with_ones(ones))
    assert result.ones == ones
    assert result.monobit_pass is expected


@pytest.mark.parametrize("run_length,expected", [(25, True), (26, False)])
def test_long_run_boundary(run_length, expected):
    result = fips_block_tests(block_with_run(run_length))
    assert result.max_run == run_length
    assert result.long_run_pass is expected


def test_too_uniform_nibbles_fail_poker():
    result = fips_block_tests(flat_nibble_block())
    # d = 8*312^2 + 8*313^2 = 1562504 -> statistic 64/5000
    assert result.poker_statistic == pytest.approx(0.0128)
    assert not result.poker_pass


def test_mk0_stream_blocks_pass_at_reference_rate():
    report = fips_pass_rate(mk0_stream(100000), blocks=128)
    assert report.blocks_tested == 128
    assert report.pass_rate >= 0.992


def test_bit_order_is_msb_first():
    # 0x80 = bit pattern 10000000: the single one-bit must be first.
    block = b"\x80" + b"\x00" * 2499
    result = fips_block_tests(block)
    assert result.ones == 1
    # One run of a single 1, then 19999 zeros: MSB-first makes the one lead.
    assert result.run_counts[1][0] == 1
    assert result.max_run == 19999


def test_block_index_recorded():
    data = mk0_stream(160)  # 5120 bytes -> 2 blocks
    seen = []
    fips_pass_rate(data, blocks=2, block_sink=seen.append)
    assert [r.block_index for r in seen] == [0, 1]


def test_same_block_same_verdicts():
    block = mk0_stream(79)[:2500]
    assert fips_block_tests(block) == fips_block_tests(block)


def test_bytes_and_stream_sources_agree():
    data = mk0_stream(400)  # 12800 bytes -> 5 complete blocks
    from_bytes = fips_pass_rate(data, blocks=5)
    from_stream = fips_pass_rate(io.BytesIO(data), blocks=5)
    assert from_bytes == from_stream


def test_short_stream_carries_partial_tally():
    data = mk0_stream(200)  # 6400 bytes -> 2 complete blocks + remainder
    with pytest.raises(ShortStreamError) as excinfo:
        fips_pass_rate(data, blocks=5)
    partial = excinfo.value.partial
    assert partial.blocks_tested == 2
    assert partial.blocks_passed <= 2
    assert "2 of 5" in str(excinfo.value)


def test_empty_source_is_short_stream():
    with pytest.raises(ShortStreamError) as excinfo:
        fips_pass_rate(b"", blocks=1)
    assert excinfo.value.partial.blocks_tested == 0


def test_eof_mode_tests_all_complete_blocks():
    data = mk0_stream(300)  # 9600 bytes -> 3 complete blocks + 2100 left over
    report = fips_pass_rate(data)
    assert report.blocks_tested == 3


def test_eof_mode_requires_one_block():
    with pytest.raises(ShortStreamError):
        fips_pass_rate(b"\x00" * 100)


def test_blocks_must_be_positive():
    with pytest.raises(ValueError):
        fips_pass_rate(b"\x00" * 2500, blocks=0)


def test_failure_tallies_add_up():
    corpus = golden_corpus()
    report = fips_pass_rate(b"".join(corpus), blocks=len(corpus))
    assert report.blocks_tested == 143
    assert report.blocks_passed < 143  # the crafted blocks must fail
    assert report.pass_rate == report.blocks_passed / report.blocks_tested
    assert set(report.failures) == {"monobit", "poker", "runs", "long_run"}
    assert report.failures["monobit"] > 0
    assert report.failures["long_run"] > 0


def test_continuous_check_flags_repeated_words():
    clean = mk0_stream(79)[:2500]  # digest stream: no repeated words
    repeated = bytearray(clean)
    repeated[40:44] = repeated[36:40]  # duplicate one 32-bit word
    report = fips_pass_rate(bytes(repeated), blocks=1, continuous_check=True)
    assert report.failures["continuous"] == 1
    clean_report = fips_pass_rate(clean, blocks=1, continuous_check=True)
    assert clean_report.failures["continuous"] == 0


def test_continuous_check_spans_block_boundary():
    block = mk0_stream(79)[:2500]
    # Second block starts with the first block's final word.
    second = block[-4:] + block[4:]
    report = fips_pass_rate(block + second, blocks=2, continuous_check=True)
    assert report.failures["continuous"] == 1


def test_continuous_check_off_by_default():
    block = mk0_stream(79)[:2500]
    report = fips_pass_rate(block, blocks=1)
    assert "continuous" not in report.failures
    results = []
    fips_pass_rate(block, blocks=1, block_sink=results.append)
    assert results[0].continuous_pass is None


def test_summary_line_format():
    report = fips_pass_rate(mk0_stream(160), blocks=2)
    line = summary_line(report)
    assert re.fullmatch(r"blocks=2 passed=\d+ rate=[01]\.\d{6}", line)


def test_block_csv_row_format():
    result = fips_block_tests(b"\x55" * 2500, block_index=7)
    assert BLOCK_CSV_HEADER == "block,monobit,poker,runs,longrun,pass"
    assert block_csv_row(result) == "7,1,0,0,1,0"


def test_battery_agrees_with_independent_reference_on_random_blocks():
    rng = random.Random(424242)
    for _ in range(40):
        block = rng.randbytes(2500)
        result = fips_block_tests(block)
        expected = reference_verdicts(block)
        got = {
            "monobit": result.monobit_pass,
            "poker": result.poker_pass,
            "runs": result.runs_pass,
            "long_run": result.long_run_pass,
        }
        assert got == expected


@settings(max_examples=30, deadline=None)
@given(data=st.binary(min_size=2500, max_size=2500))
def test_battery_agrees_with_reference_on_arbitrary_blocks(data):
    result = fips_block_tests(data)
    expected = reference_verdicts(data)
    assert result.monobit_pass == expected["monobit"]
    assert result.poker_pass == expected["poker"]
    assert result.runs_pass == expected["runs"]
    assert result.long_run_pass == expected["long_run"]
