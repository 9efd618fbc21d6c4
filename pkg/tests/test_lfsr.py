import random

import pytest

from lwerng.errors import DegenerateState
from lwerng.lfsr import LfsrBank, format_trace_line, initialize
from lwerng.lwe_hiding import HiddenSeed, hide

from oracles import (
    bits_to_int,
    ref_emit,
    ref_initialize,
    ref_step,
    word_to_bits,
)


def fake_seed(coeffs, params):
    """HiddenSeed wrapper around explicit designated-polynomial coefficients."""
    filler = [0] * params.degree
    return HiddenSeed(b=[list(coeffs)] + [filler] * (params.m - 1), params=params)


def regs_from_oracle(oracle_regs):
    return [bits_to_int(bits) for bits in oracle_regs]


def test_initialize_counting_coefficients(params):
    # coefficients 0..31 tie every round, so register j gets j, j+4, ..., j+28
    coeffs = list(range(256))
    bank = initialize(fake_seed(coeffs, params))
    for j in range(4):
        expected = 0
        for i in range(8):
            expected |= (4 * i + j) << (32 * i)
        assert bank.regs[j] == expected
    # mask is coefficients 32..255 as consecutive little-endian words
    expected_mask = 0
    for i, c in enumerate(range(32, 256)):
        expected_mask |= c << (32 * i)
    assert bank.mask == expected_mask
    assert bank.coeff_cursor == 0 and bank.mask_cursor == 0


def test_initialize_matches_reference(params):
    rng = random.Random(100)
    for _ in range(50):
        coeffs = [rng.getrandbits(32) % params.q for _ in range(256)]
        bank = initialize(fake_seed(coeffs, params), check_degenerate=False)
        oracle_regs, oracle_mask = ref_initialize(coeffs)
        assert bank.regs == regs_from_oracle(oracle_regs)
        assert bank.mask == bits_to_int(oracle_mask)


def test_initialize_order_swap_branch(params):
    # x34 > x12 in round 1 sends the first two coefficients to L3, L4
    coeffs = [0, 0, 0, 1] + list(range(100, 128)) + [0] * 224
    bank = initialize(fake_seed(coeffs, params), check_degenerate=False)
    assert (bank.regs[2] >> 32) & 0xFFFFFFFF == 100  # L3 word 1
    assert (bank.regs[3] >> 32) & 0xFFFFFFFF == 101  # L4 word 1
    assert (bank.regs[0] >> 32) & 0xFFFFFFFF == 102  # L1 word 1
    assert (bank.regs[1] >> 32) & 0xFFFFFFFF == 103  # L2 word 1


def test_initialize_locality_of_coefficient_zero(params):
    base = list(range(256))
    changed = [9] + base[1:]
    bank_a = initialize(fake_seed(base, params))
    bank_b = initialize(fake_seed(changed, params))
    assert bank_a.regs[0] != bank_b.regs[0]
    assert bank_a.regs[0] ^ bank_b.regs[0] == 9  # only word 0 differs
    assert bank_a.regs[1:] == bank_b.regs[1:]
    assert bank_a.mask == bank_b.mask


def test_all_zero_seed(params):
    zero = fake_seed([0] * 256, params)
    with pytest.raises(DegenerateState):
        initialize(zero)
    bank = initialize(zero, check_degenerate=False)
    assert bank.regs == [0, 0, 0, 0] and bank.mask == 0


def test_zero_master_rejected(params):
    # ties every round keep the index order, so L4 collects the zeros at
    # positions 4r+3; nonzero slaves with an all-zero master can never emit
    coeffs = [1, 1, 0, 0] * 8 + [0] * 224
    with pytest.raises(DegenerateState):
        initialize(fake_seed(coeffs, params))


def test_step_zero_word(params):
    bank = LfsrBank.from_state(params, regs=[5, 6, 7, 2 << 32], mask=0)
    regs_before = list(bank.regs)
    v, w = bank.step()
    assert (v, w) == (0, 0)
    assert bank.regs == regs_before  # nothing shifts on an all-zero word
    assert bank.coeff_cursor == 1


def test_step_single_bit_word(params):
    # w = 1: slaves shift 1 bit, master shifts 1 bit, 4 output bits total
    bank = LfsrBank.from_state(params, regs=[0b10, 0b11, 0b01, 1], mask=0)
    v, w = bank.step()
    assert w == 3 * 1 + 1
    # ejected LSBs: l1o=0, l2o=1, l3o=1, then l4o=1
    assert v == 0b1110


def test_step_full_word_bit_count(params):
    rng = random.Random(101)
    regs = [rng.getrandbits(256) for _ in range(3)] + [0xFFFFFFFF]
    bank = LfsrBank.from_state(params, regs=regs, mask=0)
    _, w = bank.step()
    assert w == 3 * sum(range(1, 33)) + 32 == 1616


def test_step_matches_reference(params):
    rng = random.Random(102)
    for _ in range(20):
        coeffs = [rng.getrandbits(32) % params.q for _ in range(256)]
        bank = initialize(fake_seed(coeffs, params), check_degenerate=False)
        oracle_regs, _ = ref_initialize(coeffs)
        cursor = 0
        for _ in range(50):
            v, w = bank.step()
            oracle_regs, cursor, out_bits = ref_step(oracle_regs, cursor)
            assert w == len(out_bits)
            assert v == bits_to_int(out_bits)
            assert bank.regs == regs_from_oracle(oracle_regs)
            assert bank.coeff_cursor == cursor


def test_output_count_law_instrumented(params):
    rng = random.Random(103)
    coeffs = [rng.getrandbits(32) % params.q for _ in range(256)]
    bank = initialize(fake_seed(coeffs, params))
    for _ in range(1000):
        word = (bank.regs[3] >> (32 * bank.coeff_cursor)) & 0xFFFFFFFF
        expected = 3 * sum(
            p for p in range(1, 33) if (word >> (p - 1)) & 1
        ) + bin(word).count("1")
        _, w = bank.step()
        assert w == expected


def test_register_width_conserved(params):
    rng = random.Random(104)
    coeffs = [rng.getrandbits(32) % params.q for _ in range(256)]
    bank = initialize(fake_seed(coeffs, params))
    for _ in range(200):
        bank.step()
        assert all(0 <= r < (1 << 256) for r in bank.regs)


def test_emit_zero_bits(params):
    rng = random.Random(105)
    coeffs = [rng.getrandbits(32) % params.q for _ in range(256)]
    bank = initialize(fake_seed(coeffs, params))
    regs_before = list(bank.regs)
    assert bank.emit_bits(0) == 0
    assert bank.regs == regs_before


def test_emit_with_zero_mask_equals_raw(params):
    rng = random.Random(106)
    regs = [rng.getrandbits(256) for _ in range(4)]
    bank_a = LfsrBank.from_state(params, regs=regs, mask=0)
    bank_b = LfsrBank.from_state(params, regs=regs, mask=0)
    raw_v, raw_w = bank_b.step()
    emitted = bank_a.emit_bits(raw_w)
    assert emitted == raw_v


def test_emit_chunking_invariance(params):
    rng = random.Random(107)
    coeffs = [rng.getrandbits(32) % params.q for _ in range(256)]
    bank_a = initialize(fake_seed(coeffs, params))
    bank_b = initialize(fake_seed(coeffs, params))
    lo = bank_a.emit_bits(64)
    hi = bank_a.emit_bits(64)
    combined = bank_b.emit_bits(128)
    assert combined == lo | (hi << 64)


def test_emit_matches_reference_whitening(params):
    rng = random.Random(108)
    for _ in range(5):
        coeffs = [rng.getrandbits(32) % params.q for _ in range(256)]
        bank = initialize(fake_seed(coeffs, params), check_degenerate=False)
        oracle_regs, oracle_mask = ref_initialize(coeffs)
        got = bank.emit_bits(4096)
        expected = ref_emit(oracle_regs, oracle_mask, 0, 0, 4096)
        assert got == bits_to_int(expected)


def test_emit_from_zero_master_raises(params):
    bank = LfsrBank.from_state(params, regs=[1, 2, 3, 0], mask=1)
    with pytest.raises(DegenerateState):
        bank.emit_bits(8)


def test_mask_cursor_wraps(params):
    rng = random.Random(109)
    coeffs = [rng.getrandbits(32) % params.q for _ in range(256)]
    bank = initialize(fake_seed(coeffs, params))
    bank.emit_bits(2 * params.mask_bits + 5)
    assert 0 <= bank.mask_cursor < params.mask_bits


def test_trace_record_and_format(params):
    bank = LfsrBank.from_state(params, regs=[0b10, 0b11, 0b01, 1], mask=0)
    v, w, trace = bank.step_trace()
    assert (v, w) == (0b1110, 4)
    assert trace["cursor"] == 0 and trace["word"] == 1
    assert trace["shifts"] == [(1, 0, 1, 1, 1, 0, 0)]
    count, l4o, peak, fb4 = trace["master"]
    assert count == 1 and l4o == 1
    line = format_trace_line(trace)
    assert line.startswith("cursor=0 w=00000001")
    assert "p=1" in line and "l4:c=1" in line


def test_initialize_from_real_hide(ent_zero, params):
    bank = initialize(hide(ent_zero, params))
    total_reg_bits = sum(r.bit_length() for r in bank.regs)
    assert 0 < total_reg_bits <= 4 * 256
    assert bank.mask.bit_length() <= params.mask_bits


def test_identical_seed_identical_stream_prefix(ent_zero, params):
    hs = hide(ent_zero, params)
    a = initialize(hs).emit_bits(1_000_000)
    b = initialize(hs).emit_bits(1_000_000)
    assert a == b
