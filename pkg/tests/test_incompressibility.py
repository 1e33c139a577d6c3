import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from branchlab.errors import EmptyFamily, IndexRange, OutOfSet, TooShort
from branchlab.incompressibility import (
    BoundedComposition,
    BoundedCompositionCodec,
    FairCoin,
    OutcomeModel,
    binary_entropy,
    bounded_set_size,
    build_code,
    composition_bound,
    compression_test,
    enumerate_family,
    read_bits,
    two_part_bits,
)
from oracles import lexicographic_set


# codes


def test_build_code_dyadic():
    code = build_code(OutcomeModel.single([F(1, 2), F(1, 2)]), 1)
    assert code.counts == (1, 1)
    assert code.max_error == 0
    assert code.surjective


def test_build_code_thirds():
    code = build_code(OutcomeModel.single([F(1, 3), F(2, 3)]), 4)
    # [DERIVED: 16/3 = 5.33, 32/3 = 10.67; largest remainder hands the spare unit to the second]
    assert code.counts == (5, 11)
    assert code.max_error == F(1, 48)
    assert code.max_error <= F(1, 16)
    assert code.decode(0) == (0,)
    assert code.decode(5) == (1,)
    assert code.frequencies() == [F(5, 16), F(11, 16)]


def test_build_code_error_shrinks():
    model = OutcomeModel.single([F(1, 3), F(2, 3)])
    for r in range(2, 20):
        assert build_code(model, r).max_error <= F(1, 2**r)
    assert build_code(model, 12).max_error <= build_code(model, 4).max_error * F(1, 2**8) * 2


def test_build_code_two_events():
    model = OutcomeModel(([F(1, 2), F(1, 2)], [F(1, 4), F(3, 4)]))
    assert model.size == 4
    code = build_code(model, 3)
    assert code.counts == (1, 3, 1, 3)
    assert code.outcomes == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert code.decode(7) == (1, 1)


def test_build_code_keeps_every_outcome():
    # 1/100 of 8 rounds to 0, but a code must still reach the outcome
    code = build_code(OutcomeModel.single([F(1, 100), F(99, 100)]), 3)
    assert code.counts == (1, 7)
    sub = build_code(OutcomeModel.single([F(1, 100), F(99, 100)]), 3, subcode=True)
    assert sub.counts == (0, 8)
    assert not sub.surjective


def test_build_code_errors():
    with pytest.raises(TooShort):
        build_code(OutcomeModel.single([F(1, 3)] * 3), 1)
    with pytest.raises(ValueError):
        OutcomeModel.single([F(1, 2), F(1, 3)])
    with pytest.raises(ValueError):
        OutcomeModel.single([F(0), F(1)])
    with pytest.raises(IndexRange):
        build_code(OutcomeModel.single([F(1, 2), F(1, 2)]), 1).decode(2)


@given(st.lists(st.integers(1, 9), min_size=1, max_size=4), st.integers(0, 10))
def test_code_counts_sum(parts, extra):
    total = sum(parts)
    model = OutcomeModel.single([F(p, total) for p in parts])
    r = math.ceil(math.log2(len(parts))) + extra if len(parts) > 1 else extra
    code = build_code(model, r)
    assert sum(code.counts) == 2**r
    assert all(c >= 1 for c in code.counts)


# codec


def test_codec_small_example():
    codec = BoundedCompositionCodec(4, 1)
    # [DERIVED: 0111, 1011, 1101, 1110, 1111]
    assert codec.size == 5
    assert codec.length == 3
    assert [codec.decode(i) for i in range(5)] == ["0111", "1011", "1101", "1110", "1111"]
    assert codec.encode("1111") == 4
    with pytest.raises(OutOfSet):
        codec.encode("0011")
    with pytest.raises(OutOfSet):
        codec.encode("111")
    with pytest.raises(IndexRange):
        codec.decode(5)
    with pytest.raises(IndexRange):
        codec.decode(-1)


def test_codec_empty_and_full():
    assert BoundedCompositionCodec(0, 0).encode("") == 0
    assert BoundedCompositionCodec(0, 0).decode(0) == ""
    full = BoundedCompositionCodec(5, 5)
    assert full.size == 32
    assert [full.encode(format(i, "05b")) for i in range(32)] == list(range(32))


def test_codec_matches_brute_force():
    for n in range(0, 9):
        for b in range(0, n + 1):
            codec = BoundedCompositionCodec(n, b)
            members = lexicographic_set(n, b)
            assert codec.size == len(members)
            for rank, s in enumerate(members):
                assert codec.encode(s) == rank
                assert codec.decode(rank) == s


def test_batch_codec_matches_brute_force():
    for n, b in [(6, 2), (8, 8), (10, 3)]:
        codec = BoundedCompositionCodec(n, b)
        members = lexicographic_set(n, b)
        rows = np.array([[int(c) for c in s] for s in members], dtype=np.int8)
        assert codec.encode_many(rows).tolist() == list(range(len(members)))
        assert (codec.decode_many(range(len(members))) == rows).all()


@st.composite
def codec_and_string(draw):
    n = draw(st.integers(1, 24))
    b = draw(st.integers(0, n))
    zeros = draw(st.integers(0, b))
    positions = draw(st.permutations(range(n)))[:zeros]
    s = "".join("0" if i in positions else "1" for i in range(n))
    return BoundedCompositionCodec(n, b), s


@given(codec_and_string())
def test_codec_roundtrip_scalar_and_batch(pair):
    codec, s = pair
    rank = codec.encode(s)
    assert 0 <= rank < codec.size
    assert codec.decode(rank) == s
    row = np.array([[int(c) for c in s]], dtype=np.int8)
    assert codec.encode_many(row).tolist() == [rank]
    assert "".join(map(str, codec.decode_many([rank])[0])) == s


@given(codec_and_string(), st.data())
def test_codec_order_preserving(pair, data):
    codec, s = pair
    other = codec.decode(data.draw(st.integers(0, codec.size - 1)))
    assert (codec.encode(s) < codec.encode(other)) == (s < other)


@given(st.integers(1, 3000), st.data())
def test_length_is_optimal(n, data):
    b = data.draw(st.integers(0, n))
    codec = BoundedCompositionCodec(n, b)
    size = codec.size
    assert 2 ** (codec.length - 1) < size <= 2**codec.length or size == 1 and codec.length == 0


def test_large_roundtrip():
    rng = np.random.default_rng(11)
    s = "".join(np.where(rng.random(10_000) < 0.25, "0", "1"))
    codec = BoundedComposition(F(1, 4)).codec_for(10_000)
    assert codec.decode(codec.encode(s)) == s


def test_bounded_set_size():
    assert bounded_set_size(10, -1) == 0
    assert bounded_set_size(10, 0) == 1
    assert bounded_set_size(10, 10) == 1024
    assert bounded_set_size(100, 30) == sum(math.comb(100, i) for i in range(31))


@pytest.mark.parametrize("n", [1, 2, 99, 100, 1000, 10_000, 12_345])
def test_composition_bound_is_exact_floor(n):
    for p, k in [(F(1, 4), 10), (F(1, 3), F(7, 2)), (F(0), 1)]:
        b = composition_bound(p, n, k)
        # b <= pN + k sqrt(N) < b + 1, compared without floats
        assert (b - p * n) <= 0 or (b - p * n) ** 2 <= k * k * n
        assert (b + 1 - p * n) > 0 and (b + 1 - p * n) ** 2 > k * k * n


def test_binary_entropy():
    assert binary_entropy(F(1, 2)) == 1
    assert binary_entropy(0) == 0
    assert binary_entropy(1) == 0
    assert binary_entropy(F(1, 4)) == pytest.approx(0.811278, abs=1e-6)
    with pytest.raises(ValueError):
        binary_entropy(F(3, 2))


@pytest.mark.parametrize("n", [100, 1000, 10_000])
def test_entropy_envelope(n):
    codec = BoundedComposition(F(1, 4)).codec_for(n)
    envelope = binary_entropy(F(1, 4)) * n + 12 * math.sqrt(n) * math.log2(n)
    assert codec.length <= envelope


# compression tests


def test_two_part_bits():
    assert two_part_bits(10_000, 100) == 14 + math.ceil(math.log2(math.comb(10_000, 100)))
    assert two_part_bits(1, 0) == 1


def test_fair_coin_refuted_by_biased_string():
    s = "0" * 100 + "1" * 9900
    v = compression_test(s)
    # [DERIVED: 14 + ceil(log2 C(10000,100)) = 818]
    assert v.achieved_bits == 818
    assert v.hypothesis_bound_bits == 10_000
    assert v.refuted
    assert v.to_dict()["verdict"] == "refuted"


def test_max_entropy_string_retained():
    s = "01" * 5000
    v = compression_test(s)
    assert v.achieved_bits >= 10_000 - 64
    assert not v.refuted


def test_single_bit_retained():
    assert compression_test("0").verdict == "retained"
    assert compression_test([1]).verdict == "retained"
    with pytest.raises(ValueError):
        compression_test("")


@given(st.text(alphabet="01", min_size=1, max_size=300), st.integers(0, 80))
def test_verdict_rule(s, slack):
    v = compression_test(s, FairCoin(), slack)
    assert v.refuted == (v.achieved_bits < v.hypothesis_bound_bits - slack)


@given(st.text(alphabet="01", min_size=1, max_size=300), st.integers(0, 80))
def test_verdict_rule_bounded(s, slack):
    hyp = BoundedComposition(F(1, 4), 2)
    v = compression_test(s, hyp, slack)
    if v.in_set:
        assert v.refuted == (v.achieved_bits < v.hypothesis_bound_bits - slack)
    else:
        assert v.refuted


def test_bounded_hypothesis_out_of_set():
    v = compression_test("0" * 50 + "1" * 50, BoundedComposition(F(1, 10), 1))
    assert not v.in_set
    assert v.refuted


def test_refutation_soundness_monte_carlo():
    # a uniform string is refuted iff its zero count lands where the two-part
    # code undercuts N - slack; count those strings exactly, then sample
    n, slack, trials = 1000, 16, 100_000
    bad = [z for z in range(n + 1) if two_part_bits(n, z) < n - slack]
    bad_mass = F(sum(math.comb(n, z) for z in bad), 2**n)
    assert bad_mass <= F(1, 2**slack)
    rng = np.random.default_rng(2024)
    zeros = rng.binomial(n, 0.5, size=trials)
    assert not np.isin(zeros, bad).any()
    # full strings on a subsample go through compression_test itself
    for row in rng.integers(0, 2, size=(200, n)):
        assert not compression_test(row, FairCoin(), slack).refuted


# model selection


def test_enumerate_family_biased_data():
    data = "0" * 10 + "1" * 990
    family = [BoundedComposition(F(j, 100), k) for j in range(1, 51) for k in (1, 2, 4, 10)]
    best = enumerate_family(family, data)
    assert best.member.p == F(1, 100)
    assert best.parameter_bits == math.ceil(math.log2(len(family)))
    assert best.total_bits == best.parameter_bits + best.data_bits


def test_enumerate_family_all_ones():
    family = [BoundedComposition(F(j, 10), 1) for j in range(11)]
    assert enumerate_family(family, "1" * 400).index == 0


def test_enumerate_family_tie():
    family = [BoundedComposition(F(1, 2)), BoundedComposition(F(1, 2))]
    best = enumerate_family(family, "0101")
    assert best.index == 0
    assert best.tie


def test_enumerate_family_errors():
    with pytest.raises(EmptyFamily):
        enumerate_family([], "01")
    with pytest.raises(EmptyFamily):
        enumerate_family([BoundedComposition(0, 0)], "00")
    scores = enumerate_family([BoundedComposition(0, 0), BoundedComposition(1, 0)], "00").scores
    assert scores[0] is None


def test_read_bits(tmp_path):
    path = tmp_path / "bits.txt"
    path.write_text("0101\n 11\n")
    assert read_bits(path) == "010111"
    raw = tmp_path / "bits.bin"
    raw.write_bytes(bytes([0b10100000, 255]))
    assert read_bits(raw, "raw") == "1010000011111111"
    assert read_bits(b"01") == "01"
    with pytest.raises(ValueError):
        read_bits(b"012")
    with pytest.raises(ValueError):
        read_bits(b"01", "hex")
