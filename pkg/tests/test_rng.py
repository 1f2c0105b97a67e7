"""Determinism and range contracts of the seeded PRNG."""

import pytest

from mrlrc.rng import Xoshiro256


def test_same_seed_same_stream():
    a = Xoshiro256(12345)
    b = Xoshiro256(12345)
    assert [a.next_u64() for _ in range(64)] == [b.next_u64() for _ in range(64)]


def test_different_seeds_differ():
    a = Xoshiro256(1)
    b = Xoshiro256(2)
    assert [a.next_u64() for _ in range(8)] != [b.next_u64() for _ in range(8)]


def test_outputs_are_64_bit():
    rng = Xoshiro256(7)
    for _ in range(200):
        assert 0 <= rng.next_u64() < 1 << 64


def test_randrange_bounds_and_coverage():
    rng = Xoshiro256(3)
    seen = set()
    for _ in range(500):
        v = rng.randrange(7)
        assert 0 <= v < 7
        seen.add(v)
    assert seen == set(range(7))
    with pytest.raises(ValueError):
        rng.randrange(0)


def test_sample_distinct():
    rng = Xoshiro256(11)
    for _ in range(100):
        got = rng.sample(range(10), 4)
        assert len(set(got)) == 4
        assert all(0 <= v < 10 for v in got)
    with pytest.raises(ValueError):
        rng.sample(range(3), 4)


def test_zero_seed_is_valid():
    rng = Xoshiro256(0)
    vals = [rng.next_u64() for _ in range(16)]
    assert any(vals)


def test_splitmix64_reference_vector():
    # published outputs for seed 0; anchors cross-language reproducibility
    from mrlrc.rng import _splitmix64_stream

    sm = _splitmix64_stream(0)
    assert [next(sm) for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_xoshiro_permutation_reference():
    # with state (1, 2, 3, 4): rotl(2*5, 7)*9 = 11520, then s1 becomes 0
    rng = Xoshiro256(0)
    rng._s = [1, 2, 3, 4]
    assert rng.next_u64() == 11520
    assert rng.next_u64() == 0
