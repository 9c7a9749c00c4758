import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entbounds.harness.rng import CounterRng, derive_seed, mix64, mix64_block

MASK = (1 << 64) - 1


def splitmix64(seed):
    """Textbook stateful SplitMix64, used as an independent reference."""
    state = seed
    while True:
        state = (state + 0x9E3779B97F4A7C15) & MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        yield z ^ (z >> 31)


def test_published_splitmix_vectors():
    assert mix64(0, 0, 0) == 0xE220A8397B1DCDAF
    assert mix64(0, 0, 1) == 0x6E789E6AA1B965F4
    assert mix64(0, 0, 2) == 0x06C45D188009454F


def test_zero_key_matches_stateful_splitmix():
    gen = splitmix64(0)
    ref = [next(gen) for _ in range(100)]
    assert [mix64(0, 0, i) for i in range(100)] == ref
    assert [int(w) for w in CounterRng(0).words(100)] == ref


@settings(max_examples=100, deadline=None)
@given(
    key=st.integers(0, MASK),
    stream=st.integers(0, MASK),
    start=st.integers(0, 2**40),
    count=st.integers(1, 40),
)
def test_block_matches_int_reference(key, stream, start, count):
    block = mix64_block(key, stream, start, count)
    assert [int(w) for w in block] == [mix64(key, stream, start + i) for i in range(count)]


def test_counter_advances_and_splits():
    rng = CounterRng(7, stream=3)
    a = rng.words(5)
    b = rng.words(5)
    np.testing.assert_array_equal(np.concatenate([a, b]), CounterRng(7, 3).words(10))
    assert rng.counter == 10
    assert not np.array_equal(CounterRng(7, 3).words(10), CounterRng(7, 4).words(10))
    assert not np.array_equal(CounterRng(7, 3).words(10), CounterRng(8, 3).words(10))


def test_uniforms_use_top_53_bits():
    w = CounterRng(11).words(50)
    u = CounterRng(11).uniform(50)
    np.testing.assert_array_equal(u, [(int(x) >> 11) / 2.0**53 for x in w])
    assert np.all((u >= 0) & (u < 1))


def test_normal_box_muller():
    rng = CounterRng(5)
    z = rng.normal(3)
    u = CounterRng(5).uniform(4)
    r0 = math.sqrt(-2 * math.log(1 - u[0]))
    assert z[0] == pytest.approx(r0 * math.cos(2 * math.pi * u[1]), rel=1e-14)
    assert z[1] == pytest.approx(r0 * math.sin(2 * math.pi * u[1]), rel=1e-14)
    big = CounterRng(9).normal(1_000_000)
    assert abs(big.mean()) < 0.005
    assert abs(big.var() - 1) < 0.01
    assert np.all(np.isfinite(big))


def test_permutation_is_permutation():
    p = CounterRng(1).permutation(16)
    assert sorted(p.tolist()) == list(range(16))
    np.testing.assert_array_equal(p, CounterRng(1).permutation(16))


def test_derive_seed_is_pure():
    assert derive_seed(42, 5, 9) == derive_seed(42, 5, 9) == mix64(42, 5, 9)
    seeds = {derive_seed(42, 5, i) for i in range(1000)}
    assert len(seeds) == 1000
