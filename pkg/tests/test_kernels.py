"""The compiled and pure-Python kernels must agree bit for bit."""
import numpy as np
import pytest

from compdistinct import _backend
from compdistinct.compositions import brute_force_expectation
from compdistinct.exact import exact_expectation, size_cutoff
from compdistinct.sampler import GeometricStream, composition_distinct_counts, sample_composition


@pytest.mark.parametrize("n", [1, 2, 5, 11])
def test_bitstring_distinct_sum(kernels, n):
    assert kernels.bitstring_distinct_sum(n) == brute_force_expectation(n).numerator


@pytest.mark.parametrize("n", [1, 2, 7, 64, 333])
def test_scaled_dp(kernels, n):
    assert kernels.scaled_dp_expectation(n, size_cutoff(n)) == pytest.approx(
        exact_expectation(n).float_value, rel=1e-12)


@pytest.mark.parametrize("n", [1, 3, 17, 200])
def test_sample_block_matches_literal_sampler(kernels, n):
    count = 300
    distinct, tau = GeometricStream(99).run_kernel(n, count, kernels)
    stream = GeometricStream(99)
    literal = [sample_composition(n, stream) for _ in range(count)]
    assert list(distinct) == [len(set(s.composition.parts)) for s in literal]
    assert list(tau) == [s.tau for s in literal]


def test_literal_counts_helper():
    distinct, _ = GeometricStream(5).run_kernel(12, 50)
    assert composition_distinct_counts(12, 50, 5) == list(distinct)


def test_sample_block_stops_cleanly_when_words_run_out(kernels):
    words = np.array([0xFFFFFFFFFFFFFFFF, 0], dtype=np.uint64)
    d = np.zeros(100, dtype=np.int32)
    t = np.zeros(100, dtype=np.int32)
    done, pos = kernels.sample_block(words, 0, 4, 100, d, t)
    # 64 one-bits give 16 samples of (1,1,1,1); the zero word cannot finish a 17th
    assert done == 16 and pos == 64
    assert set(d[:16]) == {1} and set(t[:16]) == {4}


def test_kernel_refill_is_chunking_invariant():
    a, _ = GeometricStream(3).run_kernel(5000, 400)
    s = GeometricStream(3)
    b1, _ = s.run_kernel(5000, 150)
    b2, _ = s.run_kernel(5000, 250)
    assert np.array_equal(a, np.concatenate([b1, b2]))


@pytest.mark.skipif(_backend.compiled_kernels is None, reason="compiled kernels not built")
def test_backends_agree_on_estimator():
    from compdistinct.sampler import estimate_expectation
    py = estimate_expectation(40, 3000, 8, kernels=_backend.python_kernels)
    cy = estimate_expectation(40, 3000, 8, kernels=_backend.compiled_kernels)
    assert py == cy
