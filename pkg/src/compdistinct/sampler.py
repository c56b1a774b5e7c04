"""Uniform random compositions as stopped sequences of Geometric(1/2) draws.

Draw Γ1, Γ2, ... i.i.d. with P(Γ = j) = 2**-j and stop at the first τ with
Γ1 + ... + Γτ >= n; then (Γ1, ..., Γ(τ-1), n - Γ1 - ... - Γ(τ-1)) is uniform
over the compositions of n.

Geometric draws are waiting times in a stream of fair bits: each draw is the
number of bits read up to and including the next 1. Bits come from PCG64
words, least significant bit first.

Reproducibility contract: ``estimate_expectation`` splits the samples into
blocks of ``BLOCK_SIZE`` (the last one possibly short). Block ``b`` draws from
its own stream seeded by ``SeedSequence(seed, spawn_key=(b,))``. Blocks are
assigned round-robin to workers and their integer sums added, so the report
does not depend on the worker count.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _backend
from .compositions import Composition, distinct_part_count

BLOCK_SIZE = 1 << 14
_REFILL_WORDS = 1 << 12


class GeometricStream:
    """Seeded source of fair bits and the Geometric(1/2) variables built from them."""

    def __init__(self, seed: int, spawn_key: tuple[int, ...] = ()):
        self.seed = seed
        self.spawn_key = tuple(spawn_key)
        ss = np.random.SeedSequence(seed, spawn_key=self.spawn_key)
        self._bitgen = np.random.PCG64(ss)
        self._words = np.empty(0, dtype=np.uint64)
        self._pos = 0  # bit offset into self._words

    def _refill(self, nwords: int) -> None:
        keep = self._words[self._pos >> 6:]
        self._pos &= 63
        fresh = self._bitgen.random_raw(nwords).astype(np.uint64, copy=False)
        self._words = np.concatenate([keep, fresh])

    def next_bit(self) -> int:
        if self._pos >= 64 * len(self._words):
            self._refill(_REFILL_WORDS)
        bit = (int(self._words[self._pos >> 6]) >> (self._pos & 63)) & 1
        self._pos += 1
        return bit

    def sample_geometric(self) -> int:
        """Return j >= 1 with probability 2**-j."""
        j = 1
        while not self.next_bit():
            j += 1
        return j

    def run_kernel(self, n: int, count: int, kernels=None) -> tuple[np.ndarray, np.ndarray]:
        """Draw ``count`` stopped compositions of ``n`` through a bulk kernel.

        Returns arrays of distinct-part counts and stopping times. Consumes the
        stream exactly as ``count`` calls to :func:`sample_composition` would.
        """
        kernels = kernels or _backend.kernels
        distinct = np.zeros(count, dtype=np.int32)
        tau = np.zeros(count, dtype=np.int32)
        done = 0
        # about n + 1 bits per sample on average
        chunk = max(_REFILL_WORDS, (count * (n + 2)) // 64 + 64)
        while done < count:
            if 64 * len(self._words) - self._pos < n + 128:
                self._refill(chunk)
            got, self._pos = kernels.sample_block(
                self._words, self._pos, n, count - done, distinct[done:], tau[done:]
            )
            done += got
            if done < count:
                self._refill(chunk)
        return distinct, tau


@dataclass(frozen=True)
class StoppedComposition:
    composition: Composition
    tau: int
    raw_last: int  # the full Γτ draw before clipping

    @property
    def truncated_last(self) -> bool:
        return self.composition.parts[-1] < self.raw_last


@dataclass(frozen=True)
class WindowBounds:
    n: int
    t_n: float
    n0: float
    n1: float


@dataclass(frozen=True)
class EstimateReport:
    n: int
    sample_count: int
    mean: float
    std_error: float
    seed: int


def sample_geometric(stream: GeometricStream) -> int:
    return stream.sample_geometric()


def sample_composition(n: int, stream: GeometricStream) -> StoppedComposition:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    parts = []
    total = 0
    while True:
        g = stream.sample_geometric()
        if total + g >= n:
            parts.append(n - total)
            return StoppedComposition(Composition(n, tuple(parts)), len(parts), g)
        parts.append(g)
        total += g


def _block_sums(n: int, seed: int, block: int, count: int, kernels=None) -> tuple[int, int]:
    stream = GeometricStream(seed, spawn_key=(block,))
    distinct, _ = stream.run_kernel(n, count, kernels)
    d = distinct.astype(np.int64)
    return int(d.sum()), int((d * d).sum())


def _block_layout(samples: int) -> list[tuple[int, int]]:
    nblocks = -(-samples // BLOCK_SIZE)
    return [(b, min(BLOCK_SIZE, samples - b * BLOCK_SIZE)) for b in range(nblocks)]


def estimate_expectation(n: int, samples: int, seed: int, workers: int = 1, kernels=None) -> EstimateReport:
    """Monte Carlo mean of the distinct part count at ``n``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    layout = _block_layout(samples)
    if workers > 1:
        lanes = [layout[w::workers] for w in range(workers)]

        def run_lane(lane):
            return [_block_sums(n, seed, b, c, kernels) for b, c in lane]

        with ThreadPoolExecutor(workers) as pool:
            sums = [s for lane in pool.map(run_lane, lanes) for s in lane]
    else:
        sums = [_block_sums(n, seed, b, c, kernels) for b, c in layout]
    total = sum(s for s, _ in sums)
    total_sq = sum(q for _, q in sums)
    mean = total / samples
    if samples > 1:
        # exact integer arithmetic for the centred sum of squares
        var = (total_sq * samples - total * total) / (samples * (samples - 1))
        std_error = math.sqrt(max(var, 0.0) / samples)
    else:
        std_error = 0.0
    return EstimateReport(n, samples, mean, std_error, seed)


def sample_taus(n: int, samples: int, seed: int) -> np.ndarray:
    """Stopping times of ``samples`` draws, using the same block layout as the estimator."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    out = []
    for b, c in _block_layout(samples):
        _, tau = GeometricStream(seed, spawn_key=(b,)).run_kernel(n, c)
        out.append(tau)
    return np.concatenate(out)


def window_bounds(n: int) -> WindowBounds:
    """Concentration window for τ, with natural log: t_n = sqrt((n - 1) ln n)."""
    if n < 2:
        raise ValueError(f"window needs n >= 2, got {n}")
    t_n = math.sqrt((n - 1) * math.log(n))
    centre = (n + 1) / 2
    return WindowBounds(n, t_n, centre - t_n, centre + t_n)


def tau_tail_bound(n: int, t: float) -> float:
    return 2.0 * math.exp(-2.0 * t * t / (n - 1))


def tau_tail_check(n: int, t: float, samples: int, seed: int) -> dict[str, float]:
    """Empirical P(|τ - (n+1)/2| >= t) next to the Hoeffding bound 2 exp(-2t²/(n-1))."""
    if n < 2:
        raise ValueError(f"tail check needs n >= 2, got {n}")
    if t < 0:
        raise ValueError("t must be non-negative")
    taus = sample_taus(n, samples, seed)
    empirical = float(np.mean(np.abs(taus - (n + 1) / 2) >= t))
    return {"n": n, "t": t, "empirical": empirical, "bound": tau_tail_bound(n, t)}


def composition_distinct_counts(n: int, samples: int, seed: int) -> list[int]:
    """Distinct part counts via the literal per-draw path; slow, for cross-checks."""
    stream = GeometricStream(seed)
    return [distinct_part_count(sample_composition(n, stream).composition) for _ in range(samples)]
