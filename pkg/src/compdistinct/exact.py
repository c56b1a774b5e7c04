"""Exact and scaled-float E[D_n] via avoidance counts.

By linearity, E[D_n] = sum over sizes m of P(some part equals m)
= sum_m (1 - a_m(n) / 2**(n-1)), where a_m(n) counts compositions of ``n``
with no part equal to ``m``. The counts obey

    a_m(n) = sum_{j=1..n, j != m} a_m(n - j),   a_m(0) = 1,

evaluated in O(n) per ``m`` with a running prefix sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from . import _backend
from .compositions import RationalExpectation, ResourceCapError

BIGINT_CAP = 4096
SCALED_FLOAT_CAP = 1 << 16
SERIES_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ExactExpectationRecord:
    n: int
    float_value: float
    mode: str  # "bigint" or "scaled-float"
    exact: RationalExpectation | None = None

    @property
    def numerator(self) -> int | None:
        return None if self.exact is None else self.exact.numerator


def avoidance_counts(m: int, n_max: int) -> list[int]:
    """Return ``[a_m(0), ..., a_m(n_max)]``."""
    if m < 1:
        raise ValueError(f"forbidden size must be positive, got {m}")
    row = [1] * (n_max + 1)
    # below m nothing is forbidden: a_m(i) = 2**(i-1), prefix sum A(i) = 2**(i-1)
    for i in range(1, min(m, n_max + 1)):
        row[i] = 1 << (i - 1)
    if m > n_max:
        return row
    prefix = 1 << (m - 1)  # A(m) = a(0) + ... + a(m-1)
    for i in range(m, n_max + 1):
        a = prefix - row[i - m]
        row[i] = a
        prefix += a
    return row


def count_avoiding(m: int, n: int, cap: int = BIGINT_CAP) -> int:
    """Number of compositions of ``n`` with no part equal to ``m``."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n > cap:
        raise ResourceCapError(f"n={n} exceeds big-int cap {cap}")
    return avoidance_counts(m, n)[n]


def _exact_numerators(ns: Iterable[int]) -> dict[int, int]:
    """Numerators of E[D_n] over 2**(n-1) for every ``n`` in ``ns``, in one DP sweep."""
    targets = sorted(set(ns))
    n_max = targets[-1]
    numer = dict.fromkeys(targets, 0)
    for m in range(1, n_max + 1):
        row = avoidance_counts(m, n_max)
        for n in targets:
            if n >= m:
                numer[n] += (1 << (n - 1)) - row[n]
    return numer


def _record_from_numerator(n: int, numerator: int) -> ExactExpectationRecord:
    exact = RationalExpectation(n, numerator)
    return ExactExpectationRecord(n, float(exact), "bigint", exact)


def exact_expectation(n: int, cap: int = BIGINT_CAP) -> ExactExpectationRecord:
    """E[D_n] as an exact rational; above ``cap`` falls back to the scaled-float DP."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > cap:
        return scaled_float_expectation(n)
    return _record_from_numerator(n, _exact_numerators([n])[n])


def size_cutoff(n: int, tail: float = 1e-18) -> int:
    """Largest part size worth tracking in floating point.

    The expected number of parts equal to ``m`` is ``(n - m + 3) 2**-(m+1)``
    for ``m < n``, so sizes ``>= M`` contribute at most ``(n + 3) 2**-M``.
    """
    return max(1, math.ceil(math.log2((n + 3) / tail)))


def scaled_float_expectation(n: int, cap: int = SCALED_FLOAT_CAP) -> ExactExpectationRecord:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > cap:
        raise ResourceCapError(f"n={n} exceeds scaled-float cap {cap}")
    value = _backend.kernels.scaled_dp_expectation(n, size_cutoff(n))
    return ExactExpectationRecord(n, value, "scaled-float")


def expectation_table(n_list: list[int], cap: int = BIGINT_CAP) -> list[ExactExpectationRecord | Exception]:
    """One record per requested ``n``, in input order.

    Entries that fail validation come back as the exception instance instead
    of aborting the batch.
    """
    if not n_list:
        raise ValueError("empty batch")
    results: dict[int, ExactExpectationRecord | Exception] = {}
    exact_ns = []
    for n in n_list:
        if not isinstance(n, int) or n < 1:
            results[n] = ValueError(f"n must be a positive integer, got {n!r}")
        elif n <= cap:
            exact_ns.append(n)
        elif n not in results:
            try:
                results[n] = scaled_float_expectation(n)
            except ResourceCapError as exc:
                results[n] = exc
    if exact_ns:
        for n, numerator in _exact_numerators(exact_ns).items():
            results[n] = _record_from_numerator(n, numerator)
    return [results[n] for n in n_list]


def geometric_prefix_expectation(k: int, tolerance: float = SERIES_TOLERANCE) -> float:
    """Expected number of new values among Geom(1/2) draws 2..k.

    Equals ``sum_{m>=1} (1 - (1 - 2**-m)**k) - 1``.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return distinct_geometric_series(float(k), tolerance) - 1.0


def distinct_geometric_series(power: float, tolerance: float = SERIES_TOLERANCE) -> float:
    """``sum_{m>=1} (1 - (1 - 2**-m)**power)`` with absolute error below ``tolerance``.

    Each term is at most ``power * 2**-m``, so stopping after ``M`` terms
    leaves a tail of at most ``power * 2**-M``.
    """
    if power < 0:
        raise ValueError("power must be non-negative")
    if power == 0:
        return 0.0
    terms = max(1, math.ceil(math.log2(power / tolerance)) + 1)
    return math.fsum(-math.expm1(power * math.log1p(-math.ldexp(1.0, -m)))
                     for m in range(1, terms + 1))
