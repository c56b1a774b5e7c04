"""Integer compositions, their bitstring encoding and the distinct-part statistic.

A composition of ``n`` is an ordered tuple of positive parts summing to ``n``.
Each composition corresponds to a 0/1 string of length ``n`` whose last bit is
1: the parts are the waiting times between successive 1s.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import _backend

ENUMERATION_CAP = 25


class ResourceCapError(ValueError):
    """Raised when a request exceeds a configured size guard."""


@dataclass(frozen=True)
class Composition:
    n: int
    parts: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not self.parts:
            raise ValueError("a composition needs at least one part")
        if any(p < 1 for p in self.parts):
            raise ValueError(f"parts must be positive: {self.parts}")
        if sum(self.parts) != self.n:
            raise ValueError(f"parts {self.parts} do not sum to {self.n}")

    @classmethod
    def of(cls, parts: Sequence[int]) -> "Composition":
        parts = tuple(int(p) for p in parts)
        return cls(sum(parts), parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def __str__(self):
        return "+".join(map(str, self.parts))


@dataclass(frozen=True)
class BitString:
    bits: tuple[int, ...]

    def __post_init__(self):
        if not self.bits:
            raise ValueError("empty bitstring")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")
        if self.bits[-1] != 1:
            raise ValueError("a composition bitstring must end in 1")

    @classmethod
    def from_str(cls, s: str) -> "BitString":
        return cls(tuple(int(ch) for ch in s))

    def __str__(self):
        return "".join(map(str, self.bits))

    def __len__(self):
        return len(self.bits)


@dataclass(frozen=True)
class RationalExpectation:
    """Exact expectation kept over the unreduced denominator ``2**(n-1)``."""

    n: int
    numerator: int

    @property
    def denominator(self) -> int:
        return 1 << (self.n - 1)

    @property
    def denominator_log2(self) -> int:
        return self.n - 1

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self):
        # int / int true division is correctly rounded
        return self.numerator / self.denominator


def distinct_part_count(c: Composition) -> int:
    """Number of distinct values among the parts of ``c``."""
    count = 1
    seen = {c.parts[0]}
    for part in c.parts[1:]:
        if part not in seen:
            seen.add(part)
            count += 1
    return count


def _check_cap(n: int, cap: int) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > cap:
        raise ResourceCapError(f"n={n} exceeds enumeration cap {cap}")


def enumerate_compositions(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Composition]:
    """Yield all ``2**(n-1)`` compositions of ``n``.

    Order is lexicographic on the associated bitstrings, so ``(n,)`` (bitstring
    ``0...01``) comes first and ``(1, ..., 1)`` last.
    """
    _check_cap(n, cap)
    for code in range(1 << (n - 1)):
        parts = []
        run = 1
        # bit for position i (1-based) is the (n-1-i)-th bit of code, MSB first
        for shift in range(n - 2, -1, -1):
            if (code >> shift) & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield Composition(n, tuple(parts))


def to_bitstring(c: Composition) -> BitString:
    bits = [0] * c.n
    pos = 0
    for part in c.parts:
        pos += part
        bits[pos - 1] = 1
    return BitString(tuple(bits))


def from_bitstring(b: BitString | str) -> Composition:
    if isinstance(b, str):
        b = BitString.from_str(b)
    parts = []
    run = 0
    for bit in b.bits:
        run += 1
        if bit:
            parts.append(run)
            run = 0
    return Composition(len(b), tuple(parts))


def brute_force_expectation(n: int, cap: int = ENUMERATION_CAP) -> RationalExpectation:
    """Exact E[D_n] by summing the statistic over every composition of ``n``."""
    total = sum(distinct_part_count(c) for c in enumerate_compositions(n, cap))
    return RationalExpectation(n, total)


def bitstring_expectation(n: int, cap: int = ENUMERATION_CAP) -> RationalExpectation:
    """Same quantity as :func:`brute_force_expectation`, decoded straight from bitmasks.

    Runs through the compiled kernel when available; used as a second,
    representation-independent route to the oracle.
    """
    _check_cap(n, cap)
    return RationalExpectation(n, _backend.kernels.bitstring_distinct_sum(n))
