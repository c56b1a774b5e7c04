"""Pure-Python hot kernels. Same contracts and bit-exact outputs as ``_ckernels``.

Random bits arrive as an array of unsigned 64-bit words read least significant
bit first; bit ``p`` of the stream is bit ``p % 64`` of word ``p // 64``.
"""
from __future__ import annotations

import math

BACKEND = "python"


def bitstring_distinct_sum(n: int) -> int:
    """Sum of distinct part counts over all compositions of ``n``, decoded from bitmasks.

    Bit ``i`` of the mask marks the end of a part at position ``i + 1``; the
    top bit ``n - 1`` is always set.
    """
    top = 1 << (n - 1)
    total = 0
    for code in range(top):
        w = code | top
        prev = -1
        seen = set()
        while w:
            low = w & -w
            p = low.bit_length() - 1
            seen.add(p - prev)
            prev = p
            w ^= low
        total += len(seen)
    return total


def sample_block(words, bitpos: int, n: int, count: int, distinct_out, tau_out):
    """Draw up to ``count`` stopped geometric compositions of ``n`` from ``words``.

    Each sample reads Geometric(1/2) waiting times until their running sum
    reaches ``n``; the last draw is consumed whole even though only
    ``n - sum`` of it becomes the final part. Stops early, without consuming
    a partial sample, when the words run out. Returns ``(done, bitpos)``.
    """
    ws = [int(w) for w in words]
    nbits = 64 * len(ws)
    done = 0
    while done < count:
        pos = bitpos
        total = 0
        tau = 0
        seen = set()
        complete = False
        while pos < nbits:
            # next geometric: index of the next set bit, counted from pos
            g = 0
            idx, off = divmod(pos, 64)
            found = False
            while idx < len(ws):
                w = ws[idx] >> off
                if w:
                    tz = (w & -w).bit_length() - 1
                    g += tz + 1
                    pos = idx * 64 + off + tz + 1
                    found = True
                    break
                g += 64 - off
                idx += 1
                off = 0
            if not found:
                break
            tau += 1
            if total + g >= n:
                seen.add(n - total)
                complete = True
                break
            seen.add(g)
            total += g
        if not complete:
            break
        distinct_out[done] = len(seen)
        tau_out[done] = tau
        bitpos = pos
        done += 1
    return done, bitpos


def scaled_dp_expectation(n: int, m_max: int) -> float:
    """Floating-point E[D_n] from avoidance counts scaled into [0, 1].

    For forbidden size ``m`` the state is ``alpha(i) = a_m(i) / 2**i`` and
    ``s(i) = (a_m(0) + ... + a_m(i-1)) / 2**i``. Sizes above ``m_max`` are
    dropped by the caller's certified tail bound.
    """
    total = 0.0
    alpha = [0.0] * (n + 1)
    for m in range(1, min(m_max, n) + 1):
        scale = math.ldexp(1.0, -m)
        alpha[0] = 1.0
        s = 0.0
        for i in range(1, n + 1):
            s = 0.5 * (s + alpha[i - 1])
            a = s - alpha[i - m] * scale if i >= m else s
            alpha[i] = a
        total += 1.0 - 2.0 * alpha[n]
    return total
