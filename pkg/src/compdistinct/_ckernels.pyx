# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Contracts mirror ``compdistinct._pykernels`` exactly."""
from libc.stdint cimport uint64_t, int64_t, int32_t
from libc.stdlib cimport malloc, free
from libc.math cimport ldexp

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil

BACKEND = "cython"


def bitstring_distinct_sum(int n):
    cdef uint64_t top = (<uint64_t>1) << (n - 1)
    cdef uint64_t code, w, low
    cdef int p, prev, part, d
    cdef uint64_t seen
    cdef long long total = 0
    # parts are at most n <= 63, so a 64-bit mask holds the set of sizes
    if n > 63:
        raise ValueError("n too large for bitmask enumeration")
    with nogil:
        for code in range(top):
            w = code | top
            prev = -1
            seen = 0
            while w:
                p = __builtin_ctzll(w)
                part = p - prev
                seen |= (<uint64_t>1) << (part - 1)
                prev = p
                w &= w - 1
            total += __builtin_popcountll(seen)
    return int(total)


def sample_block(const uint64_t[::1] words, Py_ssize_t bitpos, int64_t n, Py_ssize_t count,
                 int32_t[::1] distinct_out, int32_t[::1] tau_out):
    cdef Py_ssize_t nwords = words.shape[0]
    cdef Py_ssize_t nbits = 64 * nwords
    cdef Py_ssize_t done = 0, pos, idx
    cdef int off, tz
    cdef int64_t total, g, part
    cdef int32_t tau, distinct
    cdef uint64_t w
    cdef bint complete, found
    cdef int64_t *stamp = <int64_t *>malloc((n + 1) * sizeof(int64_t))
    if stamp == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n + 1):
        stamp[i] = -1
    with nogil:
        while done < count:
            pos = bitpos
            total = 0
            tau = 0
            distinct = 0
            complete = False
            while pos < nbits:
                g = 0
                idx = pos >> 6
                off = pos & 63
                found = False
                while idx < nwords:
                    w = words[idx] >> off
                    if w:
                        tz = __builtin_ctzll(w)
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
                    part = n - total
                    if stamp[part] != done:
                        stamp[part] = done
                        distinct += 1
                    complete = True
                    break
                if stamp[g] != done:
                    stamp[g] = done
                    distinct += 1
                total += g
            if not complete:
                break
            distinct_out[done] = distinct
            tau_out[done] = tau
            bitpos = pos
            done += 1
    free(stamp)
    return done, bitpos


def scaled_dp_expectation(int64_t n, int64_t m_max):
    cdef double *alpha = <double *>malloc((n + 1) * sizeof(double))
    if alpha == NULL:
        raise MemoryError()
    cdef double total = 0.0, s, a, scale
    cdef int64_t m, i
    cdef int64_t top = m_max if m_max < n else n
    with nogil:
        for m in range(1, top + 1):
            scale = ldexp(1.0, <int>-m)
            alpha[0] = 1.0
            s = 0.0
            for i in range(1, n + 1):
                s = 0.5 * (s + alpha[i - 1])
                if i >= m:
                    a = s - alpha[i - m] * scale
                else:
                    a = s
                alpha[i] = a
            total += 1.0 - 2.0 * alpha[n]
    free(alpha)
    return total
