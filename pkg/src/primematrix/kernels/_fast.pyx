# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend.

Mirrors ``_pure.py`` exactly; the inner loops (Miller-Rabin over
progressions, stride-6 residue enumeration) run as plain C with 128-bit
modular multiplication.  Same preconditions as the pure backend: inputs
fit in uint64 and scanned cell values stay below 2**63.
"""

from libc.stdint cimport uint64_t

cdef extern from *:
    """
    typedef unsigned __int128 pm_u128;
    static inline unsigned long long pm_mulmod(unsigned long long a,
                                               unsigned long long b,
                                               unsigned long long m) {
        return (unsigned long long)(((pm_u128)a * b) % m);
    }
    """
    uint64_t pm_mulmod(uint64_t a, uint64_t b, uint64_t m) nogil

backend_name = "cython"

cdef uint64_t[12] _SMALL_PRIMES
_SMALL_PRIMES[:] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]

cdef uint64_t[7] _BASES_U64
_BASES_U64[:] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022]

cdef uint64_t[4] _BASES_SMALL
_BASES_SMALL[:] = [2, 3, 5, 7]

cdef uint64_t SMALL_TIER_LIMIT = 3215031751ULL


cdef uint64_t _powmod(uint64_t a, uint64_t d, uint64_t n) noexcept nogil:
    cdef uint64_t r = 1
    a %= n
    while d:
        if d & 1:
            r = pm_mulmod(r, a, n)
        a = pm_mulmod(a, a, n)
        d >>= 1
    return r


cdef bint _strong_probable_prime(uint64_t n, uint64_t a, uint64_t d, int s) noexcept nogil:
    # n odd, n - 1 = d * 2**s with d odd
    cdef uint64_t x
    cdef int i
    a %= n
    if a == 0:
        return True
    x = _powmod(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for i in range(s - 1):
        x = pm_mulmod(x, x, n)
        if x == n - 1:
            return True
    return False


cdef bint _is_prime(uint64_t n) noexcept nogil:
    cdef int i, s
    cdef uint64_t d, p
    if n < 2:
        return False
    for i in range(12):
        p = _SMALL_PRIMES[i]
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 41 * 41:
        return True
    d = n - 1
    s = 0
    while (d & 1) == 0:
        d >>= 1
        s += 1
    if n < SMALL_TIER_LIMIT:
        for i in range(4):
            if not _strong_probable_prime(n, _BASES_SMALL[i], d, s):
                return False
    else:
        for i in range(7):
            if not _strong_probable_prime(n, _BASES_U64[i], d, s):
                return False
    return True


def is_prime_u64(n):
    """Deterministic primality test, exact for 0 <= n < 2**64."""
    return bool(_is_prime(n))


cdef int _load_basis(primes, uint64_t* ps) except -1:
    cdef int k = len(primes)
    cdef int i
    if k < 2 or primes[0] != 2 or primes[1] != 3:
        raise ValueError("basis must start with primes 2, 3")
    if k > 16:
        raise ValueError("basis too large")
    for i in range(k):
        ps[i] = primes[i]
    return k


cdef uint64_t _twin_stride_start(uint64_t lo) noexcept nogil:
    cdef uint64_t r = lo if lo > 5 else 5
    return r + (6 - (r - 5) % 6) % 6


cdef bint _twin_survives(uint64_t r, uint64_t* ps, int k) noexcept nogil:
    # r = 5 (mod 6) already excludes the primes 2 and 3
    cdef int i
    for i in range(2, k):
        if r % ps[i] == 0 or (r + 2) % ps[i] == 0:
            return False
    return True


def twin_lowers_in_range(primes, uint64_t lo, uint64_t hi):
    """Residues r in [lo, hi) with r and r+2 both coprime to every basis prime.

    The basis must start with 2, 3 (the stride-6 wheel assumes it).
    """
    cdef uint64_t[16] ps
    cdef int k = _load_basis(primes, ps)
    cdef uint64_t r = _twin_stride_start(lo)
    out = []
    while r < hi:
        if _twin_survives(r, ps, k):
            out.append(r)
        r += 6
    return out


def count_twin_lowers(primes, uint64_t lo, uint64_t hi):
    """len(twin_lowers_in_range(...)) without materializing the list."""
    cdef uint64_t[16] ps
    cdef int k = _load_basis(primes, ps)
    cdef uint64_t count = 0
    cdef uint64_t r
    with nogil:
        r = _twin_stride_start(lo)
        while r < hi:
            if _twin_survives(r, ps, k):
                count += 1
            r += 6
    return count


def prime_columns(uint64_t first, uint64_t step, long long m):
    """1-based columns j in [1, m] where first + step*(j-1) is prime."""
    cdef uint64_t v = first
    cdef long long j
    out = []
    for j in range(1, m + 1):
        if _is_prime(v):
            out.append(j)
        v += step
    return out


def count_prime_columns(uint64_t first, uint64_t step, long long m):
    cdef uint64_t v = first
    cdef long long count = 0, i
    with nogil:
        for i in range(m):
            if _is_prime(v):
                count += 1
            v += step
    return count


def twin_columns(uint64_t first, uint64_t step, long long m):
    """Columns j in [1, m] where first + step*(j-1) and its +2 neighbor are both prime."""
    cdef uint64_t v = first
    cdef long long j
    out = []
    for j in range(1, m + 1):
        if _is_prime(v) and _is_prime(v + 2):
            out.append(j)
        v += step
    return out


def count_twin_columns(uint64_t first, uint64_t step, long long m):
    cdef uint64_t v = first
    cdef long long count = 0, i
    with nogil:
        for i in range(m):
            if _is_prime(v) and _is_prime(v + 2):
                count += 1
            v += step
    return count


def first_twin_column(uint64_t first, uint64_t step, long long m):
    """Smallest column j <= m where both cells are prime, 0 if none."""
    cdef uint64_t v = first
    cdef long long j, hit = 0
    with nogil:
        for j in range(1, m + 1):
            if _is_prime(v) and _is_prime(v + 2):
                hit = j
                break
            v += step
    return hit
