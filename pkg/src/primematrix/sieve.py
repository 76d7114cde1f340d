"""Classical sieve of Eratosthenes, used as an independent cross-check.

Everything here is deliberately separate from the Miller-Rabin kernels:
verification paths compare the two implementations against each other,
so this module must not call into ``primematrix.kernels``.
"""

import numpy as np


def sieve_flags(limit):
    """Boolean array f of length limit+1 with f[n] True iff n is prime."""
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def primes_up_to(limit):
    """All primes <= limit, ascending, as a list of ints."""
    return [int(p) for p in np.flatnonzero(sieve_flags(limit))]


def first_primes(count):
    """The first ``count`` primes, ascending."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count == 0:
        return []
    # p_n < n (ln n + ln ln n) for n >= 6; pad smaller counts generously
    if count < 6:
        bound = 15
    else:
        import math

        bound = int(count * (math.log(count) + math.log(math.log(count)))) + 10
    primes = primes_up_to(bound)
    while len(primes) < count:
        bound *= 2
        primes = primes_up_to(bound)
    return primes[:count]


def twin_pairs_up_to(limit):
    """All twin prime pairs (p, p+2) with p + 2 <= limit, ascending by p."""
    flags = sieve_flags(limit)
    lows = np.flatnonzero(flags[:-2] & flags[2:])
    return [(int(p), int(p) + 2) for p in lows]


def count_twin_pairs_up_to(limit):
    flags = sieve_flags(limit)
    return int(np.count_nonzero(flags[:-2] & flags[2:]))


def primes_in_range(lo, hi):
    """Primes in [lo, hi) via a segmented sieve; memory scales with hi - lo."""
    if lo < 0 or hi < lo:
        raise ValueError("need 0 <= lo <= hi")
    if hi <= 2:
        return []
    lo = max(lo, 2)
    base = primes_up_to(int((hi - 1) ** 0.5) + 1)
    flags = np.ones(hi - lo, dtype=bool)
    for p in base:
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start >= hi:
            continue
        flags[start - lo :: p] = False
    if lo <= 1:
        flags[: 2 - lo] = False
    return [int(n) for n in np.flatnonzero(flags) + lo]
