"""Pure-Python kernel backend.

Same surface as the compiled backend in ``_fast.pyx``; used when the
extension is not built or when PRIMEMATRIX_PURE is set.  Callers are
expected to validate ranges: every integer passed in must fit in an
unsigned 64-bit word, and progression scans must keep the largest cell
value below 2**63.
"""

backend_name = "pure"

# Trial-division prefilter.  Any composite that survives it is >= 41*41.
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Strong-probable-prime bases decisive for the full 64-bit range
# (Sinclair's set; the four-base tier below covers n < 3215031751).
_BASES_U64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_BASES_SMALL = (2, 3, 5, 7)
_SMALL_TIER_LIMIT = 3_215_031_751


def _strong_probable_prime(n, a, d, s):
    # n odd, n - 1 = d * 2**s with d odd
    a %= n
    if a == 0:
        return True
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime_u64(n):
    """Deterministic primality test, exact for 0 <= n < 2**64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 41 * 41:
        return True
    d = n - 1
    s = ((d & -d)).bit_length() - 1
    d >>= s
    bases = _BASES_SMALL if n < _SMALL_TIER_LIMIT else _BASES_U64
    return all(_strong_probable_prime(n, a, d, s) for a in bases)


def _twin_stride_start(lo):
    # first r >= max(lo, 5) with r = 5 (mod 6)
    r = max(lo, 5)
    return r + (-(r - 5)) % 6


def twin_lowers_in_range(primes, lo, hi):
    """Residues r in [lo, hi) with r and r+2 both coprime to every basis prime.

    The basis must start with 2, 3 (the stride-6 wheel assumes it): any such
    r is odd and = 2 (mod 3), hence = 5 (mod 6).
    """
    if len(primes) < 2 or primes[0] != 2 or primes[1] != 3:
        raise ValueError("basis must start with primes 2, 3")
    rest = primes[2:]
    out = []
    r = _twin_stride_start(lo)
    while r < hi:
        for p in rest:
            if r % p == 0 or (r + 2) % p == 0:
                break
        else:
            out.append(r)
        r += 6
    return out


def count_twin_lowers(primes, lo, hi):
    """len(twin_lowers_in_range(...)) without materializing the list."""
    if len(primes) < 2 or primes[0] != 2 or primes[1] != 3:
        raise ValueError("basis must start with primes 2, 3")
    rest = primes[2:]
    count = 0
    r = _twin_stride_start(lo)
    while r < hi:
        for p in rest:
            if r % p == 0 or (r + 2) % p == 0:
                break
        else:
            count += 1
        r += 6
    return count


def prime_columns(first, step, m):
    """1-based columns j in [1, m] where first + step*(j-1) is prime."""
    out = []
    v = first
    for j in range(1, m + 1):
        if is_prime_u64(v):
            out.append(j)
        v += step
    return out


def count_prime_columns(first, step, m):
    count = 0
    v = first
    for _ in range(m):
        if is_prime_u64(v):
            count += 1
        v += step
    return count


def twin_columns(first, step, m):
    """Columns j in [1, m] where first + step*(j-1) and its +2 neighbor are both prime."""
    out = []
    v = first
    for j in range(1, m + 1):
        if is_prime_u64(v) and is_prime_u64(v + 2):
            out.append(j)
        v += step
    return out


def count_twin_columns(first, step, m):
    count = 0
    v = first
    for _ in range(m):
        if is_prime_u64(v) and is_prime_u64(v + 2):
            count += 1
        v += step
    return count


def first_twin_column(first, step, m):
    """Smallest column j <= m where both cells are prime, 0 if none."""
    v = first
    for j in range(1, m + 1):
        if is_prime_u64(v) and is_prime_u64(v + 2):
            return j
        v += step
    return 0
