"""Exact integer arithmetic: primorials, modular inverses, primality.

The primality oracle is deterministic over the full 64-bit range (see
``primematrix.kernels``); probabilistic answers are never returned, so
higher layers can treat it as ground truth.
"""

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from itertools import islice

from primematrix import kernels

# p_15!' = 614889782588491410 is the largest primorial below 2**64
MAX_BASIS_ORDER = 15
_U64_LIMIT = 2**64


def is_prime(n):
    """Deterministic primality test, exact for 0 <= n < 2**64.

    Larger or negative inputs are rejected loudly rather than answered
    probabilistically.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n >= _U64_LIMIT:
        raise ValueError("primality oracle supports only 64-bit inputs")
    return kernels.is_prime_u64(n)


def prime_generator():
    """Yield primes in order, each found as the smallest integer not
    struck out by any previously generated prime."""
    known = []
    n = 2
    while True:
        composite = False
        for p in known:
            if p * p > n:
                break
            if n % p == 0:
                composite = True
                break
        if not composite:
            known.append(n)
            yield n
        n += 1


def first_k_primes(k):
    return list(islice(prime_generator(), k))


@dataclass(frozen=True)
class PrimeBasis:
    """The first k primes together with their product (the primorial).

    k is capped at 15 so the primorial stays exact in unsigned 64 bits;
    larger requests fail loudly instead of silently growing big integers.
    """

    k: int
    primes: tuple
    primorial: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("basis order must be >= 1")
        if self.k > MAX_BASIS_ORDER:
            raise ValueError(f"basis order capped at {MAX_BASIS_ORDER} for 64-bit primorials")
        if len(self.primes) != self.k:
            raise ValueError("primes length must equal k")
        if self.primes[0] != 2:
            raise ValueError("basis must start at 2")
        prod = 1
        prev = 1
        for p in self.primes:
            if p <= prev:
                raise ValueError("primes must be strictly increasing")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prod *= p
            if prod >= _U64_LIMIT:
                raise ValueError("primorial overflows 64 bits")
            prev = p
        if prod != self.primorial:
            raise ValueError("primorial does not match product of primes")

    @classmethod
    def of_order(cls, k):
        return _basis_of_order(k)

    def extended(self):
        """PrimeBasis of order k+1."""
        return _basis_of_order(self.k + 1)


@lru_cache(maxsize=None)
def _basis_of_order(k):
    if not 1 <= k <= MAX_BASIS_ORDER:
        raise ValueError(f"basis order must be in 1..{MAX_BASIS_ORDER}")
    primes = tuple(first_k_primes(k))
    prod = 1
    for p in primes:
        prod *= p
    return PrimeBasis(k=k, primes=primes, primorial=prod)


def special_factorial(k):
    """Product of the first k primes (2*3*5*...*p_k), exact.

    k=4 gives 210. Capped at k=15, the largest order whose product fits
    in unsigned 64 bits.
    """
    if not 1 <= k <= MAX_BASIS_ORDER:
        raise ValueError(f"k must be in 1..{MAX_BASIS_ORDER}")
    return _basis_of_order(k).primorial


def mod_inverse(a, m):
    """x in [1, m) with a*x = 1 (mod m). Requires gcd(a, m) = 1, m >= 2."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not invertible mod {m}")
    return pow(a, -1, m)


def next_prime_via_matrix(basis):
    """Smallest integer > 1 coprime to the basis primorial; equals p_{k+1}.

    The smallest composite coprime to the primorial is p_{k+1} squared,
    which exceeds p_{k+1}, so the scan's first hit is the next prime.
    The result is asserted prime anyway.
    """
    if basis.k > MAX_BASIS_ORDER - 1:
        raise ValueError("extending past order 15 would overflow the primorial")
    n = 2
    while math.gcd(n, basis.primorial) != 1:
        n += 1
    if not is_prime(n):
        raise AssertionError(f"matrix scan produced composite {n}")
    return n


def prime_sum_reciprocals(k):
    """Sum of 1/p over the first k primes, as a 36-digit Decimal.

    Computed exactly as a rational first; strictly increasing in k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    total = Fraction(0)
    for p in first_k_primes(k):
        total += Fraction(1, p)
    with localcontext() as ctx:
        ctx.prec = 36
        return Decimal(total.numerator) / Decimal(total.denominator)
