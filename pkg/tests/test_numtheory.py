import math
import random
from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from primematrix import numtheory, sieve


def test_special_factorial_values():
    assert numtheory.special_factorial(1) == 2
    assert numtheory.special_factorial(4) == 210
    assert numtheory.special_factorial(6) == 30030
    assert numtheory.special_factorial(15) == 614889782588491410


def test_special_factorial_matches_sieve_products():
    primes = sieve.first_primes(15)
    prod = 1
    for k in range(1, 16):
        prod *= primes[k - 1]
        assert numtheory.special_factorial(k) == prod


def test_special_factorial_ratio_is_kth_prime():
    primes = sieve.first_primes(15)
    for k in range(2, 16):
        assert numtheory.special_factorial(k) // numtheory.special_factorial(k - 1) == primes[k - 1]
        assert numtheory.special_factorial(k) % numtheory.special_factorial(k - 1) == 0


def test_special_factorial_range_errors():
    for bad in (0, -1, 16, 100):
        with pytest.raises(ValueError):
            numtheory.special_factorial(bad)


def test_is_prime_examples():
    assert numtheory.is_prime(2)
    assert not numtheory.is_prime(1)
    assert not numtheory.is_prime(0)
    # 10000th prime
    assert numtheory.is_prime(104729)
    assert sieve.first_primes(10000)[-1] == 104729


def test_is_prime_domain():
    with pytest.raises(ValueError):
        numtheory.is_prime(-3)
    with pytest.raises(ValueError):
        numtheory.is_prime(2**64)
    assert not numtheory.is_prime(2**64 - 1)


def test_mod_inverse_examples():
    assert numtheory.mod_inverse(6, 5) == 1
    assert numtheory.mod_inverse(1, 7) == 1
    assert numtheory.mod_inverse(30, 7) == 4


def test_mod_inverse_errors():
    with pytest.raises(ValueError):
        numtheory.mod_inverse(6, 4)
    with pytest.raises(ValueError):
        numtheory.mod_inverse(0, 5)
    with pytest.raises(ValueError):
        numtheory.mod_inverse(3, 1)


@given(st.integers(min_value=1, max_value=10**12), st.integers(min_value=2, max_value=10**12))
@settings(max_examples=200)
def test_mod_inverse_round_trip(a, m):
    assume(math.gcd(a, m) == 1)
    x = numtheory.mod_inverse(a, m)
    assert 1 <= x < m
    assert (a * x) % m == 1


def test_prime_basis_construction():
    b = numtheory.PrimeBasis.of_order(4)
    assert b.k == 4
    assert b.primes == (2, 3, 5, 7)
    assert b.primorial == 210
    assert b.extended().primes == (2, 3, 5, 7, 11)
    with pytest.raises(ValueError):
        numtheory.PrimeBasis.of_order(16)
    with pytest.raises(ValueError):
        numtheory.PrimeBasis.of_order(0)


def test_prime_basis_invariants_enforced():
    with pytest.raises(ValueError):
        numtheory.PrimeBasis(k=2, primes=(3, 5), primorial=15)  # must start at 2
    with pytest.raises(ValueError):
        numtheory.PrimeBasis(k=2, primes=(2, 4), primorial=8)  # 4 not prime
    with pytest.raises(ValueError):
        numtheory.PrimeBasis(k=2, primes=(3, 2), primorial=6)  # not increasing
    with pytest.raises(ValueError):
        numtheory.PrimeBasis(k=2, primes=(2, 3), primorial=7)  # wrong product
    with pytest.raises(ValueError):
        numtheory.PrimeBasis(k=3, primes=(2, 3), primorial=6)  # k mismatch


def test_next_prime_via_matrix_examples():
    assert numtheory.next_prime_via_matrix(numtheory.PrimeBasis.of_order(1)) == 3
    assert numtheory.next_prime_via_matrix(numtheory.PrimeBasis.of_order(2)) == 5
    assert numtheory.next_prime_via_matrix(numtheory.PrimeBasis.of_order(4)) == 11


def test_next_prime_via_matrix_chain_matches_sieve():
    primes = sieve.first_primes(15)
    for k in range(1, 15):
        basis = numtheory.PrimeBasis.of_order(k)
        assert numtheory.next_prime_via_matrix(basis) == primes[k]
    with pytest.raises(ValueError):
        numtheory.next_prime_via_matrix(numtheory.PrimeBasis.of_order(15))


def test_prime_generator_matches_sieve():
    got = numtheory.first_k_primes(1000)
    assert got == sieve.first_primes(1000)


def test_prime_sum_reciprocals_small_values():
    assert numtheory.prime_sum_reciprocals(1) == Decimal("0.5")
    v2 = numtheory.prime_sum_reciprocals(2)
    with localcontext() as ctx:
        ctx.prec = 36
        want = Decimal(5) / Decimal(6)
    assert abs(v2 - want) < Decimal("1e-34")


def test_prime_sum_reciprocals_matches_mpmath():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    want = mpmath.mpf(0)
    for p in sieve.first_primes(25):
        want += mpmath.mpf(1) / p
    got = numtheory.prime_sum_reciprocals(25)
    assert abs(float(got) - float(want)) < 1e-12


def test_prime_sum_reciprocals_strictly_increasing():
    prev = None
    for k in range(1, 41):
        v = numtheory.prime_sum_reciprocals(k)
        if prev is not None:
            assert v > prev, k
        prev = v
    with pytest.raises(ValueError):
        numtheory.prime_sum_reciprocals(0)
