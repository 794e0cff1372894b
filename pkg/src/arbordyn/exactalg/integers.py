"""Integer helpers: sieving, Miller-Rabin, trial division, Pollard rho."""

import math
import random
from functools import lru_cache

import numpy as np

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


def sieve(bound):
    """Return a numpy array of all primes <= bound."""
    if bound < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(bound + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


@lru_cache(maxsize=8)
def small_primes(bound):
    return tuple(int(p) for p in sieve(bound))


def is_probable_prime(n):
    """Miller-Rabin; deterministic below 3.3e24, probabilistic (extra random bases) above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = list(_MR_BASES)
    if n >= _MR_DETERMINISTIC_LIMIT:
        rng = random.Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(16)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n):
    """Smallest prime strictly greater than n."""
    c = max(n + 1, 2)
    if c > 2 and c % 2 == 0:
        c += 1
    while not is_probable_prime(c):
        c += 1 if c == 2 else 2
    return c


def trial_factor(n, bound):
    """Split |n| into ({prime: exponent} for primes <= bound, cofactor)."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    factors = {}
    for p in small_primes(bound):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors[p] = e
    if 1 < n < (bound + 1) ** 2:
        # no prime factor <= bound and below (bound+1)^2: prime
        factors[n] = factors.get(n, 0) + 1
        n = 1
    return factors, n


def pollard_rho(n, seed=1, max_iter=1 << 20):
    """Return a nontrivial factor of composite n, or None if none found in max_iter steps."""
    if n % 2 == 0:
        return 2
    rng = random.Random(seed)
    for _ in range(8):
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        it = 0
        while d == 1 and it < max_iter:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
            it += 1
        if 1 < d < n:
            return d
    return None


# cofactors above this size are reported unfactored instead of tested
PRIMALITY_BITS = 4096


def factor_integer(n, trial_bound=10**6, use_rho=False):
    """Factor |n| as far as possible.

    Returns (factors, cofactor, complete) where cofactor is the unfactored
    part (1 when complete). Cofactors wider than PRIMALITY_BITS are left
    unfactored.
    """
    factors, rest = trial_factor(n, trial_bound)
    pending = [rest] if rest > 1 else []
    leftover = 1
    while pending:
        m = pending.pop()
        if m.bit_length() > PRIMALITY_BITS:
            leftover *= m
            continue
        if is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            pending += [r, r]
            continue
        d = pollard_rho(m) if use_rho else None
        if d is None:
            leftover *= m
        else:
            pending += [d, m // d]
    return factors, leftover, leftover == 1


def prime_factors(n):
    """Distinct prime factors of a small positive integer, ascending."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n):
    ds = [1]
    for p in prime_factors(n):
        e = 0
        m = n
        while m % p == 0:
            m //= p
            e += 1
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def euler_phi(n):
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result
