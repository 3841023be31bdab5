"""Integer factorization for certificate coefficients.

Primality below 2^64 is decided deterministically (Miller-Rabin with the
known-complete 12-prime witness set); above, a strong-probable-prime test
with a fixed 64-base round count is used and the certificate records which
method applied.  Composites are split by Brent's cycle variant of Pollard's
rho with a deterministic parameter schedule, so factorizations are
reproducible run to run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import FactorizationError

DETERMINISTIC_LIMIT = 2**64
PRP_ROUNDS = 64

# complete witness set for n < 2^64
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(range(p * p, limit + 1, p))
    return [i for i in range(limit + 1) if flags[i]]

_SMALL_PRIMES = _sieve(1000)
_PRP_BASES = tuple(_SMALL_PRIMES[:PRP_ROUNDS])


def _strong_test(n: int, base: int) -> bool:
    """One strong pseudoprime round; True means 'probably prime'."""
    if base % n == 0:
        return True
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:20]:
        if n == p:
            return True
        if n % p == 0:
            return False
    bases = _DETERMINISTIC_BASES if n < DETERMINISTIC_LIMIT else _PRP_BASES
    return all(_strong_test(n, b) for b in bases)


def primality_method(n: int) -> str:
    if n < DETERMINISTIC_LIMIT:
        return "miller-rabin-deterministic-below-2^64"
    return f"strong-probable-prime-{PRP_ROUNDS}-fixed-rounds"


def _pollard_brent(n: int, seed: int, c: int) -> int:
    """Brent's rho; returns a divisor of n (possibly n itself on failure)."""
    y, m, g, r, q = seed, 128, 1, 1, 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g


def _find_factor(n: int, effort_cap: int) -> int:
    """A nontrivial divisor of composite odd n, or raises at the cap."""
    for attempt in range(effort_cap):
        g = _pollard_brent(n, seed=2 + attempt, c=1 + attempt)
        if 1 < g < n:
            return g
    raise FactorizationError(f"composite-unfactored: {n} survived {effort_cap} rho attempts")


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes ascending
    method: str

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def factorize(value: int, *, effort_cap: int = 64) -> Factorization:
    """Complete prime factorization of |value| with the sign kept aside."""
    if value == 0:
        raise ValueError("cannot factorize 0")
    sign = 1 if value > 0 else -1
    n = abs(value)
    counts: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
        if n == 1:
            break
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack.extend([root, root])
            continue
        d = _find_factor(m, effort_cap)
        stack.extend([d, m // d])
    factors = tuple(sorted(counts.items()))
    largest = factors[-1][0] if factors else 1
    return Factorization(sign=sign, factors=factors, method=primality_method(largest))
