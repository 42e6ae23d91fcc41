"""Primality helpers used across the package."""

from __future__ import annotations

try:
    from gmpy2 import is_prime as _gmpy_is_prime
except ImportError:  # pragma: no cover
    _gmpy_is_prime = None

__all__ = ["is_prime", "primes_between"]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if _gmpy_is_prime is not None:
        return bool(_gmpy_is_prime(n))
    return _miller_rabin(n)


def _miller_rabin(n: int) -> bool:
    # Deterministic for n < 3.3e24 with this base set.
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi."""
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]
