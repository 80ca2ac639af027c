"""Small arithmetic helpers: primality, factorization, prime ranges.

Backed by sympy; kept behind this module so callers never import sympy directly.
"""

from __future__ import annotations

import sympy

from .errors import InvalidParameter


def is_prime(n: int) -> bool:
    return bool(sympy.isprime(n))


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    return [int(q) for q in sympy.primerange(2, bound + 1)]


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise InvalidParameter(f"cannot factor {n}")
    return {int(q): int(e) for q, e in sympy.factorint(n).items()}


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def require_prime(n: int, name: str = "p", minimum: int = 2) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidParameter(f"{name} must be an integer, got {n!r}")
    if n < minimum or not is_prime(n):
        raise InvalidParameter(f"{name}={n} must be a prime >= {minimum}")
    return n
